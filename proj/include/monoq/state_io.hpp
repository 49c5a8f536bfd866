// JSON state files: {"dims": [...], "kind": "pure"|"mixed", "data": [[re,im], ...]}
// with row-major flattening for mixed states. Round-trips at full precision.
#pragma once

#include <fstream>
#include <variant>

#include <json.hpp>

#include "monoq/states.hpp"
#include "monoq/tensor.hpp"

namespace monoq {

struct StateRecord {
    std::string id;
    std::string family;
    int rank = 1;
    std::variant<PureState, DensityMatrix> state;

    bool is_pure() const { return std::holds_alternative<PureState>(state); }

    const std::vector<std::size_t>& dims() const {
        return is_pure() ? std::get<PureState>(state).dims : std::get<DensityMatrix>(state).dims;
    }

    DensityMatrix density() const {
        return is_pure() ? std::get<PureState>(state).to_density() : std::get<DensityMatrix>(state);
    }
};

inline nlohmann::json state_to_json(const StateRecord& rec) {
    nlohmann::json j;
    j["id"] = rec.id;
    j["family"] = rec.family;
    j["rank"] = rec.rank;
    j["dims"] = rec.dims();
    nlohmann::json data = nlohmann::json::array();
    if (rec.is_pure()) {
        j["kind"] = "pure";
        for (const cx& a : std::get<PureState>(rec.state).amplitudes)
            data.push_back({a.real(), a.imag()});
    } else {
        j["kind"] = "mixed";
        for (const cx& a : std::get<DensityMatrix>(rec.state).mat.data)
            data.push_back({a.real(), a.imag()});
    }
    j["data"] = std::move(data);
    return j;
}

inline StateRecord state_from_json(const nlohmann::json& j) {
    StateRecord rec;
    rec.id = j.value("id", "");
    rec.family = j.value("family", "");
    rec.rank = j.value("rank", 1);
    std::vector<std::size_t> dims = j.at("dims").get<std::vector<std::size_t>>();
    const std::string kind = j.at("kind").get<std::string>();
    const auto& data = j.at("data");

    std::vector<cx> entries;
    entries.reserve(data.size());
    for (const auto& e : data) entries.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());

    std::size_t d = 1;
    for (std::size_t s : dims) d *= s;
    if (kind == "pure") {
        if (entries.size() != d) throw std::invalid_argument("state file: amplitude count mismatch");
        PureState psi;
        psi.amplitudes = std::move(entries);
        psi.dims = std::move(dims);
        if (std::abs(psi.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("state file: pure state not normalized");
        rec.state = std::move(psi);
    } else if (kind == "mixed") {
        if (entries.size() != d * d) throw std::invalid_argument("state file: matrix size mismatch");
        ComplexMatrix m(d, d);
        m.data = std::move(entries);
        DensityMatrix rho(std::move(m), std::move(dims));
        rec.state = std::move(rho);
    } else {
        throw std::invalid_argument("state file: kind must be \"pure\" or \"mixed\"");
    }
    return rec;
}

inline void write_states(const std::vector<StateRecord>& states, const std::string& path) {
    nlohmann::json j;
    j["states"] = nlohmann::json::array();
    for (const auto& s : states) j["states"].push_back(state_to_json(s));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

inline std::vector<StateRecord> read_states(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    std::vector<StateRecord> out;
    for (const auto& e : j.at("states")) out.push_back(state_from_json(e));
    return out;
}

}  // namespace monoq
