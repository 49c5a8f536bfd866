// Entropies and bipartite correlation measures: negativity, log-negativity,
// mutual information, measured mutual information, quantum discord, work
// deficit, concurrence/tangle and entanglement of formation, together with the
// deterministic projective-measurement optimizer they share.
#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>

#include "monoq/states.hpp"
#include "monoq/tensor.hpp"

namespace monoq {

inline double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) throw std::invalid_argument("binary_entropy: x outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

// -sum l log2 l over a probability spectrum; eigenvalues in [-1e-9, 0) clamp to 0
inline double entropy_of_spectrum(const std::vector<double>& vals) {
    double s = 0.0;
    for (double l : vals) {
        if (l < -kPsdTol) throw std::invalid_argument("entropy_of_spectrum: negative eigenvalue");
        l = std::clamp(l, 0.0, 1.0);
        if (l > 0.0) s -= l * std::log2(l);
    }
    return s;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum(eigvalsh(rho.mat).eigenvalues);
}

// (log2 d - S) / log2 d, in [0, 1]
inline double normalized_purity(const DensityMatrix& rho) {
    const double logd = std::log2(static_cast<double>(rho.dim()));
    return (logd - von_neumann_entropy(rho)) / logd;
}

enum class MeasureKind {
    Negativity,
    LogNegativity,
    MutualInformation,
    MeasuredMutualInformation,
    Discord,
    WorkDeficit,
    Tangle,
    Eof,
};

inline const char* measure_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::Negativity: return "negativity";
        case MeasureKind::LogNegativity: return "log-negativity";
        case MeasureKind::MutualInformation: return "mutual-info";
        case MeasureKind::MeasuredMutualInformation: return "measured-mutual-info";
        case MeasureKind::Discord: return "discord";
        case MeasureKind::WorkDeficit: return "work-deficit";
        case MeasureKind::Tangle: return "tangle";
        case MeasureKind::Eof: return "eof";
    }
    return "?";
}

inline MeasureKind parse_measure(const std::string& s) {
    for (MeasureKind k : {MeasureKind::Negativity, MeasureKind::LogNegativity,
                          MeasureKind::MutualInformation, MeasureKind::MeasuredMutualInformation,
                          MeasureKind::Discord, MeasureKind::WorkDeficit, MeasureKind::Tangle,
                          MeasureKind::Eof})
        if (s == measure_name(k)) return k;
    throw std::invalid_argument("unknown measure: " + s);
}

// The six measures of the random-state study.
inline std::vector<MeasureKind> figure_measures() {
    return {MeasureKind::Negativity,       MeasureKind::LogNegativity,
            MeasureKind::MutualInformation, MeasureKind::MeasuredMutualInformation,
            MeasureKind::Discord,           MeasureKind::WorkDeficit};
}

inline bool is_optimizer_backed(MeasureKind k) {
    return k == MeasureKind::MeasuredMutualInformation || k == MeasureKind::Discord ||
           k == MeasureKind::WorkDeficit;
}

// verification slack: closed-form measures vs measures that inherit optimizer error
inline double measure_tolerance(MeasureKind k) { return is_optimizer_backed(k) ? 5e-4 : 1e-6; }

// Normalized value per the dimension convention: mutual information and its
// measured counterpart divide by 2; the rest are already <= 1 on a qubit cut.
inline double normalize_measure(MeasureKind k, double raw) {
    if (k == MeasureKind::MutualInformation || k == MeasureKind::MeasuredMutualInformation)
        return raw / 2.0;
    return raw;
}

struct OptimizerReport {
    double grid_best = 0.0;
    double refined_best = 0.0;
    int iterations = 0;
};

struct MeasureValue {
    MeasureKind kind{};
    double raw = 0.0;
    double normalized = 0.0;
    std::optional<OptimizerReport> optimizer_report;
};

// Rank-1 projective measurement direction on a qubit.
struct QubitMeasurementBasis {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2pi)

    std::array<cx, 2> ket() const {
        return {cx{std::cos(theta / 2.0), 0.0},
                std::polar(std::sin(theta / 2.0), phi)};
    }
    std::array<cx, 2> ket_orthogonal() const {
        return {cx{-std::sin(theta / 2.0), 0.0},
                std::polar(std::cos(theta / 2.0), phi)};
    }
};

struct OptimizerSettings {
    std::size_t grid_theta = 64;
    std::size_t grid_phi = 128;
    double simplex_tol = 1e-7;
    int max_iterations = 400;
};

// Deterministic minimizer over the (theta, phi) rectangle: fixed coarse grid,
// then downhill-simplex refinement from the best grid point. The returned value
// never exceeds the best grid value.
inline std::pair<QubitMeasurementBasis, double> optimize_qubit_measurement(
    const std::function<double(const QubitMeasurementBasis&)>& objective,
    const OptimizerSettings& opt = {}, OptimizerReport* report = nullptr) {
    constexpr double pi = 3.14159265358979323846;

    QubitMeasurementBasis best;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < opt.grid_theta; ++i) {
        const double th = pi * static_cast<double>(i) / static_cast<double>(opt.grid_theta - 1);
        for (std::size_t j = 0; j < opt.grid_phi; ++j) {
            const double ph = 2.0 * pi * static_cast<double>(j) / static_cast<double>(opt.grid_phi);
            const double v = objective({th, ph});
            if (v < best_val) {
                best_val = v;
                best = {th, ph};
            }
        }
    }
    const double grid_best = best_val;

    // Nelder-Mead in two dimensions, fixed construction, no restarts.
    struct Vertex {
        QubitMeasurementBasis x;
        double f;
    };
    auto eval = [&](double th, double ph) {
        QubitMeasurementBasis b{std::clamp(th, 0.0, pi), ph};
        return Vertex{b, objective(b)};
    };
    const double step = 0.05;
    std::array<Vertex, 3> simplex = {
        Vertex{best, best_val},
        eval(best.theta + (best.theta + step <= pi ? step : -step), best.phi),
        eval(best.theta, best.phi + step),
    };
    int iters = 0;
    for (; iters < opt.max_iterations; ++iters) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        const double diam = std::max(
            std::hypot(simplex[1].x.theta - simplex[0].x.theta, simplex[1].x.phi - simplex[0].x.phi),
            std::hypot(simplex[2].x.theta - simplex[0].x.theta, simplex[2].x.phi - simplex[0].x.phi));
        if (diam < opt.simplex_tol) break;

        const double cth = 0.5 * (simplex[0].x.theta + simplex[1].x.theta);
        const double cph = 0.5 * (simplex[0].x.phi + simplex[1].x.phi);
        const Vertex& worst = simplex[2];
        const Vertex refl = eval(cth + (cth - worst.x.theta), cph + (cph - worst.x.phi));
        if (refl.f < simplex[0].f) {
            const Vertex exp_v = eval(cth + 2.0 * (cth - worst.x.theta), cph + 2.0 * (cph - worst.x.phi));
            simplex[2] = exp_v.f < refl.f ? exp_v : refl;
        } else if (refl.f < simplex[1].f) {
            simplex[2] = refl;
        } else {
            const Vertex con = eval(cth + 0.5 * (worst.x.theta - cth), cph + 0.5 * (worst.x.phi - cph));
            if (con.f < worst.f) {
                simplex[2] = con;
            } else {
                // shrink toward the best vertex
                for (int i = 1; i < 3; ++i)
                    simplex[i] = eval(simplex[0].x.theta + 0.5 * (simplex[i].x.theta - simplex[0].x.theta),
                                      simplex[0].x.phi + 0.5 * (simplex[i].x.phi - simplex[0].x.phi));
            }
        }
    }
    for (const auto& v : simplex)
        if (v.f < best_val) {
            best_val = v.f;
            best = v.x;
        }
    if (report) *report = {grid_best, best_val, iters};
    return {best, best_val};
}

// A bipartition of a state's subsystems; side A is the measured/transposed side.
struct BipartiteCut {
    DensityMatrix rho;
    std::vector<std::size_t> side_a;
    std::vector<std::size_t> side_b;

    BipartiteCut(DensityMatrix r, std::vector<std::size_t> a) : rho(std::move(r)), side_a(std::move(a)) {
        std::sort(side_a.begin(), side_a.end());
        detail::check_subsystems(side_a, rho.dims.size());
        for (std::size_t s = 0; s < rho.dims.size(); ++s)
            if (!std::binary_search(side_a.begin(), side_a.end(), s)) side_b.push_back(s);
        if (side_a.empty() || side_b.empty())
            throw std::invalid_argument("BipartiteCut: both sides must be nonempty");
    }

    std::size_t dim_a() const {
        std::size_t d = 1;
        for (std::size_t s : side_a) d *= rho.dims[s];
        return d;
    }
    std::size_t dim_b() const {
        std::size_t d = 1;
        for (std::size_t s : side_b) d *= rho.dims[s];
        return d;
    }
};

namespace detail {

// <v|rho|w> on subsystem `a_idx` (a qubit), leaving an operator on the rest.
// With v == w this is the unnormalized post-measurement block p * rho_{B|v}.
inline ComplexMatrix sandwich_block(const DensityMatrix& rho, std::size_t a_idx,
                                    const std::array<cx, 2>& v) {
    const auto strides = strides_of(rho.dims);
    const std::size_t stride = strides[a_idx];
    const std::size_t db = rho.dim() / 2;

    auto full_index = [&](std::size_t rest, std::size_t digit) {
        const std::size_t hi = rest / stride;
        const std::size_t lo = rest % stride;
        return (hi * 2 + digit) * stride + lo;
    };

    ComplexMatrix out(db, db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            cx sum = 0.0;
            for (std::size_t s = 0; s < 2; ++s) {
                const cx vs = std::conj(v[s]);
                if (vs == cx{}) continue;
                for (std::size_t t = 0; t < 2; ++t) {
                    if (v[t] == cx{}) continue;
                    sum += vs * v[t] * rho.mat(full_index(i, s), full_index(j, t));
                }
            }
            out(i, j) = sum;
        }
    return out;
}

}  // namespace detail

// Evaluates all measures on one cut, memoizing the shared quantities
// (marginal entropies, optimized conditional entropy, optimized dephased entropy).
class CutEvaluator {
public:
    explicit CutEvaluator(BipartiteCut cut, OptimizerSettings opt = {})
        : cut_(std::move(cut)), opt_(opt) {}

    const BipartiteCut& cut() const { return cut_; }

    double entropy_a() {
        if (!s_a_) s_a_ = von_neumann_entropy(rho_a());
        return *s_a_;
    }
    double entropy_b() {
        if (!s_b_) s_b_ = von_neumann_entropy(partial_trace(cut_.rho, cut_.side_b));
        return *s_b_;
    }
    double entropy_ab() {
        if (!s_ab_) s_ab_ = von_neumann_entropy(cut_.rho);
        return *s_ab_;
    }
    const DensityMatrix& rho_a() {
        if (!rho_a_) rho_a_ = partial_trace(cut_.rho, cut_.side_a);
        return *rho_a_;
    }
    bool global_pure() { return cut_.rho.purity() > 1.0 - 1e-9; }

    double negativity_raw() {
        if (!neg_) {
            DensityMatrix pt(cut_.rho.mat, cut_.rho.dims, /*validate_now=*/false);
            for (std::size_t s : cut_.side_a)
                pt.mat = partial_transpose(pt, s);
            neg_ = std::max(0.0, (trace_norm(pt.mat) - 1.0) / 2.0);
        }
        return *neg_;
    }

    double log_negativity_raw() { return std::log2(2.0 * negativity_raw() + 1.0); }

    double mutual_information_raw() {
        return std::max(0.0, entropy_a() + entropy_b() - entropy_ab());
    }

    double measured_mutual_information_raw() {
        return std::max(0.0, entropy_b() - min_conditional_entropy());
    }

    // For a pure global state the analytic identity D = S(rho_A) applies;
    // pass force_numeric to exercise the optimizer regardless.
    double discord_raw(bool force_numeric = false) {
        if (!force_numeric && global_pure()) return entropy_a();
        return std::max(0.0, mutual_information_raw() - measured_mutual_information_raw());
    }

    double work_deficit_raw() { return std::max(0.0, min_dephased_entropy() - entropy_ab()); }

    double tangle_raw();
    double eof_raw();

    double min_conditional_entropy() {
        require_qubit_side_a("measured mutual information / discord");
        if (!cond_min_) {
            auto objective = [&](const QubitMeasurementBasis& b) {
                return conditional_entropy(b);
            };
            cond_report_ = OptimizerReport{};
            cond_min_ = optimize_qubit_measurement(objective, opt_, &cond_report_).second;
        }
        return *cond_min_;
    }

    double min_dephased_entropy() {
        require_qubit_side_a("work deficit");
        if (!deph_min_) {
            auto objective = [&](const QubitMeasurementBasis& b) {
                return dephased_entropy(b);
            };
            deph_report_ = OptimizerReport{};
            deph_min_ = optimize_qubit_measurement(objective, opt_, &deph_report_).second;
        }
        return *deph_min_;
    }

    // sum_a p_a S(rho_{B|a}) for measurement along `b` on side A
    double conditional_entropy(const QubitMeasurementBasis& b) {
        const std::size_t a_idx = cut_.side_a.front();
        double s = 0.0;
        for (const auto& v : {b.ket(), b.ket_orthogonal()}) {
            ComplexMatrix block = detail::sandwich_block(cut_.rho, a_idx, v);
            const double p = block.trace().real();
            if (p < 1e-14) continue;
            auto spec = eigvalsh(block).eigenvalues;
            for (double& l : spec) l /= p;
            s += p * entropy_of_spectrum(spec);
        }
        return s;
    }

    // S(sum_a (Pi_a x I) rho (Pi_a x I)); the dephased state is block diagonal,
    // so its spectrum is the union of the two block spectra
    double dephased_entropy(const QubitMeasurementBasis& b) {
        const std::size_t a_idx = cut_.side_a.front();
        std::vector<double> spec;
        for (const auto& v : {b.ket(), b.ket_orthogonal()}) {
            auto block_spec = eigvalsh(detail::sandwich_block(cut_.rho, a_idx, v)).eigenvalues;
            spec.insert(spec.end(), block_spec.begin(), block_spec.end());
        }
        return entropy_of_spectrum(spec);
    }

    MeasureValue value(MeasureKind k) {
        MeasureValue mv;
        mv.kind = k;
        switch (k) {
            case MeasureKind::Negativity: mv.raw = negativity_raw(); break;
            case MeasureKind::LogNegativity: mv.raw = log_negativity_raw(); break;
            case MeasureKind::MutualInformation: mv.raw = mutual_information_raw(); break;
            case MeasureKind::MeasuredMutualInformation:
                mv.raw = measured_mutual_information_raw();
                mv.optimizer_report = cond_report_;
                break;
            case MeasureKind::Discord:
                mv.raw = discord_raw();
                if (cond_min_) mv.optimizer_report = cond_report_;
                break;
            case MeasureKind::WorkDeficit:
                mv.raw = work_deficit_raw();
                mv.optimizer_report = deph_report_;
                break;
            case MeasureKind::Tangle: mv.raw = tangle_raw(); break;
            case MeasureKind::Eof: mv.raw = eof_raw(); break;
        }
        mv.normalized = normalize_measure(k, mv.raw);
        return mv;
    }

private:
    void require_qubit_side_a(const char* what) const {
        if (cut_.side_a.size() != 1 || cut_.rho.dims[cut_.side_a.front()] != 2)
            throw std::invalid_argument(std::string(what) + ": side A must be a single qubit");
    }

    BipartiteCut cut_;
    OptimizerSettings opt_;
    std::optional<DensityMatrix> rho_a_;
    std::optional<double> s_a_, s_b_, s_ab_, neg_, cond_min_, deph_min_;
    OptimizerReport cond_report_{}, deph_report_{};
};

// Wootters concurrence of a two-qubit state, via the Hermitian form
// R = sqrt(rho) rho_tilde sqrt(rho).
inline double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4 || rho.dims != std::vector<std::size_t>{2, 2})
        throw std::invalid_argument("concurrence: expects a two-qubit state");

    // rho_tilde = (sy x sy) conj(rho) (sy x sy)
    ComplexMatrix syy(4, 4);
    syy(0, 3) = -1.0;
    syy(1, 2) = 1.0;
    syy(2, 1) = 1.0;
    syy(3, 0) = -1.0;
    ComplexMatrix conj_rho(4, 4);
    for (std::size_t i = 0; i < 16; ++i) conj_rho.data[i] = std::conj(rho.mat.data[i]);
    const ComplexMatrix tilde = syy * conj_rho * syy;

    const auto spec = eigvalsh(rho.mat, /*want_vectors=*/true);
    ComplexMatrix sqrt_rho(4, 4);
    const ComplexMatrix& u = *spec.eigenvectors;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            cx s = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                s += u(i, k) * std::sqrt(std::max(spec.eigenvalues[k], 0.0)) * std::conj(u(j, k));
            sqrt_rho(i, j) = s;
        }

    auto mu = eigvalsh(sqrt_rho * tilde * sqrt_rho).eigenvalues;
    for (double& m : mu) m = std::sqrt(std::max(m, 0.0));
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

inline double tangle_two_qubit(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return c * c;
}

// tau(A : rest) = 4 det rho_A for a pure state with a qubit nodal party
inline double tangle_pure_cut(const PureState& psi, std::size_t nodal) {
    if (nodal >= psi.dims.size() || psi.dims[nodal] != 2)
        throw std::invalid_argument("tangle_pure_cut: nodal party must be a qubit");
    const DensityMatrix rho_a = partial_trace(psi.to_density(), {nodal});
    const cx det = rho_a.mat(0, 0) * rho_a.mat(1, 1) - rho_a.mat(0, 1) * rho_a.mat(1, 0);
    return std::max(0.0, 4.0 * det.real());
}

inline double eof_two_qubit(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0);
}

inline double eof_pure_cut(const PureState& psi, std::size_t nodal) {
    return von_neumann_entropy(partial_trace(psi.to_density(), {nodal}));
}

inline double CutEvaluator::tangle_raw() {
    if (cut_.rho.dims == std::vector<std::size_t>{2, 2} && cut_.side_a.size() == 1)
        return tangle_two_qubit(cut_.rho);
    require_qubit_side_a("tangle");
    if (!global_pure())
        throw std::invalid_argument("tangle: mixed states supported only on two-qubit cuts");
    const ComplexMatrix& m = rho_a().mat;
    const cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return std::max(0.0, 4.0 * det.real());
}

inline double CutEvaluator::eof_raw() {
    if (cut_.rho.dims == std::vector<std::size_t>{2, 2} && cut_.side_a.size() == 1)
        return eof_two_qubit(cut_.rho);
    require_qubit_side_a("eof");
    if (!global_pure())
        throw std::invalid_argument("eof: mixed states supported only on two-qubit cuts");
    return entropy_a();
}

// ---- spec-surface wrappers -------------------------------------------------

inline MeasureValue negativity(const BipartiteCut& cut) {
    return CutEvaluator(cut).value(MeasureKind::Negativity);
}
inline MeasureValue log_negativity(const BipartiteCut& cut) {
    return CutEvaluator(cut).value(MeasureKind::LogNegativity);
}
inline MeasureValue mutual_information(const BipartiteCut& cut) {
    return CutEvaluator(cut).value(MeasureKind::MutualInformation);
}
inline MeasureValue measured_mutual_information(const BipartiteCut& cut,
                                                const OptimizerSettings& opt = {}) {
    return CutEvaluator(cut, opt).value(MeasureKind::MeasuredMutualInformation);
}
inline MeasureValue quantum_discord(const BipartiteCut& cut, const OptimizerSettings& opt = {}) {
    return CutEvaluator(cut, opt).value(MeasureKind::Discord);
}
inline MeasureValue work_deficit(const BipartiteCut& cut, const OptimizerSettings& opt = {}) {
    return CutEvaluator(cut, opt).value(MeasureKind::WorkDeficit);
}

}  // namespace monoq
