#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "monoq/campaign.hpp"
#include "test_util.hpp"

using namespace monoq;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string records_to_string(const std::vector<MonogamyRecord>& records) {
    std::ostringstream ss;
    write_records_csv(records, ss);
    return ss.str();
}

}  // namespace

TEST_CASE("state file round trip is exact") {
    CampaignConfig cfg;
    cfg.family = "haar-rank2";
    cfg.count = 3;
    cfg.base_seed = 99;
    const auto states = generate_states(cfg);
    const auto path = tmp_path("monoq_states_rt.json");
    write_states(states, path);
    const auto back = read_states(path);

    REQUIRE(back.size() == states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        CHECK(back[i].id == states[i].id);
        CHECK(back[i].rank == 2);
        const auto& a = std::get<DensityMatrix>(states[i].state).mat;
        const auto& b = std::get<DensityMatrix>(back[i].state).mat;
        for (std::size_t k = 0; k < a.data.size(); ++k) CHECK(a.data[k] == b.data[k]);
    }
    std::remove(path.c_str());
}

TEST_CASE("campaign output is a pure function of the config") {
    CampaignConfig cfg;
    cfg.family = "haar-pure";
    cfg.count = 6;
    cfg.base_seed = 31337;
    cfg.measures = {MeasureKind::Negativity, MeasureKind::MutualInformation};

    const auto r1 = score_states(generate_states(cfg), cfg.measures, 0);
    const auto r2 = score_states(generate_states(cfg), cfg.measures, 0);
    CHECK(records_to_string(r1) == records_to_string(r2));

    // worker count changes nothing
    const auto r3 = score_states(generate_states(cfg), cfg.measures, 0, {}, 3);
    CHECK(records_to_string(r1) == records_to_string(r3));

    // rows sorted by state id
    for (std::size_t i = 2; i < r1.size(); i += 2)
        CHECK(r1[i].state_id > r1[i - 2].state_id);
}

TEST_CASE("ghz campaign record matches closed-form values") {
    CampaignConfig cfg;
    cfg.family = "ghz";
    cfg.count = 1;
    const auto records = score_states(generate_states(cfg), figure_measures(), 0);
    REQUIRE(records.size() == 6);
    for (const auto& r : records) {
        CAPTURE(measure_name(r.measure));
        CHECK(r.entropy_a == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.purity_a == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(r.bound_entropy == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(r.pass_entropy);
    }
    const auto& neg = records[0];
    CHECK(neg.measure == MeasureKind::Negativity);
    CHECK(neg.q_whole == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(neg.q_pairs[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(neg.delta == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("campaign config validation") {
    CampaignConfig cfg;
    cfg.count = 0;
    CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
    cfg.count = 1;
    cfg.n_qubits = 2;
    CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
    cfg.n_qubits = 3;
    cfg.nodal = 3;
    CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
    cfg.nodal = 0;
    cfg.family = "bogus";
    CHECK_THROWS_AS(generate_states(cfg), std::invalid_argument);
}

TEST_CASE("histogram") {
    const auto two = histogram({0.0, 0.0, 1.0, 1.0}, {"", 2, {{0.0, 1.0}}});
    REQUIRE(two.size() == 2);
    CHECK(two[0].frequency == 2);
    CHECK(two[1].frequency == 2);

    const auto one = histogram({0.7}, {"", 1, std::nullopt});
    REQUIRE(one.size() == 1);
    CHECK(one[0].frequency == 1);

    // count conservation for arbitrary inputs, explicit and auto range
    Rng rng({55, 0});
    std::vector<double> vals;
    for (int i = 0; i < 1000; ++i) vals.push_back(rng.gaussian_pair().first);
    for (const HistogramSpec& spec :
         {HistogramSpec{"", 7, std::nullopt}, HistogramSpec{"", 13, {{-1.0, 1.0}}}}) {
        std::size_t total = 0;
        for (const auto& b : histogram(vals, spec)) total += b.frequency;
        CHECK(total == vals.size());
    }
}

TEST_CASE("csv round trip and derived columns") {
    CampaignConfig cfg;
    cfg.family = "w";
    cfg.count = 1;
    const auto records = score_states(generate_states(cfg), {MeasureKind::Tangle}, 0);
    const auto path = tmp_path("monoq_records_rt.csv");
    write_records_csv(records, path);
    const auto table = read_csv(path);

    REQUIRE(table.rows.size() == 1);
    const auto delta = table.numeric_column("delta");
    CHECK(delta[0] == records[0].delta);  // 17-digit output round-trips exactly

    // scatter geometry: W with tangle sits at (0, -h(1/3))
    const auto xs = table.numeric_column("delta");
    const auto ys = table.numeric_column("neg_entropy");
    CHECK(xs[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(ys[0] == doctest::Approx(-binary_entropy(1.0 / 3.0)).epsilon(1e-9));
    CHECK(xs[0] >= ys[0] - 1e-6);

    const auto sums = table.numeric_column("delta+entropy_a");
    CHECK(sums[0] == doctest::Approx(records[0].delta + records[0].entropy_a));

    CHECK_THROWS_AS(table.numeric_column("nope"), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("scatter export for GHZ with the tangle") {
    CampaignConfig cfg;
    cfg.family = "ghz";
    cfg.count = 1;
    const auto records = score_states(generate_states(cfg), {MeasureKind::Tangle}, 0);
    const auto csv = tmp_path("monoq_scatter_in.csv");
    const auto out = tmp_path("monoq_scatter_out.csv");
    write_records_csv(records, csv);
    write_scatter_csv(read_csv(csv), "delta", "neg_entropy", out);

    const auto table = read_csv(out);
    REQUIRE(table.rows.size() == 1);
    CHECK(std::stod(table.rows[0][0]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::stod(table.rows[0][1]) == doctest::Approx(-1.0).epsilon(1e-9));
    std::remove(csv.c_str());
    std::remove(out.c_str());
}

TEST_CASE("analytic tables") {
    const auto ghz_rows = analytic_table("ghz", 5, 21);
    // |alpha|^2 = 1/2 row: h(e) = 1, bound -(n-2)
    const auto& mid = ghz_rows[10];
    CHECK(mid.param == doctest::Approx(0.5));
    CHECK(mid.h_e == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mid.entropy_bound == doctest::Approx(-3.0).epsilon(1e-6));

    // gamma = 1 endpoint of the ghzw sweep is the W state: e = (n-1)/n
    const auto w_rows = analytic_table("ghzw", 10, 11);
    CHECK(w_rows.back().e == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(w_rows.back().entropy_bound == doctest::Approx(-8.0 * binary_entropy(0.1)).epsilon(1e-12));

    // Dicke at r = n/2: h(e) = 1, weak bound
    const auto dicke_rows = analytic_table("dicke", 6, 0);
    CHECK(dicke_rows.size() == 5);
    CHECK(dicke_rows[2].param == doctest::Approx(3.0));
    CHECK(dicke_rows[2].h_e == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(analytic_table("w", 3), std::invalid_argument);
}

TEST_CASE("run_campaign writes byte-identical files across runs") {
    CampaignConfig cfg;
    cfg.family = "haar-rank2";
    cfg.count = 3;
    cfg.base_seed = 7;
    cfg.measures = {MeasureKind::Negativity, MeasureKind::LogNegativity};
    const auto a_csv = tmp_path("monoq_run_a.csv");
    const auto b_csv = tmp_path("monoq_run_b.csv");
    const auto a_json = tmp_path("monoq_run_a.json");
    const auto b_json = tmp_path("monoq_run_b.json");
    run_campaign(cfg, a_csv, a_json);
    cfg.workers = 4;
    run_campaign(cfg, b_csv, b_json);
    CHECK(slurp(a_csv) == slurp(b_csv));
    CHECK(slurp(a_json) == slurp(b_json));
    for (const auto& p : {a_csv, b_csv, a_json, b_json}) std::remove(p.c_str());
}
