#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "monoq/monogamy.hpp"
#include "test_util.hpp"

using namespace monoq;

namespace {

DensityMatrix ghz3() {
    const double r = 1.0 / std::sqrt(2.0);
    return ghz_w({3, r, r, 0.0}).to_density();
}

DensityMatrix w3() { return ghz_w({3, 0.0, 0.0, 1.0}).to_density(); }

const PartitionSpec part3 = PartitionSpec::nodal_vs_rest(0, 3);

}  // namespace

TEST_CASE("bound_b") {
    CHECK(bound_b(2, 4) == doctest::Approx(1.0));
    CHECK(bound_b(4, 2) == doctest::Approx(1.5));
    CHECK(bound_b(8, 8) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bound_b(1, 2), std::invalid_argument);
}

TEST_CASE("monogamy score for the tangle") {
    const auto ghz_rec = monogamy_score(MeasureKind::Tangle, ghz3(), part3);
    CHECK(ghz_rec.q_whole == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ghz_rec.q_pairs[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(ghz_rec.q_pairs[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(ghz_rec.delta == doctest::Approx(1.0).epsilon(1e-9));

    const auto w_rec = monogamy_score(MeasureKind::Tangle, w3(), part3);
    CHECK(w_rec.q_whole == doctest::Approx(8.0 / 9.0).epsilon(1e-10));
    CHECK(w_rec.q_pairs[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
    CHECK(w_rec.delta == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("monogamy score for halved mutual information on GHZ") {
    const auto rec = monogamy_score(MeasureKind::MutualInformation, ghz3(), part3);
    CHECK(rec.q_whole == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rec.q_pairs[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rec.q_pairs[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rec.delta == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("monogamy score rejects bad partitions") {
    CHECK_THROWS_AS(monogamy_score(MeasureKind::Negativity, ghz3(), {0, {1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(monogamy_score(MeasureKind::Negativity, ghz3(), {0, {0, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(monogamy_score(MeasureKind::Negativity, ghz3(), {5, {1, 2}}),
                    std::out_of_range);

    // bound chain refuses d_A > d_Bk (nodal pair of qubits treated as one 4-dim leaf
    // is out of reach here, so exercise via a qutrit-free guard on dims instead)
    DensityMatrix unequal(cx{1.0 / 12.0, 0.0} * ComplexMatrix::identity(12), {3, 2, 2});
    CHECK_THROWS_AS(monogamy_score(MeasureKind::Negativity, unequal, {0, {1, 2}}),
                    std::invalid_argument);
}

TEST_CASE("complementarity sum x0") {
    const auto product = testutil::basis_state({2, 2, 2}, 0).to_density();
    CHECK(complementarity_x0(MeasureKind::Discord, BipartiteCut(product, {0})) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // GHZ with discord: purity 0, discord 1
    CHECK(complementarity_x0(MeasureKind::Discord, BipartiteCut(ghz3(), {0})) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // rank-1 states saturate x0 = 1 for discord and work deficit
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto rho = haar_pure({2, 2, 2}, {1000, s}).to_density();
        CHECK(std::abs(complementarity_x0(MeasureKind::Discord, BipartiteCut(rho, {0})) - 1.0) <
              5e-4);
        CHECK(std::abs(complementarity_x0(MeasureKind::WorkDeficit, BipartiteCut(rho, {0})) - 1.0) <
              5e-4);
    }
}

TEST_CASE("lower bound chain") {
    // three-qubit case: entropy bound is -S(rho_A)
    const auto rec = monogamy_score(MeasureKind::Negativity, w3(), part3);
    CHECK(rec.bound_entropy == doctest::Approx(-rec.entropy_a).epsilon(1e-12));
    CHECK(rec.bound_trivial == doctest::Approx(-1.0));
    CHECK(rec.bound_improved == doctest::Approx(rec.bound_entropy - (1.0 - rec.x0)).epsilon(1e-12));
    CHECK(rec.bound_entropy >= rec.bound_trivial);

    // ghz_w family: entropy bound is -(n-2) h(e)
    for (std::size_t n : {4, 6}) {
        Rng rng({64, n});
        cx a = rng.complex_gaussian(), b = rng.complex_gaussian(), g = rng.complex_gaussian();
        const double nrm = std::sqrt(std::norm(a) + std::norm(b) + std::norm(g));
        const GhzwParams p{n, a / nrm, b / nrm, g / nrm};
        const auto rec_n = monogamy_score(MeasureKind::Negativity, ghz_w(p).to_density(),
                                          PartitionSpec::nodal_vs_rest(0, n));
        const double he = binary_entropy(largest_eig_analytic(p));
        CHECK(rec_n.bound_entropy ==
              doctest::Approx(-(static_cast<double>(n) - 2.0) * he).epsilon(1e-9));
    }

    // pure product state: purity 1, x0 = 1, all bounds collapse to 0
    const auto prod_rec = monogamy_score(MeasureKind::MutualInformation,
                                         testutil::basis_state({2, 2, 2}, 0).to_density(), part3);
    CHECK(prod_rec.delta == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(prod_rec.bound_entropy == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(prod_rec.bound_improved == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(prod_rec.pass_entropy);
    CHECK(prod_rec.pass_improved);
    CHECK(prod_rec.pass_x0);
}

TEST_CASE("tripartite complementarity") {
    CHECK(tripartite_complementarity(ghz3()) == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(tripartite_complementarity(testutil::basis_state({2, 2, 2}, 0).to_density()) ==
          doctest::Approx(1.0).epsilon(1e-10));
    DensityMatrix mixed(cx{0.125, 0.0} * ComplexMatrix::identity(8), {2, 2, 2});
    CHECK(tripartite_complementarity(mixed) == doctest::Approx(0.0).epsilon(1e-10));
    DensityMatrix two(cx{0.25, 0.0} * ComplexMatrix::identity(4), {2, 2});
    CHECK_THROWS_AS(tripartite_complementarity(two), std::invalid_argument);
}

TEST_CASE("verify on GHZ: every figure measure passes every bound") {
    const auto records = verify(ghz3(), part3, figure_measures());
    CHECK(records.size() == 6);
    for (const auto& r : records) {
        CAPTURE(measure_name(r.measure));
        CHECK(r.pass_entropy);
        CHECK(r.pass_improved);
        CHECK(r.pass_x0);
        CHECK(r.delta + r.entropy_a >= -measure_tolerance(r.measure));
    }
}

TEST_CASE("verify on W with discord: delta bounded below by -S(rho_A)") {
    const auto rec = monogamy_score(MeasureKind::Discord, w3(), part3);
    CHECK(rec.entropy_a == doctest::Approx(binary_entropy(1.0 / 3.0)).epsilon(1e-9));
    CHECK(rec.delta >= -rec.entropy_a - 5e-4);
    CHECK(rec.pass_entropy);
}

TEST_CASE("fig-1 inequality on sampled rank-1 and rank-2 states") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto pure = haar_pure({2, 2, 2}, {1100, s}).to_density();
        const auto mixed = haar_rank2_threequbit({1200, s});
        for (const auto& rho : {pure, mixed})
            for (const auto& r : verify(rho, part3, figure_measures())) {
                CAPTURE(measure_name(r.measure));
                CHECK(r.delta + r.entropy_a >= -measure_tolerance(r.measure));
                CHECK(r.x0 < 2.0);
                CHECK(r.bound_entropy >= r.bound_trivial - 1e-12);
            }
    }
}

TEST_CASE("tangle score is nonnegative on Haar pure states") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto rho = haar_pure({2, 2, 2}, {1300, s}).to_density();
        CHECK(monogamy_score(MeasureKind::Tangle, rho, part3).delta >= -1e-9);
    }
}

TEST_CASE("leaf relabeling leaves delta unchanged") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto rho = haar_rank2_threequbit({1400, s});
        const auto a = monogamy_score(MeasureKind::Negativity, rho, {0, {1, 2}});
        const auto b = monogamy_score(MeasureKind::Negativity, rho, {0, {2, 1}});
        CHECK(std::abs(a.delta - b.delta) < 1e-12);
    }
}
