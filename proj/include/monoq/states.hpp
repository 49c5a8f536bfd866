// State construction: GHZ/W superpositions, Dicke states, analytic single-qubit
// reductions, and Haar-uniform sampling with reproducible seed streams.
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "monoq/tensor.hpp"

namespace monoq {

// Normalized amplitude vector over the given tensor factors.
struct PureState {
    std::vector<cx> amplitudes;
    std::vector<std::size_t> dims;

    std::size_t dim() const { return amplitudes.size(); }

    double norm() const {
        double n = 0.0;
        for (const cx& a : amplitudes) n += std::norm(a);
        return std::sqrt(n);
    }

    DensityMatrix to_density() const {
        ComplexMatrix m(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
        return DensityMatrix(std::move(m), dims, /*validate_now=*/false);
    }
};

// alpha|0...0> + beta|1...1> + gamma|W_n>
struct GhzwParams {
    std::size_t n = 3;
    cx alpha{1.0, 0.0};
    cx beta{0.0, 0.0};
    cx gamma{0.0, 0.0};

    double norm_sq() const {
        return std::norm(alpha) + std::norm(beta) + std::norm(gamma);
    }
    void check() const {
        if (n < 3) throw std::invalid_argument("GhzwParams: n < 3");
        if (std::abs(norm_sq() - 1.0) > 1e-10)
            throw std::invalid_argument("GhzwParams: |alpha|^2+|beta|^2+|gamma|^2 != 1");
    }
};

struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t stream_index = 0;
};

// Deterministic per-(seed, stream) generator. std::seed_seq and mt19937_64 are
// fully specified, so identical SeedSpecs give identical output everywhere.
class Rng {
public:
    explicit Rng(SeedSpec s) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(s.base_seed & 0xffffffffu),
            static_cast<std::uint32_t>(s.base_seed >> 32),
            static_cast<std::uint32_t>(s.stream_index & 0xffffffffu),
            static_cast<std::uint32_t>(s.stream_index >> 32)};
        eng_.seed(seq);
    }

    // uniform in [0, 1), 53 mantissa bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // standard normal pair via Box-Muller (no implementation-defined distributions)
    std::pair<double, double> gaussian_pair() {
        const double u = 1.0 - uniform();  // (0, 1]
        const double r = std::sqrt(-2.0 * std::log(u));
        const double t = 2.0 * 3.14159265358979323846 * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

    cx complex_gaussian() {
        auto [re, im] = gaussian_pair();
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
};

inline PureState ghz_w(const GhzwParams& p) {
    p.check();
    const std::size_t d = std::size_t{1} << p.n;
    PureState psi;
    psi.dims.assign(p.n, 2);
    psi.amplitudes.assign(d, cx{});
    psi.amplitudes[0] = p.alpha;
    psi.amplitudes[d - 1] = p.beta;
    const cx w_amp = p.gamma / std::sqrt(static_cast<double>(p.n));
    for (std::size_t q = 0; q < p.n; ++q)
        psi.amplitudes[std::size_t{1} << (p.n - 1 - q)] += w_amp;
    return psi;
}

// Equal superposition of all weight-r basis states; r = 1 is the W state.
inline PureState dicke(std::size_t n, std::size_t r) {
    if (n < 2 || r < 1 || r > n - 1) throw std::invalid_argument("dicke: r out of range");
    const std::size_t d = std::size_t{1} << n;
    std::size_t count = 0;
    PureState psi;
    psi.dims.assign(n, 2);
    psi.amplitudes.assign(d, cx{});
    for (std::size_t b = 0; b < d; ++b)
        if (static_cast<std::size_t>(std::popcount(b)) == r) {
            psi.amplitudes[b] = 1.0;
            ++count;
        }
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (cx& a : psi.amplitudes) a *= amp;
    return psi;
}

// Single-qubit reduction of ghz_w(p), written in closed form.
inline DensityMatrix reduced_qubit_analytic(const GhzwParams& p) {
    p.check();
    const double n = static_cast<double>(p.n);
    const double a2 = std::norm(p.alpha);
    const double b2 = std::norm(p.beta);
    const double g2 = std::norm(p.gamma);
    ComplexMatrix m(2, 2);
    m(0, 0) = a2 + (n - 1.0) / n * g2;
    m(1, 1) = b2 + g2 / n;
    m(0, 1) = p.alpha * std::conj(p.gamma) / std::sqrt(n);
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix(std::move(m), {2}, /*validate_now=*/false);
}

// Largest eigenvalue of the single-qubit reduction, in [1/2, 1].
inline double largest_eig_analytic(const GhzwParams& p) {
    p.check();
    const double n = static_cast<double>(p.n);
    const double a2 = std::norm(p.alpha);
    const double b2 = std::norm(p.beta);
    const double g2 = std::norm(p.gamma);
    double radicand = 1.0 - 4.0 * a2 * b2 - 4.0 * (n - 1.0) / n * g2 * (b2 + g2 / n);
    if (radicand < -1e-12) throw std::invalid_argument("largest_eig_analytic: negative radicand");
    radicand = std::max(radicand, 0.0);
    return 0.5 * (1.0 + std::sqrt(radicand));
}

// Haar-uniform pure state: i.i.d. complex Gaussian amplitudes, normalized.
inline PureState haar_pure(std::vector<std::size_t> dims, SeedSpec seed) {
    std::size_t d = 1;
    for (std::size_t s : dims) d *= s;
    if (d < 2) throw std::invalid_argument("haar_pure: total dimension < 2");
    Rng rng(seed);
    PureState psi;
    psi.dims = std::move(dims);
    psi.amplitudes.resize(d);
    for (cx& a : psi.amplitudes) a = rng.complex_gaussian();
    double nrm = psi.norm();
    for (cx& a : psi.amplitudes) a /= nrm;
    return psi;
}

// Rank-<=2 n-qubit mixed state: trace the last qubit of an (n+1)-qubit Haar pure state.
inline DensityMatrix haar_rank2(std::size_t n_qubits, SeedSpec seed) {
    const PureState psi = haar_pure(std::vector<std::size_t>(n_qubits + 1, 2), seed);
    std::vector<std::size_t> keep(n_qubits);
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    return partial_trace(psi.to_density(), keep);
}

inline DensityMatrix haar_rank2_threequbit(SeedSpec seed) { return haar_rank2(3, seed); }

}  // namespace monoq
