// Dense complex-matrix kernel for small multiqubit systems: tensor products,
// partial trace, partial transpose, Hermitian eigendecomposition, trace norm.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monoq {

using cx = std::complex<double>;

inline constexpr double kHermTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;

// Row-major dense complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cx> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool square() const { return rows == cols; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    ComplexMatrix dagger() const {
        ComplexMatrix m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cx trace() const {
        cx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
        return t;
    }

    // max |M - M†| over entries; 0 for a perfectly Hermitian matrix
    double hermiticity_defect() const {
        if (!square()) return 1e300;
        double d = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = i; j < cols; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    bool is_hermitian(double tol = kHermTol) const { return hermiticity_defect() <= tol; }
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows, a.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = a.data[i] + b.data[i];
    return m;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows, a.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = a.data[i] - b.data[i];
    return m;
}

inline ComplexMatrix operator*(const cx& s, const ComplexMatrix& a) {
    ComplexMatrix m(a.rows, a.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = s * a.data[i];
    return m;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix m(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cx aik = a(i, k);
            if (aik == cx{}) continue;
            for (std::size_t j = 0; j < b.cols; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return 1e300;
    double d = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) d = std::max(d, std::abs(a.data[i] - b.data[i]));
    return d;
}

// Tensor (Kronecker) product; subsystem dimension lists concatenate.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t ia = 0; ia < a.rows; ++ia)
        for (std::size_t ja = 0; ja < a.cols; ++ja) {
            const cx v = a(ia, ja);
            if (v == cx{}) continue;
            for (std::size_t ib = 0; ib < b.rows; ++ib)
                for (std::size_t jb = 0; jb < b.cols; ++jb)
                    m(ia * b.rows + ib, ja * b.cols + jb) = v * b(ib, jb);
        }
    return m;
}

struct SpectrumResult {
    std::vector<double> eigenvalues;               // sorted descending
    std::optional<ComplexMatrix> eigenvectors;     // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Sizes here stay <= 16x16;
// off-diagonal Frobenius threshold 1e-13, at most 100 sweeps.
inline SpectrumResult eigvalsh(const ComplexMatrix& m, bool want_vectors = false) {
    if (!m.square()) throw std::invalid_argument("eigvalsh: matrix not square");
    if (!m.is_hermitian()) throw std::invalid_argument("eigvalsh: matrix not Hermitian");
    const std::size_t n = m.rows;

    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cx{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off2 += 2.0 * std::norm(a(i, j));
        if (std::sqrt(off2) < 1e-13) break;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const cx phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- U† A U with the 2x2 block U = [[c, s*phase], [-s*conj(phase), c]]
                for (std::size_t i = 0; i < n; ++i) {
                    const cx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cx{a(p, p).real(), 0.0};
                a(q, q) = cx{a(q, q).real(), 0.0};

                for (std::size_t i = 0; i < n; ++i) {
                    const cx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    SpectrumResult res;
    res.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) res.eigenvalues[k] = a(order[k], order[k]).real();
    if (want_vectors) {
        ComplexMatrix vecs(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) vecs(i, k) = v(i, order[k]);
        res.eigenvectors = std::move(vecs);
    }
    return res;
}

// Sum of absolute eigenvalues; Hermitian input only.
inline double trace_norm(const ComplexMatrix& m) {
    const auto spec = eigvalsh(m);
    double s = 0.0;
    for (double e : spec.eigenvalues) s += std::abs(e);
    return s;
}

// Hermitian, unit-trace, positive-semidefinite matrix with subsystem dimensions.
struct DensityMatrix {
    ComplexMatrix mat;
    std::vector<std::size_t> dims;

    DensityMatrix() = default;
    DensityMatrix(ComplexMatrix m, std::vector<std::size_t> d, bool validate_now = true)
        : mat(std::move(m)), dims(std::move(d)) {
        if (validate_now) validate();
    }

    std::size_t dim() const { return mat.rows; }
    std::size_t num_subsystems() const { return dims.size(); }

    void validate() const {
        std::size_t prod = 1;
        for (std::size_t d : dims) {
            if (d < 2) throw std::invalid_argument("DensityMatrix: subsystem dimension < 2");
            prod *= d;
        }
        if (!mat.square() || prod != mat.rows)
            throw std::invalid_argument("DensityMatrix: dims do not match matrix side");
        if (std::abs(mat.trace() - cx{1.0, 0.0}) > kTraceTol)
            throw std::invalid_argument("DensityMatrix: trace not 1");
        if (!mat.is_hermitian(kHermTol))
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        const auto spec = eigvalsh(mat);
        if (spec.eigenvalues.back() < -kPsdTol)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }

    // tr(rho^2)
    double purity() const {
        double p = 0.0;
        for (std::size_t i = 0; i < mat.rows; ++i)
            for (std::size_t j = 0; j < mat.cols; ++j)
                p += (mat(i, j) * std::conj(mat(i, j))).real();
        return p;
    }
};

namespace detail {

inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
    return s;
}

inline void check_subsystems(const std::vector<std::size_t>& idx, std::size_t n) {
    for (std::size_t s : idx)
        if (s >= n) throw std::out_of_range("subsystem index out of range");
}

}  // namespace detail

// Trace out every subsystem not listed in `keep`; result keeps original order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    const std::size_t k = rho.dims.size();
    if (keep.empty()) throw std::out_of_range("partial_trace: empty keep set");
    detail::check_subsystems(keep, k);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

    std::vector<bool> kept(k, false);
    for (std::size_t s : keep) kept[s] = true;
    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < k; ++s)
        if (!kept[s]) traced.push_back(s);

    const auto strides = detail::strides_of(rho.dims);
    std::vector<std::size_t> keep_dims, traced_dims;
    for (std::size_t s : keep) keep_dims.push_back(rho.dims[s]);
    for (std::size_t s : traced) traced_dims.push_back(rho.dims[s]);
    const std::size_t dk = std::accumulate(keep_dims.begin(), keep_dims.end(), std::size_t{1},
                                           std::multiplies<>());
    const std::size_t dt = std::accumulate(traced_dims.begin(), traced_dims.end(), std::size_t{1},
                                           std::multiplies<>());

    // base offset of a mixed-radix multi-index over the chosen subsystems
    auto offset = [&](std::size_t flat, const std::vector<std::size_t>& subs,
                      const std::vector<std::size_t>& sub_dims) {
        std::size_t off = 0;
        for (std::size_t s = subs.size(); s-- > 0;) {
            off += (flat % sub_dims[s]) * strides[subs[s]];
            flat /= sub_dims[s];
        }
        return off;
    };

    ComplexMatrix out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i) {
        const std::size_t ri = offset(i, keep, keep_dims);
        for (std::size_t j = 0; j < dk; ++j) {
            const std::size_t cj = offset(j, keep, keep_dims);
            cx sum = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t rt = offset(t, traced, traced_dims);
                sum += rho.mat(ri + rt, cj + rt);
            }
            out(i, j) = sum;
        }
    }
    return DensityMatrix(std::move(out), std::move(keep_dims), /*validate_now=*/false);
}

// Transpose the named tensor factor only. Applying twice returns the input exactly.
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t party) {
    if (party >= rho.dims.size()) throw std::out_of_range("partial_transpose: party out of range");
    const auto strides = detail::strides_of(rho.dims);
    const std::size_t d = rho.dims[party];
    const std::size_t stride = strides[party];
    const std::size_t n = rho.dim();

    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t di = (i / stride) % d;
        const std::size_t ibase = i - di * stride;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t dj = (j / stride) % d;
            const std::size_t jbase = j - dj * stride;
            out(ibase + dj * stride, jbase + di * stride) = rho.mat(i, j);
        }
    }
    return out;
}

}  // namespace monoq
