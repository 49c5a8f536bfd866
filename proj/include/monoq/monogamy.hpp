// Monogamy scores, the purity-correlation complementarity sum, and the chain
// of lower bounds on monogamy violation, verified per state and measure.
#pragma once

#include "monoq/measures.hpp"

namespace monoq {

// Nodal party A against an ordered list of leaf parties B_1..B_m.
struct PartitionSpec {
    std::size_t nodal = 0;
    std::vector<std::size_t> leaves;

    static PartitionSpec nodal_vs_rest(std::size_t nodal, std::size_t n_subsystems) {
        PartitionSpec p;
        p.nodal = nodal;
        for (std::size_t s = 0; s < n_subsystems; ++s)
            if (s != nodal) p.leaves.push_back(s);
        return p;
    }

    void check(const DensityMatrix& rho) const {
        if (nodal >= rho.dims.size()) throw std::out_of_range("PartitionSpec: nodal out of range");
        std::vector<bool> seen(rho.dims.size(), false);
        seen[nodal] = true;
        for (std::size_t l : leaves) {
            if (l >= rho.dims.size() || seen[l])
                throw std::invalid_argument("PartitionSpec: leaves must be distinct and exclude nodal");
            seen[l] = true;
        }
        if (leaves.size() + 1 != rho.dims.size())
            throw std::invalid_argument("PartitionSpec: partition must cover all subsystems");
    }
};

struct MonogamyRecord {
    std::string state_id;
    std::string family;
    int rank = 1;
    MeasureKind measure{};
    double q_whole = 0.0;               // normalized q(A : B_1..B_m)
    std::vector<double> q_pairs;        // normalized q(A : B_k)
    double delta = 0.0;                 // q_whole - sum q_pairs
    double entropy_a = 0.0;             // S(rho_A)
    double purity_a = 0.0;              // normalized purity of rho_A
    double x0 = 0.0;                    // purity_a + q_whole
    std::vector<double> xk;             // purity_a + q_pairs[k]
    double b0 = 1.0;
    std::vector<double> bk;
    double bound_trivial = 0.0;
    double bound_improved = 0.0;
    double bound_entropy = 0.0;
    bool eq_x0_ge_1 = false;            // whether the entropy-form bound's x0 >= 1 condition holds
    bool pass_entropy = false;
    bool pass_improved = false;
    bool pass_x0 = false;
    std::optional<OptimizerReport> optimizer_report;
};

// b = 1 if d_X <= d_Y, else 2 - log2(d_Y)/log2(d_X)
inline double bound_b(std::size_t d_x, std::size_t d_y) {
    if (d_x < 2 || d_y < 2) throw std::invalid_argument("bound_b: dimensions must be >= 2");
    if (d_x <= d_y) return 1.0;
    return 2.0 - std::log2(static_cast<double>(d_y)) / std::log2(static_cast<double>(d_x));
}

inline double complementarity_x0(MeasureKind k, const BipartiteCut& cut,
                                 const OptimizerSettings& opt = {}) {
    CutEvaluator ev(cut, opt);
    return normalized_purity(ev.rho_a()) + ev.value(k).normalized;
}

struct LowerBounds {
    double trivial = 0.0;
    double improved = 0.0;
    double entropy = 0.0;
};

// The bound chain is derived only for b_k = 1, i.e. d_A <= d_{B_k}; callers
// enforce that before invoking this.
inline LowerBounds lower_bounds(double purity_a, double x0, std::size_t m) {
    const double mm = static_cast<double>(m);
    LowerBounds b;
    b.trivial = -(mm - 1.0);
    b.entropy = -(mm - 1.0) * (1.0 - purity_a);
    b.improved = b.entropy - (1.0 - x0);
    return b;
}

// P(rho_AB) + q(rho_AB:C) with q = I/2, for three equal-dimension subsystems;
// bounded by 3/2 and saturated by GHZ.
inline double tripartite_complementarity(const DensityMatrix& rho) {
    if (rho.dims.size() != 3 || rho.dims[0] != rho.dims[1] || rho.dims[1] != rho.dims[2])
        throw std::invalid_argument(
            "tripartite_complementarity: three equal-dimension subsystems required");
    const double logd = std::log2(static_cast<double>(rho.dims[2]));
    CutEvaluator ev(BipartiteCut(rho, {0, 1}));
    const double mi_half = ev.mutual_information_raw() / 2.0;
    return normalized_purity(ev.rho_a()) + mi_half / logd;
}

// Evaluates monogamy records for one state and partition, sharing the per-cut
// optimizer work across measures.
class PartitionEvaluator {
public:
    PartitionEvaluator(const DensityMatrix& rho, PartitionSpec part, OptimizerSettings opt = {})
        : part_(std::move(part)), opt_(opt) {
        part_.check(rho);
        if (rho.dims[part_.nodal] != 2)
            throw std::invalid_argument("monogamy_score: nodal party must be a qubit");
        for (std::size_t l : part_.leaves)
            if (rho.dims[part_.nodal] > rho.dims[l])
                throw std::invalid_argument("monogamy_score: bound chain requires d_A <= d_Bk");

        whole_.emplace(BipartiteCut(rho, {part_.nodal}), opt_);
        for (std::size_t leaf : part_.leaves) {
            const DensityMatrix marginal = partial_trace(rho, {part_.nodal, leaf});
            const std::size_t a_pos = part_.nodal < leaf ? 0 : 1;
            pairs_.emplace_back(BipartiteCut(marginal, {a_pos}), opt_);
            leaf_dims_.push_back(rho.dims[leaf]);
        }
    }

    MonogamyRecord record(MeasureKind measure) {
        MonogamyRecord rec;
        rec.measure = measure;

        const MeasureValue whole_val = whole_->value(measure);
        rec.q_whole = whole_val.normalized;
        rec.optimizer_report = whole_val.optimizer_report;
        rec.entropy_a = whole_->entropy_a();
        rec.purity_a = normalized_purity(whole_->rho_a());
        rec.x0 = rec.purity_a + rec.q_whole;
        rec.b0 = bound_b(2, whole_->cut().dim_b());

        double pair_sum = 0.0;
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            const double q = pairs_[k].value(measure).normalized;
            rec.q_pairs.push_back(q);
            rec.xk.push_back(rec.purity_a + q);
            rec.bk.push_back(bound_b(2, leaf_dims_[k]));
            pair_sum += q;
        }
        rec.delta = rec.q_whole - pair_sum;

        const LowerBounds lb = lower_bounds(rec.purity_a, rec.x0, part_.leaves.size());
        rec.bound_trivial = lb.trivial;
        rec.bound_improved = lb.improved;
        rec.bound_entropy = lb.entropy;
        rec.eq_x0_ge_1 = rec.x0 >= 1.0;

        const double tol = measure_tolerance(measure);
        rec.pass_entropy = rec.delta >= rec.bound_entropy - tol;
        rec.pass_improved = rec.delta >= rec.bound_improved - tol;
        rec.pass_x0 = rec.x0 <= rec.b0 + tol;
        return rec;
    }

private:
    PartitionSpec part_;
    OptimizerSettings opt_;
    std::optional<CutEvaluator> whole_;
    std::vector<CutEvaluator> pairs_;
    std::vector<std::size_t> leaf_dims_;
};

inline MonogamyRecord monogamy_score(MeasureKind measure, const DensityMatrix& rho,
                                     const PartitionSpec& part, const OptimizerSettings& opt = {}) {
    return PartitionEvaluator(rho, part, opt).record(measure);
}

inline std::vector<MonogamyRecord> verify(const DensityMatrix& rho, const PartitionSpec& part,
                                          const std::vector<MeasureKind>& measures,
                                          const OptimizerSettings& opt = {}) {
    PartitionEvaluator ev(rho, part, opt);
    std::vector<MonogamyRecord> out;
    out.reserve(measures.size());
    for (MeasureKind k : measures) out.push_back(ev.record(k));
    return out;
}

}  // namespace monoq
