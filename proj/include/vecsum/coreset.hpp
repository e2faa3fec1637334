#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vecsum/vectors.hpp"

namespace vecsum {

// Construction knobs for the mean coreset.
struct CoresetParams {
    // Iteration and sparsity budget: the output keeps at most beta + 1 points.
    std::size_t beta = 100;
    // Target constant in the error bound ||mean - estimate||^2 <= alpha * var / beta.
    double alpha = 4.0;
    // Relative threshold below which the input is treated as having zero spread.
    double degenerate_tol = 1e-12;
};

// Rule for choosing the next vertex in the min-norm descent.
enum class SelectionRule {
    // argmin <h, c>: the classic linear-minimization (conditional gradient) oracle.
    LinearOracle,
    // argmax ||h - c||: pick the vertex farthest from the current iterate.
    Farthest,
};

// Lifts a weighted point set into unit vectors whose weighted sum is a
// known point on the last axis. All per-point data is stored against the
// original sparse entries (CSR), never densified.
//
// With mean = E_u, x = sum_i u_i ||p_i - mean||, the lifted point for p_i is
//   q_i = (p_i - mean, x) / ||(p_i - mean, x)||
// with weight s_i = u_i ||(p_i - mean, x)|| / v, v = sum_j u_j ||(p_j - mean, x)||.
// Then sum_i s_i q_i = (0, ..., 0, x/v) exactly; the descent runs over
// h_i = q_i - (0, ..., 0, x/v), whose weighted sum is the origin.
struct Embedding {
    DenseVector mean;   // E_u over coordinates 0..dim-1
    std::size_t dim = 0;
    double x = 0.0;
    double v = 0.0;

    std::vector<double> aug_norm;       // ||(p_i - mean, x)|| per point
    Distribution s;                     // simplex weights of the q_i
    std::vector<std::size_t> source_index;

    // CSR copy of the input points (indices within 0..dim-1).
    std::vector<std::size_t> offsets;   // size() + 1 entries
    std::vector<std::uint64_t> idx;
    std::vector<double> val;

    std::size_t size() const { return aug_norm.size(); }
    double shift_last() const { return x / v; }   // last coordinate of the shift

    // ||h_i||^2, derivable in closed form from aug_norm and x/v.
    double h_norm_sq(std::size_t i) const {
        double r = shift_last();
        return 1.0 - 2.0 * r * (x / aug_norm[i]) + r * r;
    }

    // h_i densified over dim+1 coordinates (diagnostic/test path, O(dim)).
    DenseVector h_dense(std::size_t i) const;
};

// Returns nullopt when the weighted points all coincide with their mean,
// i.e. x <= degenerate_tol * max_i ||p_i||.
std::optional<Embedding> embed(const WeightedPointSet& P, double degenerate_tol = 1e-12);

// Result of the min-norm descent over conv{h_i}.
struct MinNormResult {
    std::vector<std::size_t> picked;   // embedded indices, ascending, distinct
    Distribution wprime;               // convex weights over picked
    DenseVector c;                     // final iterate, dim+1 coordinates
    std::vector<double> c_norms;       // ||c_t|| after every committed step
    std::size_t iterations = 0;        // selection steps actually taken
};

// Frank-Wolfe descent toward the origin over the convex hull of the h_i.
// Starts from the point of largest augmented norm, runs at most beta
// selection steps with exact line search, and keeps the convex-combination
// bookkeeping so that c == sum_k wprime_k h_picked[k].
//
// ||c|| is non-increasing step to step; a step that cannot reduce it (the
// gap is <= 0, or the reduction is below float resolution) terminates the
// descent. Stops early once ||c||^2 <= stop_tol^2.
MinNormResult fw_min_norm(const Embedding& emb, std::size_t beta,
                          SelectionRule rule = SelectionRule::LinearOracle,
                          double stop_tol = 1e-12);

// Converts convex weights over lifted points back to simplex weights over
// the corresponding input points: w''_k = v * wprime_k / aug_norm(picked_k),
// then w = w'' / sum(w''). Throws NumericalFailure if sum(w'') <= 0.
Distribution back_transform(const Embedding& emb,
                            const std::vector<std::size_t>& picked,
                            const Distribution& wprime);

// A small weighted subset of the input whose weighted mean approximates
// the input's weighted mean.
struct Coreset {
    std::vector<SparseVector> points;       // verbatim input vectors
    std::vector<std::size_t> source_indices;
    Distribution w;
    std::uint64_t represented_count = 0;    // raw stream points summarized
    double represented_weight = 0.0;        // pre-normalization input mass

    std::size_t size() const { return points.size(); }
    // Scalar footprint used for equal-space comparisons: nnz + 2 per point.
    std::size_t stored_scalars() const;
};

// sum_k w_k p_k.
DenseVector estimate_mean(const Coreset& c);
// represented_weight * estimate_mean.
DenseVector estimate_sum(const Coreset& c);

// Builds a coreset of at most params.beta + 1 points for P's weighted mean.
// Inputs of at most beta + 1 points, and inputs with zero spread, are
// returned exactly (the zero-spread case as one representative point).
// represented_count / represented_weight describe how many raw points and
// how much pre-normalization mass P itself stands for; pass the defaults
// when P is the raw input rather than a merge of summaries.
Coreset build_coreset(const WeightedPointSet& P, const CoresetParams& params,
                      std::uint64_t represented_count, double represented_weight,
                      SelectionRule rule = SelectionRule::LinearOracle);

// Raw input: represented_count = |P|, represented_weight = 1.
Coreset build_coreset(const WeightedPointSet& P, const CoresetParams& params,
                      SelectionRule rule = SelectionRule::LinearOracle);

// Unweighted input: uniform distribution, mass = point count, so that
// estimate_sum reconstructs the plain sum of the inputs.
Coreset build_coreset(const std::vector<SparseVector>& points, const CoresetParams& params,
                      SelectionRule rule = SelectionRule::LinearOracle);

} // namespace vecsum
