#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vecsum/errors.hpp"

namespace vecsum {

// Dense vector over coordinates 0..d-1. Dimension is discovered lazily;
// every operation treats missing trailing coordinates as zero.
using DenseVector = std::vector<double>;

// Sparse vector in canonical form: entries sorted by index, strictly
// increasing, no stored zeros. The logical dimension is unbounded.
struct SparseVector {
    std::vector<std::pair<std::uint64_t, double>> entries;

    std::size_t nnz() const { return entries.size(); }
    bool empty() const { return entries.empty(); }

    // 1 + largest stored index; 0 for the all-zero vector.
    std::uint64_t dim_bound() const {
        return entries.empty() ? 0 : entries.back().first + 1;
    }

    bool operator==(const SparseVector& o) const { return entries == o.entries; }
};

// Builds a canonical SparseVector from arbitrary pairs: duplicate indices
// are summed, exact zeros dropped, indices sorted.
// Throws InvalidIndex for negative indices, InvalidScalar for non-finite values.
SparseVector sparse_from_pairs(const std::vector<std::pair<long long, double>>& pairs);

// Densifies v into a vector of length max(v.dim_bound(), min_dim).
DenseVector densify(const SparseVector& v, std::size_t min_dim = 0);

// Point weights on the unit simplex: non-negative, summing to 1 within 1e-9.
struct Distribution {
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    double operator[](std::size_t i) const { return weights[i]; }

    // Validates the simplex invariants, throwing InvalidDistribution.
    static Distribution validated(std::vector<double> w);
    // n equal weights 1/n.
    static Distribution uniform(std::size_t n);
    // Scales non-negative masses to sum exactly to 1. Returns the original
    // total mass through total_out when non-null.
    static Distribution normalized(std::vector<double> masses, double* total_out = nullptr);
};

inline constexpr double kSimplexTol = 1e-9;

// Points plus a distribution of equal length.
struct WeightedPointSet {
    std::vector<SparseVector> points;
    Distribution u;

    std::size_t size() const { return points.size(); }
};

// Validates |points| == |u| >= 1, throwing InvalidInput.
WeightedPointSet make_weighted(std::vector<SparseVector> points, Distribution u);

// acc += scale * v, growing acc to cover v's support.
// Throws InvalidScalar if scale is not finite.
void axpy(DenseVector& acc, double scale, const SparseVector& v);

// E_u = sum_i u_i p_i, accumulated with compensated (Neumaier) summation.
// Result length is 1 + the largest index present in P.
DenseVector weighted_mean(const WeightedPointSet& P);

// var_u = sum_i u_i ||p_i - mean||^2, clamped at zero.
// Precondition: mean == weighted_mean(P).
double weighted_variance(const WeightedPointSet& P, const DenseVector& mean);

// <v, dense> over v's support; coordinates beyond dense are zero.
double dot(const SparseVector& v, const DenseVector& dense);
double dot(const DenseVector& a, const DenseVector& b);
double norm_sq(const DenseVector& a);
double norm_sq(const SparseVector& v);

// ||p - dense||^2 over the union of supports. Differences are formed before
// squaring; deriving the distance from precomputed norms instead would cancel
// catastrophically for points near dense.
double dist_sq(const SparseVector& p, const DenseVector& dense);

// Running compensated sum (Neumaier's variant of Kahan summation).
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace vecsum
