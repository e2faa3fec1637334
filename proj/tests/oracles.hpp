#pragma once

// Test-side reference implementations. Everything here recomputes results
// from first principles in extended precision, independently of the library
// code under test (only the plain data types are shared).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vecsum/coreset.hpp"
#include "vecsum/vectors.hpp"

namespace oracle {

using vecsum::DenseVector;
using vecsum::Distribution;
using vecsum::SparseVector;
using vecsum::WeightedPointSet;

// Compensated accumulation in long double.
struct Acc {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(long double x) {
        long double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    long double value() const { return sum + comp; }
};

inline std::size_t max_dim(const std::vector<SparseVector>& points) {
    std::size_t d = 0;
    for (const auto& p : points) {
        d = std::max<std::size_t>(d, p.dim_bound());
    }
    return d;
}

inline std::vector<long double> densify_ld(const SparseVector& p, std::size_t d) {
    std::vector<long double> out(d, 0.0L);
    for (const auto& [idx, val] : p.entries) out[idx] = val;
    return out;
}

// Weighted mean by direct per-coordinate compensated summation.
inline DenseVector exact_mean(const std::vector<SparseVector>& points,
                              const std::vector<double>& weights) {
    std::size_t d = max_dim(points);
    std::vector<Acc> acc(d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (const auto& [idx, val] : points[i].entries) {
            acc[idx].add(static_cast<long double>(weights[i]) * val);
        }
    }
    DenseVector out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<double>(acc[j].value());
    return out;
}

inline DenseVector exact_mean(const WeightedPointSet& P) {
    return exact_mean(P.points, P.u.weights);
}

// Plain (unit-weight) sum of a point list.
inline DenseVector exact_sum(const std::vector<SparseVector>& points) {
    std::size_t d = max_dim(points);
    std::vector<Acc> acc(d);
    for (const auto& p : points) {
        for (const auto& [idx, val] : p.entries) acc[idx].add(val);
    }
    DenseVector out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<double>(acc[j].value());
    return out;
}

// sum_i u_i ||p_i - mean||^2 by full densification per point.
inline double exact_variance(const std::vector<SparseVector>& points,
                             const std::vector<double>& weights,
                             const DenseVector& mean) {
    std::size_t d = std::max(max_dim(points), mean.size());
    Acc acc;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<long double> dense = densify_ld(points[i], d);
        Acc dist;
        for (std::size_t j = 0; j < d; ++j) {
            long double m = j < mean.size() ? mean[j] : 0.0L;
            long double diff = dense[j] - m;
            dist.add(diff * diff);
        }
        acc.add(static_cast<long double>(weights[i]) * dist.value());
    }
    return static_cast<double>(acc.value());
}

inline double exact_variance(const WeightedPointSet& P, const DenseVector& mean) {
    return exact_variance(P.points, P.u.weights, mean);
}

inline double l2_dist(const DenseVector& a, const DenseVector& b) {
    std::size_t d = std::max(a.size(), b.size());
    Acc acc;
    for (std::size_t j = 0; j < d; ++j) {
        long double av = j < a.size() ? a[j] : 0.0L;
        long double bv = j < b.size() ? b[j] : 0.0L;
        acc.add((av - bv) * (av - bv));
    }
    return std::sqrt(static_cast<double>(acc.value()));
}

inline double sq_dist(const DenseVector& a, const DenseVector& b) {
    double e = l2_dist(a, b);
    return e * e;
}

// ||a - b|| relative to max(1, ||b||).
inline double rel_err(const DenseVector& a, const DenseVector& b) {
    Acc nb;
    for (double x : b) nb.add(static_cast<long double>(x) * x);
    double scale = std::max(1.0, std::sqrt(static_cast<double>(nb.value())));
    return l2_dist(a, b) / scale;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Deterministic test-instance generation (independent of the library RNG).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform() {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return eng() % n; }
    double gauss() {
        // Box-Muller; one value per call keeps the sequence simple.
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * uniform());
    }
};

// Residual of the lift's defining identity: materializes every unit point
// from the embedding's own fields and checks that their weighted sum hits
// the known target on the last axis, all in extended precision.
inline double lift_residual(const vecsum::Embedding& emb) {
    std::size_t d = emb.dim;
    std::vector<Acc> acc(d + 1);
    for (std::size_t i = 0; i < emb.size(); ++i) {
        long double inv = 1.0L / emb.aug_norm[i];
        for (std::size_t k = 0; k < d; ++k) {
            acc[k].add(emb.s[i] * (-emb.mean[k] * inv));
        }
        for (std::size_t e = emb.offsets[i]; e < emb.offsets[i + 1]; ++e) {
            acc[emb.idx[e]].add(emb.s[i] * (emb.val[e] * inv));
        }
        acc[d].add(emb.s[i] * (emb.x * inv));
    }
    Acc resid;
    for (std::size_t k = 0; k < d; ++k) {
        resid.add(acc[k].value() * acc[k].value());
    }
    long double last = acc[d].value() - static_cast<long double>(emb.x) / emb.v;
    resid.add(last * last);
    return std::sqrt(static_cast<double>(resid.value()));
}

// Random sparse points: n points, dimension d, roughly `density` of the
// coordinates populated (at least one entry per point).
inline std::vector<SparseVector> random_points(Rng& rng, std::size_t n, std::size_t d,
                                               double density = 0.6) {
    std::vector<SparseVector> points(n);
    for (auto& p : points) {
        for (std::uint64_t j = 0; j < d; ++j) {
            if (rng.uniform() < density) {
                p.entries.emplace_back(j, rng.gauss());
            }
        }
        if (p.entries.empty()) {
            p.entries.emplace_back(rng.below(d), rng.gauss());
        }
    }
    return points;
}

// Random simplex weights; with zeros sprinkled in when allow_zero is set.
inline std::vector<double> random_weights(Rng& rng, std::size_t n, bool allow_zero = true) {
    std::vector<double> w(n);
    long double total = 0.0L;
    for (auto& x : w) {
        x = allow_zero && rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.05, 1.0);
        total += x;
    }
    if (total == 0.0L) {
        w[0] = 1.0;
        total = 1.0L;
    }
    for (auto& x : w) x = static_cast<double>(x / total);
    return w;
}

} // namespace oracle
