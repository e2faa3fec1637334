#include "vecsum/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vecsum {

SparseVector sparse_from_pairs(const std::vector<std::pair<long long, double>>& pairs) {
    std::vector<std::pair<std::uint64_t, double>> tmp;
    tmp.reserve(pairs.size());
    for (const auto& [idx, val] : pairs) {
        if (idx < 0) {
            throw InvalidIndex("sparse entry index is negative: " + std::to_string(idx));
        }
        if (!std::isfinite(val)) {
            throw InvalidScalar("sparse entry value is not finite at index " + std::to_string(idx));
        }
        tmp.emplace_back(static_cast<std::uint64_t>(idx), val);
    }
    std::stable_sort(tmp.begin(), tmp.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    SparseVector out;
    out.entries.reserve(tmp.size());
    for (const auto& [idx, val] : tmp) {
        if (!out.entries.empty() && out.entries.back().first == idx) {
            out.entries.back().second += val;
        } else {
            out.entries.emplace_back(idx, val);
        }
    }
    std::erase_if(out.entries, [](const auto& e) { return e.second == 0.0; });
    return out;
}

DenseVector densify(const SparseVector& v, std::size_t min_dim) {
    DenseVector out(std::max<std::size_t>(min_dim, v.dim_bound()), 0.0);
    for (const auto& [idx, val] : v.entries) out[idx] = val;
    return out;
}

Distribution Distribution::validated(std::vector<double> w) {
    NeumaierSum total;
    for (double x : w) {
        if (!(x >= 0.0)) {
            throw InvalidDistribution("weight is negative or NaN");
        }
        total.add(x);
    }
    if (std::abs(total.value() - 1.0) > kSimplexTol) {
        throw InvalidDistribution("weights sum to " + std::to_string(total.value()) +
                                  ", expected 1 within 1e-9");
    }
    Distribution d;
    d.weights = std::move(w);
    return d;
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw InvalidDistribution("cannot build a distribution over zero points");
    Distribution d;
    d.weights.assign(n, 1.0 / static_cast<double>(n));
    return d;
}

Distribution Distribution::normalized(std::vector<double> masses, double* total_out) {
    NeumaierSum total;
    for (double x : masses) {
        if (!(x >= 0.0)) {
            throw InvalidDistribution("mass is negative or NaN");
        }
        total.add(x);
    }
    double t = total.value();
    if (!(t > 0.0)) {
        throw InvalidDistribution("total mass must be positive");
    }
    for (double& x : masses) x /= t;
    if (total_out) *total_out = t;
    Distribution d;
    d.weights = std::move(masses);
    return d;
}

WeightedPointSet make_weighted(std::vector<SparseVector> points, Distribution u) {
    if (points.empty()) {
        throw InvalidInput("weighted point set needs at least one point");
    }
    if (points.size() != u.size()) {
        throw InvalidInput("point count " + std::to_string(points.size()) +
                           " does not match weight count " + std::to_string(u.size()));
    }
    return WeightedPointSet{std::move(points), std::move(u)};
}

void axpy(DenseVector& acc, double scale, const SparseVector& v) {
    if (!std::isfinite(scale)) {
        throw InvalidScalar("axpy scale is not finite");
    }
    if (scale == 0.0 || v.empty()) return;
    if (acc.size() < v.dim_bound()) acc.resize(v.dim_bound(), 0.0);
    for (const auto& [idx, val] : v.entries) acc[idx] += scale * val;
}

DenseVector weighted_mean(const WeightedPointSet& P) {
    std::size_t dim = 0;
    for (const auto& p : P.points) {
        dim = std::max<std::size_t>(dim, p.dim_bound());
    }
    std::vector<NeumaierSum> acc(dim);
    for (std::size_t i = 0; i < P.points.size(); ++i) {
        double w = P.u[i];
        if (w == 0.0) continue;
        for (const auto& [idx, val] : P.points[i].entries) {
            acc[idx].add(w * val);
        }
    }
    DenseVector out(dim);
    for (std::size_t j = 0; j < dim; ++j) out[j] = acc[j].value();
    return out;
}

double weighted_variance(const WeightedPointSet& P, const DenseVector& mean) {
    NeumaierSum acc;
    for (std::size_t i = 0; i < P.points.size(); ++i) {
        double w = P.u[i];
        if (w == 0.0) continue;
        acc.add(w * dist_sq(P.points[i], mean));
    }
    return std::max(0.0, acc.value());
}

double dot(const SparseVector& v, const DenseVector& dense) {
    double s = 0.0;
    for (const auto& [idx, val] : v.entries) {
        if (idx >= dense.size()) break;
        s += val * dense[idx];
    }
    return s;
}

double dot(const DenseVector& a, const DenseVector& b) {
    std::size_t n = std::min(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(const DenseVector& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s;
}

double norm_sq(const SparseVector& v) {
    double s = 0.0;
    for (const auto& [idx, val] : v.entries) s += val * val;
    return s;
}

double dist_sq(const SparseVector& p, const DenseVector& dense) {
    double s = 0.0;
    std::size_t k = 0;
    const auto& e = p.entries;
    for (std::size_t j = 0; j < dense.size(); ++j) {
        double pj = 0.0;
        if (k < e.size() && e[k].first == j) pj = e[k++].second;
        double diff = pj - dense[j];
        s += diff * diff;
    }
    for (; k < e.size(); ++k) s += e[k].second * e[k].second;
    return s;
}

} // namespace vecsum
