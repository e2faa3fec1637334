#include "vecsum/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vecsum {

namespace {

void check_params(const CoresetParams& params) {
    if (params.beta < 1) {
        throw InvalidConfig("coreset beta must be >= 1");
    }
    if (!(params.alpha > 0.0)) {
        throw InvalidConfig("coreset alpha must be positive");
    }
}

void check_set(const WeightedPointSet& P) {
    if (P.points.empty() || P.points.size() != P.u.size()) {
        throw InvalidInput("weighted point set is empty or has mismatched weights");
    }
}

} // namespace

DenseVector Embedding::h_dense(std::size_t i) const {
    DenseVector out(dim + 1, 0.0);
    double inv = 1.0 / aug_norm[i];
    for (std::size_t k = 0; k < dim; ++k) out[k] = -mean[k] * inv;
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
        out[idx[e]] += val[e] * inv;
    }
    out[dim] = x * inv - shift_last();
    return out;
}

std::optional<Embedding> embed(const WeightedPointSet& P, double degenerate_tol) {
    check_set(P);
    const std::size_t n = P.points.size();

    Embedding emb;
    emb.mean = weighted_mean(P);
    emb.dim = emb.mean.size();

    std::vector<double> dist(n);
    double max_norm = 0.0;
    NeumaierSum x_acc;
    for (std::size_t i = 0; i < n; ++i) {
        dist[i] = std::sqrt(dist_sq(P.points[i], emb.mean));
        x_acc.add(P.u[i] * dist[i]);
        max_norm = std::max(max_norm, std::sqrt(norm_sq(P.points[i])));
    }
    emb.x = x_acc.value();
    if (emb.x <= degenerate_tol * max_norm) {
        return std::nullopt;
    }

    emb.aug_norm.resize(n);
    std::vector<double> masses(n);
    for (std::size_t i = 0; i < n; ++i) {
        emb.aug_norm[i] = std::hypot(dist[i], emb.x);
        masses[i] = P.u[i] * emb.aug_norm[i];
    }
    emb.s = Distribution::normalized(std::move(masses), &emb.v);

    emb.source_index.resize(n);
    std::iota(emb.source_index.begin(), emb.source_index.end(), std::size_t{0});

    emb.offsets.reserve(n + 1);
    emb.offsets.push_back(0);
    std::size_t total = 0;
    for (const auto& p : P.points) total += p.nnz();
    emb.idx.reserve(total);
    emb.val.reserve(total);
    for (const auto& p : P.points) {
        for (const auto& [i, value] : p.entries) {
            emb.idx.push_back(i);
            emb.val.push_back(value);
        }
        emb.offsets.push_back(emb.idx.size());
    }
    return emb;
}

MinNormResult fw_min_norm(const Embedding& emb, std::size_t beta,
                          SelectionRule rule, double stop_tol) {
    if (emb.size() == 0) {
        throw InvalidInput("min-norm descent over an empty embedding");
    }
    if (beta < 1) {
        throw InvalidConfig("min-norm budget beta must be >= 1");
    }
    const std::size_t n = emb.size();
    const std::size_t dim = emb.dim;

    std::vector<double> h_sq;
    if (rule == SelectionRule::Farthest) {
        h_sq.resize(n);
        for (std::size_t j = 0; j < n; ++j) h_sq[j] = emb.h_norm_sq(j);
    }

    // Start from the lift of largest augmented norm; ties keep the lowest index.
    std::size_t start = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (emb.aug_norm[j] > emb.aug_norm[start]) start = j;
    }

    DenseVector c = emb.h_dense(start);
    double c_sq = norm_sq(c);
    std::vector<std::pair<std::size_t, double>> weight; // (embedded index, mass)
    weight.emplace_back(start, 1.0);

    MinNormResult res;
    res.c_norms.push_back(std::sqrt(c_sq));

    DenseVector h(dim + 1);
    DenseVector next(dim + 1);
    const double shift = emb.shift_last();
    const double stop_sq = stop_tol * stop_tol;

    for (std::size_t t = 0; t < beta; ++t) {
        if (c_sq <= stop_sq) break;

        const double eu_dot = dot(emb.mean, c);
        const double c_last = c[dim];
        const double tail = emb.x * c_last - eu_dot;
        const double* cp = c.data();

        // <q_j, c> per point, scanned over the CSR support only.
        std::size_t pick = 0;
        double best = 0.0;
        double pick_qdot = 0.0;
        bool first = true;
        for (std::size_t j = 0; j < n; ++j) {
            double pdot = 0.0;
            for (std::size_t e = emb.offsets[j]; e < emb.offsets[j + 1]; ++e) {
                pdot += emb.val[e] * cp[emb.idx[e]];
            }
            double qdot = (pdot + tail) / emb.aug_norm[j];
            double score = rule == SelectionRule::LinearOracle ? qdot
                                                               : 2.0 * qdot - h_sq[j];
            if (first || score < best) {
                first = false;
                best = score;
                pick = j;
                pick_qdot = qdot;
            }
        }

        const double ch = pick_qdot - shift * c_last;         // <c, h_pick>
        const double hh = emb.h_norm_sq(pick);                // ||h_pick||^2
        const double gap = c_sq - ch;                         // <c, c - h_pick>
        const double den = c_sq - 2.0 * ch + hh;              // ||c - h_pick||^2
        if (gap <= 0.0 || den <= 0.0) break;
        const double gamma = std::min(1.0, gap / den);

        double inv = 1.0 / emb.aug_norm[pick];
        for (std::size_t k = 0; k < dim; ++k) h[k] = -emb.mean[k] * inv;
        for (std::size_t e = emb.offsets[pick]; e < emb.offsets[pick + 1]; ++e) {
            h[emb.idx[e]] += emb.val[e] * inv;
        }
        h[dim] = emb.x * inv - shift;

        for (std::size_t k = 0; k <= dim; ++k) {
            next[k] = (1.0 - gamma) * c[k] + gamma * h[k];
        }
        double next_sq = norm_sq(next);
        // Exact line search cannot increase the norm; if float arithmetic
        // produced no reduction there is no progress left to make.
        if (next_sq >= c_sq) break;

        c.swap(next);
        c_sq = next_sq;
        for (auto& [j, m] : weight) m *= 1.0 - gamma;
        auto it = std::find_if(weight.begin(), weight.end(),
                               [&](const auto& e) { return e.first == pick; });
        if (it == weight.end()) {
            weight.emplace_back(pick, gamma);
        } else {
            it->second += gamma;
        }
        res.c_norms.push_back(std::sqrt(c_sq));
        ++res.iterations;
    }

    std::erase_if(weight, [](const auto& e) { return e.second == 0.0; });
    std::sort(weight.begin(), weight.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<double> masses;
    masses.reserve(weight.size());
    res.picked.reserve(weight.size());
    for (const auto& [j, m] : weight) {
        res.picked.push_back(j);
        masses.push_back(m);
    }
    res.wprime = Distribution::normalized(std::move(masses));
    res.c = std::move(c);
    return res;
}

Distribution back_transform(const Embedding& emb,
                            const std::vector<std::size_t>& picked,
                            const Distribution& wprime) {
    if (picked.size() != wprime.size() || picked.empty()) {
        throw InvalidInput("picked set and its weights have mismatched sizes");
    }
    std::vector<double> w(picked.size());
    NeumaierSum total;
    for (std::size_t k = 0; k < picked.size(); ++k) {
        w[k] = emb.v * wprime[k] / emb.aug_norm[picked[k]];
        total.add(w[k]);
    }
    double t = total.value();
    if (!(t > 0.0)) {
        throw NumericalFailure("back-transformed weights sum to a non-positive value");
    }
    for (double& x : w) x /= t;
    Distribution d;
    d.weights = std::move(w);
    return d;
}

std::size_t Coreset::stored_scalars() const {
    std::size_t total = 0;
    for (const auto& p : points) total += p.nnz() + 2;
    return total;
}

DenseVector estimate_mean(const Coreset& c) {
    if (c.points.empty()) return {};
    return weighted_mean(WeightedPointSet{c.points, c.w});
}

DenseVector estimate_sum(const Coreset& c) {
    DenseVector m = estimate_mean(c);
    for (double& x : m) x *= c.represented_weight;
    return m;
}

Coreset build_coreset(const WeightedPointSet& P, const CoresetParams& params,
                      std::uint64_t represented_count, double represented_weight,
                      SelectionRule rule) {
    check_params(params);
    check_set(P);

    Coreset out;
    out.represented_count = represented_count;
    out.represented_weight = represented_weight;

    if (P.points.size() <= params.beta + 1) {
        out.points = P.points;
        out.source_indices.resize(P.points.size());
        std::iota(out.source_indices.begin(), out.source_indices.end(), std::size_t{0});
        out.w = P.u;
        return out;
    }

    auto emb = embed(P, params.degenerate_tol);
    if (!emb) {
        // Zero spread: any positively weighted point is the mean.
        std::size_t rep = 0;
        while (rep < P.points.size() && P.u[rep] == 0.0) ++rep;
        out.points = {P.points[rep]};
        out.source_indices = {rep};
        out.w = Distribution::uniform(1);
        return out;
    }

    MinNormResult fw = fw_min_norm(*emb, params.beta, rule, params.degenerate_tol);
    out.w = back_transform(*emb, fw.picked, fw.wprime);
    out.points.reserve(fw.picked.size());
    out.source_indices.reserve(fw.picked.size());
    for (std::size_t j : fw.picked) {
        out.points.push_back(P.points[emb->source_index[j]]);
        out.source_indices.push_back(emb->source_index[j]);
    }
    return out;
}

Coreset build_coreset(const WeightedPointSet& P, const CoresetParams& params,
                      SelectionRule rule) {
    return build_coreset(P, params, P.points.size(), 1.0, rule);
}

Coreset build_coreset(const std::vector<SparseVector>& points, const CoresetParams& params,
                      SelectionRule rule) {
    if (points.empty()) {
        throw InvalidInput("cannot summarize an empty point list");
    }
    WeightedPointSet P{points, Distribution::uniform(points.size())};
    return build_coreset(P, params, points.size(), static_cast<double>(points.size()), rule);
}

} // namespace vecsum
