#include "vecsum/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <tuple>
#include <unordered_map>

#include "vecsum/proximity.hpp"
#include "vecsum/rng.hpp"
#include "vecsum/sketch.hpp"

namespace vecsum {

namespace {

// Neumaier running sum in extended precision for the ground-truth oracles.
struct LongSum {
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

std::uint64_t cell_seed(std::uint64_t seed, std::size_t beta) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (beta + 1)));
    return g.next();
}

double l2_error(const DenseVector& a, const DenseVector& b) {
    std::size_t n = std::max(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double av = i < a.size() ? a[i] : 0.0;
        double bv = i < b.size() ? b[i] : 0.0;
        s += (av - bv) * (av - bv);
    }
    return std::sqrt(s);
}

} // namespace

WeightedPointSet gen_gaussian(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0) {
        throw InvalidConfig("gaussian generator needs n >= 1 and d >= 1");
    }
    GaussianGen g(seed);
    std::vector<SparseVector> points(n);
    for (auto& p : points) {
        p.entries.reserve(d);
        for (std::size_t j = 0; j < d; ++j) {
            double v = g.next();
            if (v != 0.0) p.entries.emplace_back(j, v);
        }
    }
    return WeightedPointSet{std::move(points), Distribution::uniform(n)};
}

WeightedPointSet gen_identity_rows(std::size_t n) {
    if (n == 0) {
        throw InvalidConfig("identity generator needs n >= 1");
    }
    std::vector<SparseVector> points(n);
    for (std::size_t i = 0; i < n; ++i) {
        points[i].entries.emplace_back(i, 1.0);
    }
    return WeightedPointSet{std::move(points), Distribution::uniform(n)};
}

WeightedPointSet gen_sparse_gaussian(std::size_t n, std::size_t d, std::size_t s,
                                     double mu, double sigma, std::uint64_t seed) {
    if (n == 0 || d == 0 || s == 0) {
        throw InvalidConfig("sparse gaussian generator needs n, d, s >= 1");
    }
    s = std::min(s, d);
    GaussianGen g(seed);
    std::vector<SparseVector> points(n);
    std::vector<std::uint64_t> coords;
    for (auto& p : points) {
        coords.clear();
        while (coords.size() < s) {
            std::uint64_t c = g.below(d);
            if (std::find(coords.begin(), coords.end(), c) == coords.end()) {
                coords.push_back(c);
            }
        }
        std::sort(coords.begin(), coords.end());
        p.entries.reserve(s);
        for (std::uint64_t c : coords) {
            double v = g.next(mu, sigma);
            if (v != 0.0) p.entries.emplace_back(c, v);
        }
    }
    return WeightedPointSet{std::move(points), Distribution::uniform(n)};
}

WeightedPointSet gen_from_gps_file(const std::string& path, double scale) {
    std::vector<LocationRecord> records = parse_gps_file(path);
    if (records.empty()) {
        throw InvalidInput("gps file has no records: " + path);
    }

    // Pass 1: count row updates per user to find the busiest row.
    std::unordered_map<std::string, std::size_t> id_map;
    std::vector<std::uint64_t> counts;
    for (const auto& rec : records) {
        auto [it, inserted] = id_map.try_emplace(rec.id, counts.size());
        if (inserted) counts.push_back(0);
        std::size_t u = it->second;
        counts[u] += counts.size() - 1;
        for (std::size_t j = 0; j < counts.size(); ++j) {
            if (j != u) ++counts[j];
        }
    }
    std::size_t busiest = 0;
    for (std::size_t j = 1; j < counts.size(); ++j) {
        if (counts[j] > counts[busiest]) busiest = j;
    }
    if (counts[busiest] == 0) {
        throw InvalidInput("gps file has a single user, no proximity updates: " + path);
    }

    // Pass 2: replay positions and materialize only the busiest row.
    std::unordered_map<std::string, std::size_t> ids2;
    std::vector<std::array<double, 2>> pos;
    std::vector<SparseVector> points;
    points.reserve(counts[busiest]);
    auto emit = [&](std::size_t coord, double value) {
        SparseVector v;
        if (value > 0.0) v.entries.emplace_back(coord, value);
        points.push_back(std::move(v));
    };
    for (const auto& rec : records) {
        auto [it, inserted] = ids2.try_emplace(rec.id, pos.size());
        if (inserted) pos.push_back({0.0, 0.0});
        std::size_t u = it->second;
        pos[u] = {rec.lon, rec.lat};
        for (std::size_t j = 0; j < pos.size(); ++j) {
            if (j == u) continue;
            if (u == busiest) {
                emit(j, prox(pos[u], pos[j], scale));
            } else if (j == busiest) {
                emit(u, prox(pos[u], pos[j], scale));
            }
        }
    }
    Distribution u = Distribution::uniform(points.size());
    return WeightedPointSet{std::move(points), std::move(u)};
}

WeightedPointSet gen_from_edge_file(const std::string& path) {
    std::vector<Edge> edges = parse_edge_file(path);
    if (edges.empty()) {
        throw InvalidInput("edge file has no edges: " + path);
    }
    std::unordered_map<std::string, std::uint64_t> id_map;
    auto intern = [&](const std::string& id) {
        return id_map.try_emplace(id, id_map.size()).first->second;
    };
    std::vector<SparseVector> points;
    points.reserve(2 * edges.size());
    for (const auto& e : edges) {
        std::uint64_t a = intern(e.src);
        std::uint64_t b = intern(e.dst);
        SparseVector va, vb;
        va.entries.emplace_back(a, e.weight);
        vb.entries.emplace_back(b, e.weight);
        points.push_back(std::move(va));
        points.push_back(std::move(vb));
    }
    Distribution u = Distribution::uniform(points.size());
    return WeightedPointSet{std::move(points), std::move(u)};
}

DenseVector brute_force_mean(const WeightedPointSet& P) {
    std::size_t dim = 0;
    for (const auto& p : P.points) dim = std::max<std::size_t>(dim, p.dim_bound());
    std::vector<LongSum> acc(dim);
    for (std::size_t i = 0; i < P.points.size(); ++i) {
        long double w = P.u[i];
        if (w == 0.0L) continue;
        for (const auto& [idx, val] : P.points[i].entries) {
            acc[idx].add(w * static_cast<long double>(val));
        }
    }
    DenseVector out(dim);
    for (std::size_t j = 0; j < dim; ++j) out[j] = static_cast<double>(acc[j].value());
    return out;
}

double brute_force_variance(const WeightedPointSet& P, const DenseVector& mean) {
    LongSum acc;
    for (std::size_t i = 0; i < P.points.size(); ++i) {
        long double w = P.u[i];
        if (w == 0.0L) continue;
        const auto& e = P.points[i].entries;
        LongSum d2;
        std::size_t k = 0;
        for (std::size_t j = 0; j < mean.size(); ++j) {
            long double pj = 0.0L;
            if (k < e.size() && e[k].first == j) pj = e[k++].second;
            long double diff = pj - mean[j];
            d2.add(diff * diff);
        }
        for (; k < e.size(); ++k) {
            d2.add(static_cast<long double>(e[k].second) * e[k].second);
        }
        acc.add(w * d2.value());
    }
    return std::max(0.0, static_cast<double>(acc.value()));
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Coreset: return "coreset";
        case Method::UniformSample: return "uniform-sample";
        case Method::CountMin: return "count-min";
        case Method::CountSketch: return "count-sketch";
    }
    return "?";
}

namespace {

WeightedPointSet make_synthetic(const ExperimentConfig& cfg, std::uint64_t seed) {
    switch (cfg.gen) {
        case Generator::Gaussian:
            return gen_gaussian(cfg.n, cfg.d, seed);
        case Generator::IdentityRows:
            return gen_identity_rows(cfg.n);
        case Generator::SparseGaussian:
            return gen_sparse_gaussian(cfg.n, cfg.d, cfg.sparsity, cfg.mu, cfg.sigma, seed);
        default:
            throw InvalidConfig("file-backed generator reached the synthetic path");
    }
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    GaussianGen g(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(g.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.betas.empty()) throw InvalidConfig("experiment needs at least one beta");
    if (cfg.seeds.empty()) throw InvalidConfig("experiment needs at least one seed");
    if (cfg.methods.empty()) throw InvalidConfig("experiment needs at least one method");
    for (std::size_t beta : cfg.betas) {
        if (beta < 1) throw InvalidConfig("beta must be >= 1");
    }
    if (cfg.sketch_depth < 1) throw InvalidConfig("sketch depth must be >= 1");

    const bool file_backed =
        cfg.gen == Generator::GpsFile || cfg.gen == Generator::EdgeFile;
    WeightedPointSet data_store;
    if (file_backed) {
        data_store = cfg.gen == Generator::GpsFile ? gen_from_gps_file(cfg.path)
                                                   : gen_from_edge_file(cfg.path);
    }

    std::vector<ResultRow> rows;
    for (std::uint64_t seed : cfg.seeds) {
        if (!file_backed) data_store = make_synthetic(cfg, seed);
        const WeightedPointSet& data = data_store;
        const DenseVector exact = brute_force_mean(data);
        const double var = brute_force_variance(data, exact);
        const std::size_t n = data.points.size();
        const std::size_t dims = exact.size();

        auto emit = [&](Method m, std::size_t beta, double err, double ms,
                        std::size_t stored) {
            ResultRow r;
            r.method = method_name(m);
            r.n = n;
            r.d = dims;
            r.beta = beta;
            r.seed = seed;
            r.error = err;
            r.sq_error_over_var = var > 0.0 ? err * err / var : 0.0;
            r.runtime_ms = ms;
            r.stored_scalars = stored;
            rows.push_back(std::move(r));
        };

        for (std::size_t beta : cfg.betas) {
            CoresetParams params;
            params.beta = beta;

            // The coreset fixes the scalar budget every other method runs at.
            Timer tc;
            Coreset cs = build_coreset(data, params, n, 1.0, cfg.rule);
            double coreset_ms = tc.ms();
            std::size_t budget = cs.stored_scalars();

            for (Method m : cfg.methods) {
                switch (m) {
                    case Method::Coreset: {
                        emit(m, beta, l2_error(estimate_mean(cs), exact), coreset_ms,
                             budget);
                        break;
                    }
                    case Method::UniformSample: {
                        Timer t;
                        // Control at the exact size the coreset ended up with.
                        std::size_t k = std::min(cs.size(), n);
                        auto idx = sample_indices(n, k, cell_seed(seed, beta));
                        std::vector<SparseVector> pts;
                        std::vector<double> w;
                        pts.reserve(k);
                        w.reserve(k);
                        for (std::size_t i : idx) {
                            pts.push_back(data.points[i]);
                            w.push_back(data.u[i]);
                        }
                        Coreset sub;
                        sub.points = std::move(pts);
                        sub.w = Distribution::normalized(std::move(w));
                        sub.represented_count = n;
                        sub.represented_weight = 1.0;
                        double err = l2_error(estimate_mean(sub), exact);
                        emit(m, beta, err, t.ms(), sub.stored_scalars());
                        break;
                    }
                    case Method::CountMin: {
                        Timer t;
                        // Signed streams split across a positive and a negative
                        // sketch, each on half the budget.
                        std::size_t width = std::max<std::size_t>(
                            1, (budget / 2 + cfg.sketch_depth / 2) / cfg.sketch_depth);
                        SplitMix64 g(cell_seed(seed, beta));
                        CountMin pos(cfg.sketch_depth, width, g.next());
                        CountMin neg(cfg.sketch_depth, width, g.next());
                        for (std::size_t i = 0; i < n; ++i) {
                            double u = data.u[i];
                            if (u == 0.0) continue;
                            for (const auto& [idx, val] : data.points[i].entries) {
                                double x = u * val;
                                if (x >= 0.0) {
                                    pos.update(idx, x);
                                } else {
                                    neg.update(idx, -x);
                                }
                            }
                        }
                        DenseVector est(dims);
                        for (std::size_t j = 0; j < dims; ++j) {
                            est[j] = pos.query(j) - neg.query(j);
                        }
                        emit(m, beta, l2_error(est, exact), t.ms(),
                             pos.cell_count() + neg.cell_count());
                        break;
                    }
                    case Method::CountSketch: {
                        Timer t;
                        std::size_t width = std::max<std::size_t>(
                            1, (budget + cfg.sketch_depth / 2) / cfg.sketch_depth);
                        SplitMix64 g(cell_seed(seed, beta));
                        g.next();
                        g.next();
                        CountSketch sk(cfg.sketch_depth, width, g.next());
                        for (std::size_t i = 0; i < n; ++i) {
                            double u = data.u[i];
                            if (u == 0.0) continue;
                            for (const auto& [idx, val] : data.points[i].entries) {
                                sk.update(idx, u * val);
                            }
                        }
                        DenseVector est(dims);
                        for (std::size_t j = 0; j < dims; ++j) est[j] = sk.query(j);
                        emit(m, beta, l2_error(est, exact), t.ms(), sk.cell_count());
                        break;
                    }
                }
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.method, a.beta, a.seed) < std::tie(b.method, b.beta, b.seed);
    });
    return rows;
}

std::string csv_header() {
    return "method,n,d,beta,seed,error,sq_error_over_var,runtime_ms,stored_scalars";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << csv_header() << '\n';
    char buf[64];
    for (const ResultRow& r : rows) {
        out << r.method << ',' << r.n << ',' << r.d << ',' << r.beta << ',' << r.seed
            << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", r.error);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", r.sq_error_over_var);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.3f", r.runtime_ms);
        out << buf << ',' << r.stored_scalars << '\n';
    }
}

} // namespace vecsum
