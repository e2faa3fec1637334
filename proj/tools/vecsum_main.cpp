#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "vecsum/bench.hpp"
#include "vecsum/cluster.hpp"
#include "vecsum/coreset.hpp"
#include "vecsum/proximity.hpp"
#include "vecsum/stream.hpp"

namespace {

using nlohmann::json;

// One point per line: either a JSON array of [index, value] pairs, or
// whitespace-separated dense coordinate values.
vecsum::SparseVector parse_point_line(const std::string& line, std::size_t lineno) {
    std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '[') {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_array()) {
            throw vecsum::InvalidInput("bad point on line " + std::to_string(lineno));
        }
        std::vector<std::pair<long long, double>> pairs;
        pairs.reserve(j.size());
        for (const auto& e : j) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw vecsum::InvalidInput("bad entry pair on line " + std::to_string(lineno));
            }
            pairs.emplace_back(e[0].get<long long>(), e[1].get<double>());
        }
        return vecsum::sparse_from_pairs(pairs);
    }
    std::istringstream ss(line);
    std::vector<std::pair<long long, double>> pairs;
    double v;
    long long j = 0;
    while (ss >> v) pairs.emplace_back(j++, v);
    if (!ss.eof()) {
        throw vecsum::InvalidInput("bad dense point on line " + std::to_string(lineno));
    }
    return vecsum::sparse_from_pairs(pairs);
}

template <typename F>
void for_each_point(std::istream& in, F&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        fn(parse_point_line(line, lineno));
    }
}

struct InputFile {
    std::istream& stream() { return file ? *file : std::cin; }
    std::unique_ptr<std::ifstream> file;
};

InputFile open_input(const std::string& path) {
    InputFile in;
    if (path != "-") {
        in.file = std::make_unique<std::ifstream>(path);
        if (!*in.file) throw vecsum::IoError("cannot open input file: " + path);
    }
    return in;
}

struct OutputFile {
    std::ostream& stream() { return file ? *file : std::cout; }
    std::unique_ptr<std::ofstream> file;
};

OutputFile open_output(const std::string& path) {
    OutputFile out;
    if (path != "-") {
        out.file = std::make_unique<std::ofstream>(path);
        if (!*out.file) throw vecsum::IoError("cannot open output file: " + path);
    }
    return out;
}

json sparse_pairs_json(const vecsum::DenseVector& dense) {
    json arr = json::array();
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i] != 0.0) arr.push_back(json::array({i, dense[i]}));
    }
    return arr;
}

json coreset_json(const vecsum::Coreset& c) {
    json points = json::array();
    for (const auto& p : c.points) {
        json entries = json::array();
        for (const auto& [idx, val] : p.entries) {
            entries.push_back(json::array({idx, val}));
        }
        points.push_back(std::move(entries));
    }
    json weights = json::array();
    for (double w : c.w.weights) weights.push_back(w);
    return json{{"points", std::move(points)},
                {"weights", std::move(weights)},
                {"represented_count", c.represented_count}};
}

json estimate_json(const vecsum::Coreset& c) {
    return json{{"count", c.represented_count},
                {"mean", sparse_pairs_json(vecsum::estimate_mean(c))}};
}

const std::map<std::string, vecsum::SelectionRule> kRules{
    {"linear", vecsum::SelectionRule::LinearOracle},
    {"farthest", vecsum::SelectionRule::Farthest},
};

const std::map<std::string, vecsum::Generator> kGenerators{
    {"gaussian", vecsum::Generator::Gaussian},
    {"identity-rows", vecsum::Generator::IdentityRows},
    {"sparse-gaussian", vecsum::Generator::SparseGaussian},
    {"gps-file", vecsum::Generator::GpsFile},
    {"edge-file", vecsum::Generator::EdgeFile},
};

const std::map<std::string, vecsum::Method> kMethods{
    {"coreset", vecsum::Method::Coreset},
    {"uniform-sample", vecsum::Method::UniformSample},
    {"count-min", vecsum::Method::CountMin},
    {"count-sketch", vecsum::Method::CountSketch},
};

std::size_t default_leaf(std::size_t leaf, std::size_t beta) {
    return leaf > 0 ? leaf : std::max<std::size_t>(256, 2 * (beta + 1));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming mean summaries for sparse vector streams"};
    app.require_subcommand(1);

    // --- coreset: summarize a file of points into a weighted subset.
    auto* cmd_coreset = app.add_subcommand(
        "coreset", "Summarize a point file into a weighted subset (JSON)");
    struct {
        std::string input = "-";
        std::string out = "-";
        std::size_t beta = 100;
        double alpha = 4.0;
        vecsum::SelectionRule rule = vecsum::SelectionRule::LinearOracle;
    } co;
    cmd_coreset->add_option("--input", co.input, "Point file, '-' for stdin");
    cmd_coreset->add_option("--out", co.out, "Output file, '-' for stdout");
    cmd_coreset->add_option("--beta", co.beta, "Iteration/sparsity budget");
    cmd_coreset->add_option("--alpha", co.alpha, "Error-bound constant");
    cmd_coreset->add_option("--rule", co.rule, "Vertex selection rule")
        ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
    cmd_coreset->callback([&] {
        auto in = open_input(co.input);
        std::vector<vecsum::SparseVector> points;
        for_each_point(in.stream(), [&](vecsum::SparseVector p) {
            points.push_back(std::move(p));
        });
        if (points.empty()) throw vecsum::InvalidInput("no points in input");
        vecsum::CoresetParams params;
        params.beta = co.beta;
        params.alpha = co.alpha;
        vecsum::Coreset c = vecsum::build_coreset(points, params, co.rule);
        auto out = open_output(co.out);
        out.stream() << coreset_json(c).dump() << '\n';
    });

    // --- stream: pipe points through a merge-and-reduce summary.
    auto* cmd_stream = app.add_subcommand(
        "stream", "Summarize a point stream, emitting periodic mean estimates");
    struct {
        std::string input = "-";
        std::string out = "-";
        std::size_t beta = 100;
        std::size_t leaf = 0;
        std::size_t every = 0;
        vecsum::SelectionRule rule = vecsum::SelectionRule::LinearOracle;
    } st;
    cmd_stream->add_option("--input", st.input, "Point file, '-' for stdin");
    cmd_stream->add_option("--out", st.out, "Output file, '-' for stdout");
    cmd_stream->add_option("--beta", st.beta, "Per-summary budget");
    cmd_stream->add_option("--leaf-size", st.leaf, "Leaf buffer size (default max(256, 2(beta+1)))");
    cmd_stream->add_option("--every", st.every, "Emit an estimate every N points (0: only final)");
    cmd_stream->add_option("--rule", st.rule, "Vertex selection rule")
        ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
    cmd_stream->callback([&] {
        vecsum::CoresetParams params;
        params.beta = st.beta;
        vecsum::StreamState state(params, default_leaf(st.leaf, st.beta), st.rule);
        auto in = open_input(st.input);
        auto out = open_output(st.out);
        for_each_point(in.stream(), [&](const vecsum::SparseVector& p) {
            state.insert(p);
            if (st.every > 0 && state.total_count() % st.every == 0) {
                out.stream() << estimate_json(state.finalize()).dump() << '\n';
            }
        });
        out.stream() << estimate_json(state.finalize()).dump() << '\n';
    });

    // --- bench: seeded experiments, CSV out.
    auto* cmd_bench = app.add_subcommand(
        "bench", "Run seeded error/space experiments and emit CSV");
    struct {
        vecsum::ExperimentConfig cfg;
        std::string out = "-";
    } be;
    cmd_bench->add_option("--gen", be.cfg.gen, "Data generator")
        ->transform(CLI::CheckedTransformer(kGenerators, CLI::ignore_case));
    cmd_bench->add_option("--n", be.cfg.n, "Points (synthetic generators)");
    cmd_bench->add_option("--d", be.cfg.d, "Dimension (synthetic generators)");
    cmd_bench->add_option("--sparsity", be.cfg.sparsity, "Non-zeros per sparse-gaussian point");
    cmd_bench->add_option("--mu", be.cfg.mu, "Sparse-gaussian value mean");
    cmd_bench->add_option("--sigma", be.cfg.sigma, "Sparse-gaussian value stddev");
    cmd_bench->add_option("--path", be.cfg.path, "Input file for gps-file/edge-file");
    cmd_bench->add_option("--betas", be.cfg.betas, "Budgets to sweep")
        ->delimiter(',')
        ->required();
    cmd_bench->add_option("--seeds", be.cfg.seeds, "Seeds to sweep")
        ->delimiter(',')
        ->required();
    cmd_bench->add_option("--methods", be.cfg.methods, "Methods to run")
        ->delimiter(',')
        ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
    cmd_bench->add_option("--leaf-size", be.cfg.leaf_size, "Streaming leaf size");
    cmd_bench->add_option("--rule", be.cfg.rule, "Vertex selection rule")
        ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
    cmd_bench->add_option("--depth", be.cfg.sketch_depth, "Sketch depth (rows)");
    cmd_bench->add_option("--out", be.out, "Output CSV file, '-' for stdout");
    cmd_bench->callback([&] {
        auto rows = vecsum::run_experiment(be.cfg);
        auto out = open_output(be.out);
        vecsum::write_csv(out.stream(), rows);
    });

    // --- proximity: per-user heavy hitters from gps traces or edge lists.
    auto* cmd_prox = app.add_subcommand(
        "proximity", "Summarize proximity rows and report heavy hitters (CSV)");
    struct {
        std::string input;
        std::string format = "gps";
        std::string user;
        std::string out = "-";
        std::size_t topk = 10;
        std::size_t beta = 30;
        std::size_t leaf = 64;
        double scale = 1.0;
        double min_prox = 0.0;
        vecsum::SelectionRule rule = vecsum::SelectionRule::LinearOracle;
    } px;
    cmd_prox->add_option("--input", px.input, "Records file")->required();
    cmd_prox->add_option("--format", px.format, "Input format")
        ->check(CLI::IsMember({"gps", "edges"}));
    cmd_prox->add_option("--user", px.user, "Only report this user's row");
    cmd_prox->add_option("--topk", px.topk, "Heavy hitters per user");
    cmd_prox->add_option("--beta", px.beta, "Per-row summary budget");
    cmd_prox->add_option("--leaf-size", px.leaf, "Per-row leaf size");
    cmd_prox->add_option("--scale", px.scale, "Distance scale factor");
    cmd_prox->add_option("--min-prox", px.min_prox, "Record proximities below this as zero");
    cmd_prox->add_option("--rule", px.rule, "Vertex selection rule")
        ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
    cmd_prox->add_option("--out", px.out, "Output CSV file, '-' for stdout");
    cmd_prox->callback([&] {
        vecsum::ProximityConfig cfg;
        cfg.params.beta = px.beta;
        cfg.leaf_size = px.leaf;
        cfg.scale = px.scale;
        cfg.min_prox = px.min_prox;
        cfg.rule = px.rule;
        vecsum::ProximityBook book(cfg);
        if (px.format == "gps") {
            for (const auto& rec : vecsum::parse_gps_file(px.input)) book.ingest(rec);
        } else {
            for (const auto& e : vecsum::parse_edge_file(px.input)) {
                book.ingest_edge(e.src, e.dst, e.weight);
            }
        }
        auto out = open_output(px.out);
        out.stream() << "user,neighbor,rank,estimate\n";
        char buf[64];
        auto report = [&](const std::string& user) {
            auto hh = book.heavy_hitters(user, px.topk);
            for (std::size_t r = 0; r < hh.size(); ++r) {
                std::snprintf(buf, sizeof(buf), "%.17g", hh[r].second);
                out.stream() << user << ',' << hh[r].first << ',' << r + 1 << ',' << buf
                             << '\n';
            }
        };
        if (!px.user.empty()) {
            report(px.user);
        } else {
            for (const auto& id : book.user_ids()) report(id);
        }
    });

    // --- cluster: route a stream across simulated machines.
    auto* cmd_cluster = app.add_subcommand(
        "cluster", "Route a point stream across M simulated machines");
    struct {
        std::string input = "-";
        std::string out = "-";
        std::size_t machines = 2;
        std::size_t beta = 100;
        std::size_t leaf = 0;
        vecsum::SelectionRule rule = vecsum::SelectionRule::LinearOracle;
    } cl;
    cmd_cluster->add_option("--machines", cl.machines, "Machine count")->required();
    cmd_cluster->add_option("--input", cl.input, "Point file, '-' for stdin");
    cmd_cluster->add_option("--out", cl.out, "Output file, '-' for stdout");
    cmd_cluster->add_option("--beta", cl.beta, "Per-machine summary budget");
    cmd_cluster->add_option("--leaf-size", cl.leaf, "Per-machine leaf size");
    cmd_cluster->add_option("--rule", cl.rule, "Vertex selection rule")
        ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
    cmd_cluster->callback([&] {
        vecsum::CoresetParams params;
        params.beta = cl.beta;
        vecsum::Cluster cluster(cl.machines, params, default_leaf(cl.leaf, cl.beta),
                                cl.rule);
        auto in = open_input(cl.input);
        for_each_point(in.stream(), [&](const vecsum::SparseVector& p) {
            cluster.route_insert(p);
        });
        vecsum::Coreset c = cluster.collect();
        json j = estimate_json(c);
        j["machines"] = cluster.machine_count();
        j["comm_points"] = cluster.comm_log();
        auto out = open_output(cl.out);
        out.stream() << j.dump() << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const vecsum::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const vecsum::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
