#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "vecsum/stream.hpp"

namespace vecsum {

// One GPS-style observation: user id plus a planar position.
struct LocationRecord {
    double t = 0.0;
    std::string id;
    double lon = 0.0;
    double lat = 0.0;
};

// Undirected weighted edge between two externally named nodes.
struct Edge {
    std::string src;
    std::string dst;
    double weight = 1.0;
};

// exp(-scale * euclidean distance). Value in (0, 1], symmetric, 1 at
// distance zero, and may underflow to exactly 0 for far-apart inputs.
double prox(const std::array<double, 2>& a, const std::array<double, 2>& b,
            double scale = 1.0);

struct ProximityConfig {
    CoresetParams params{/*beta=*/30, /*alpha=*/4.0, /*degenerate_tol=*/1e-12};
    std::size_t leaf_size = 64;
    SelectionRule rule = SelectionRule::LinearOracle;
    // Distance multiplier applied before exponentiation.
    double scale = 1.0;
    // Proximities below this are recorded as exact zeros (the update still
    // counts toward the row's average so estimates stay comparable).
    double min_prox = 0.0;
};

// Per-user summaries of the rows of the time-averaged proximity matrix.
// Every position update for user u appends, to u's row stream and
// symmetrically to every other row j, a vector with at most one non-zero:
// the current proximity between u and j at coordinate j (resp. u).
// Self-proximity (constant 1) is not recorded.
class ProximityBook {
public:
    explicit ProximityBook(ProximityConfig cfg = {});

    // Interns rec.id if new, moves the user, and emits proximity updates
    // against every other known user.
    void ingest(const LocationRecord& rec);

    // Graph mode: records edge (a, b) as a weight-w update at coordinate b
    // in a's row and symmetrically. Positions are not involved. Self-loops
    // intern the node but emit nothing. Throws InvalidScalar for w <= 0.
    void ingest_edge(const std::string& a, const std::string& b, double weight = 1.0);

    // Summarized time-average of the user's row, sparse over user indices.
    // A user that exists but has received no updates yields the empty vector.
    // Throws UnknownUser.
    SparseVector average_row(const std::string& user) const;

    // Top-k entries of average_row by estimated value, descending, ties
    // broken by ascending user index; resolved back to external ids.
    // Throws UnknownUser; throws InvalidInput for k == 0.
    std::vector<std::pair<std::string, double>> heavy_hitters(const std::string& user,
                                                              std::size_t k) const;

    std::size_t user_count() const { return ids_.size(); }
    const std::vector<std::string>& user_ids() const { return ids_; }
    bool has_user(const std::string& id) const { return id_map_.count(id) > 0; }
    // Dense index of an id; throws UnknownUser.
    std::size_t user_index(const std::string& id) const;
    std::uint64_t row_update_count(std::size_t user_idx) const;
    // Scalars held across all row summaries (memory accounting).
    std::size_t stored_scalars() const;

private:
    std::size_t intern(const std::string& id);
    void row_insert(std::size_t row, std::size_t coord, double value);

    ProximityConfig cfg_;
    std::unordered_map<std::string, std::size_t> id_map_;
    std::vector<std::string> ids_;
    std::vector<std::array<double, 2>> pos_;
    std::vector<StreamState> rows_;
    std::vector<std::uint64_t> update_count_;
};

// Parses JSON-lines records {"t":..,"id":..,"lon":..,"lat":..} or CSV
// t,id,lon,lat (auto-detected per file; a CSV header row is skipped).
// Throws IoError if the file cannot be read, InvalidInput on bad rows.
std::vector<LocationRecord> parse_gps_file(const std::string& path);

// Parses whitespace-separated "src dst [weight]" lines; '#' starts a
// comment; blank lines ignored. Throws IoError / InvalidInput.
std::vector<Edge> parse_edge_file(const std::string& path);

} // namespace vecsum
