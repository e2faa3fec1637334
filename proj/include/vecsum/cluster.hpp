#pragma once

#include "vecsum/stream.hpp"

namespace vecsum {

// In-process simulation of M machines sharing one stream: point number t
// goes to machine t mod M, each machine keeps its own merge-and-reduce
// summary, and collect() folds the per-machine summaries at a server.
class Cluster {
public:
    // Throws InvalidConfig when machines == 0.
    Cluster(std::size_t machines, const CoresetParams& params, std::size_t leaf_size,
            SelectionRule rule = SelectionRule::LinearOracle);

    void route_insert(const SparseVector& p);

    // Finalizes every non-empty machine and merges the results. Counts the
    // points shipped to the server in comm_log; machines keep streaming
    // afterwards (collection does not reset them). Throws EmptyStream when
    // no machine has seen a point.
    Coreset collect();

    std::size_t machine_count() const { return machines_.size(); }
    const StreamState& machine(std::size_t i) const { return machines_.at(i); }
    std::uint64_t total_count() const { return route_counter_; }
    // Points-worth of data shipped to the server across all collections.
    std::uint64_t comm_log() const { return comm_log_; }

private:
    std::vector<StreamState> machines_;
    std::uint64_t route_counter_ = 0;
    std::uint64_t comm_log_ = 0;
};

} // namespace vecsum
