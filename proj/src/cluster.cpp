#include "vecsum/cluster.hpp"

namespace vecsum {

Cluster::Cluster(std::size_t machines, const CoresetParams& params,
                 std::size_t leaf_size, SelectionRule rule) {
    if (machines == 0) {
        throw InvalidConfig("a cluster needs at least one machine");
    }
    machines_.reserve(machines);
    for (std::size_t i = 0; i < machines; ++i) {
        machines_.emplace_back(params, leaf_size, rule);
    }
}

void Cluster::route_insert(const SparseVector& p) {
    machines_[route_counter_ % machines_.size()].insert(p);
    ++route_counter_;
}

Coreset Cluster::collect() {
    Coreset acc;
    bool have = false;
    for (const StreamState& m : machines_) {
        if (m.total_count() == 0) continue;
        Coreset part = m.finalize();
        comm_log_ += part.size();
        if (!have) {
            acc = std::move(part);
            have = true;
            continue;
        }
        WeightedPointSet merged = merge(acc, part);
        Coreset next;
        next.points = std::move(merged.points);
        next.w = std::move(merged.u);
        next.source_indices.resize(next.points.size());
        for (std::size_t i = 0; i < next.points.size(); ++i) next.source_indices[i] = i;
        next.represented_count = acc.represented_count + part.represented_count;
        next.represented_weight = acc.represented_weight + part.represented_weight;
        acc = std::move(next);
    }
    if (!have) {
        throw EmptyStream("collect on a cluster that has seen no points");
    }
    return acc;
}

} // namespace vecsum
