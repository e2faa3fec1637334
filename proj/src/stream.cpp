#include "vecsum/stream.hpp"

#include <numeric>
#include <string>

namespace vecsum {

StreamState::StreamState(const CoresetParams& params, std::size_t leaf_size,
                         SelectionRule rule)
    : params_(params), leaf_size_(leaf_size), rule_(rule) {
    if (params.beta < 1) {
        throw InvalidConfig("stream beta must be >= 1");
    }
    if (leaf_size < 2 * (params.beta + 1)) {
        throw InvalidConfig("leaf_size " + std::to_string(leaf_size) +
                            " must be >= 2 * (beta + 1) = " +
                            std::to_string(2 * (params.beta + 1)));
    }
    leaf_buffer_.reserve(leaf_size);
}

void StreamState::note_peak() {
    peak_stored_ = std::max(peak_stored_, stored_points());
}

std::size_t StreamState::stored_points() const {
    return leaf_buffer_.size() + stored_in_levels_;
}

std::size_t StreamState::stored_scalars() const {
    std::size_t total = 0;
    for (const auto& p : leaf_buffer_) total += p.nnz() + 2;
    for (const auto& [level, summary] : levels_) total += summary.stored_scalars();
    return total;
}

void StreamState::insert(const SparseVector& p) {
    leaf_buffer_.push_back(p);
    ++total_count_;
    note_peak();
    if (leaf_buffer_.size() < leaf_size_) return;

    Coreset carried = build_coreset(leaf_buffer_, params_, rule_);
    leaf_buffer_.clear();

    int level = 1;
    for (auto it = levels_.find(level); it != levels_.end(); it = levels_.find(level)) {
        WeightedPointSet merged = merge(carried, it->second);
        std::uint64_t count = carried.represented_count + it->second.represented_count;
        double mass = carried.represented_weight + it->second.represented_weight;
        stored_in_levels_ -= it->second.size();
        levels_.erase(it);
        carried = build_coreset(merged, params_, count, mass, rule_);
        ++level;
    }
    stored_in_levels_ += carried.size();
    levels_.emplace(level, std::move(carried));
    max_level_ = std::max(max_level_, level);
    note_peak();
}

Coreset StreamState::finalize() const {
    if (total_count_ == 0) {
        throw EmptyStream("finalize on a stream with no points");
    }

    Coreset acc;
    if (!leaf_buffer_.empty()) {
        acc.points = leaf_buffer_;
        acc.source_indices.resize(leaf_buffer_.size());
        std::iota(acc.source_indices.begin(), acc.source_indices.end(), std::size_t{0});
        acc.w = Distribution::uniform(leaf_buffer_.size());
        acc.represented_count = leaf_buffer_.size();
        acc.represented_weight = static_cast<double>(leaf_buffer_.size());
    }
    for (const auto& [level, summary] : levels_) {
        if (acc.points.empty()) {
            acc = summary;
            continue;
        }
        WeightedPointSet merged = merge(acc, summary);
        Coreset next;
        next.points = std::move(merged.points);
        next.w = std::move(merged.u);
        next.source_indices.resize(next.points.size());
        std::iota(next.source_indices.begin(), next.source_indices.end(), std::size_t{0});
        next.represented_count = acc.represented_count + summary.represented_count;
        next.represented_weight = acc.represented_weight + summary.represented_weight;
        acc = std::move(next);
    }
    return acc;
}

WeightedPointSet merge(const Coreset& a, const Coreset& b) {
    if (a.points.empty() && b.points.empty()) {
        throw InvalidInput("merging two empty summaries");
    }
    double total = a.represented_weight + b.represented_weight;
    if (!(total > 0.0)) {
        throw InvalidInput("merged summaries carry no represented mass");
    }
    std::vector<SparseVector> points;
    points.reserve(a.size() + b.size());
    std::vector<double> w;
    w.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        points.push_back(a.points[i]);
        w.push_back(a.represented_weight * a.w[i] / total);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        points.push_back(b.points[i]);
        w.push_back(b.represented_weight * b.w[i] / total);
    }
    WeightedPointSet out;
    out.points = std::move(points);
    out.u.weights = std::move(w);
    return out;
}

} // namespace vecsum
