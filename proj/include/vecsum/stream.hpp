#pragma once

#include <cstdint>
#include <map>

#include "vecsum/coreset.hpp"

namespace vecsum {

// Merge-and-reduce summary of an unbounded stream. Incoming points fill a
// leaf buffer; a full buffer is compressed to a coreset which then carries
// up a binary tree: whenever two summaries meet at a level they are merged
// (2(beta+1) points), re-compressed (beta+1 points) and promoted, so each
// level holds at most one coreset and at most O(log n) live summaries exist.
class StreamState {
public:
    // Requires leaf_size >= 2 * (beta + 1) so every interior compression
    // halves its input; throws InvalidConfig otherwise.
    StreamState(const CoresetParams& params, std::size_t leaf_size,
                SelectionRule rule = SelectionRule::LinearOracle);

    void insert(const SparseVector& p);

    // Union of the leaf buffer and all level summaries, merged without a
    // final re-compression. Read-only. Throws EmptyStream before any insert.
    Coreset finalize() const;

    std::uint64_t total_count() const { return total_count_; }
    std::size_t leaf_size() const { return leaf_size_; }
    const CoresetParams& params() const { return params_; }

    // Points currently held: leaf buffer plus every level coreset.
    std::size_t stored_points() const;
    // Scalar footprint of everything held (nnz + 2 per stored point).
    std::size_t stored_scalars() const;
    // Largest stored_points value observed, sampled when the buffer is at
    // its fullest (just before compression) and after every insert.
    std::size_t peak_stored_points() const { return peak_stored_; }
    // Levels currently holding a coreset (equals popcount of completed leaves).
    std::size_t occupied_levels() const { return levels_.size(); }
    int max_level() const { return max_level_; }

private:
    void note_peak();

    CoresetParams params_;
    std::size_t leaf_size_;
    SelectionRule rule_;
    std::vector<SparseVector> leaf_buffer_;
    std::map<int, Coreset> levels_;   // level (1-based) -> summary
    int max_level_ = 0;
    std::uint64_t total_count_ = 0;
    std::size_t stored_in_levels_ = 0;
    std::size_t peak_stored_ = 0;
};

// Union of two summaries as a weighted point set whose mean is the
// represented-mass-weighted average of the two means: weights become
// (m_a * w_a ++ m_b * w_b) / (m_a + m_b). Either side may be empty
// (zero mass); both empty is InvalidInput.
WeightedPointSet merge(const Coreset& a, const Coreset& b);

} // namespace vecsum
