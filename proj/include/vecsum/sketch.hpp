#pragma once

#include <cstdint>
#include <vector>

#include "vecsum/errors.hpp"

namespace vecsum {

// Seeded multiply-shift hash mapping 64-bit keys onto [0, width) through a
// 128-bit multiply of the mixed key by the width (no modulo bias).
struct RowHash {
    std::uint64_t a = 1; // odd multiplier
    std::uint64_t b = 0;

    std::uint64_t mix(std::uint64_t key) const { return a * key + b; }

    std::size_t column(std::uint64_t key, std::size_t width) const {
        using u128 = unsigned __int128;
        return static_cast<std::size_t>((static_cast<u128>(mix(key)) * width) >> 64);
    }

    // +1 or -1 from the top (best-mixed) bit.
    double sign(std::uint64_t key) const {
        return (mix(key) >> 63) ? -1.0 : 1.0;
    }
};

// Count-min sketch for non-negative per-coordinate totals: each row adds
// the update into one hashed cell; a query takes the minimum across rows,
// which can only overestimate.
class CountMin {
public:
    // Throws InvalidConfig when depth or width is zero.
    CountMin(std::size_t depth, std::size_t width, std::uint64_t seed);

    // Throws UnsupportedNegative for value < 0: one-sided counters cannot
    // cancel, so signed streams need a pair of sketches (see bench harness).
    void update(std::uint64_t index, double value);
    double query(std::uint64_t index) const;

    std::size_t depth() const { return depth_; }
    std::size_t width() const { return width_; }
    std::size_t cell_count() const { return depth_ * width_; }

private:
    std::size_t depth_;
    std::size_t width_;
    std::vector<double> table_;   // row-major depth x width
    std::vector<RowHash> hash_;
};

// Count-sketch: each row adds sign(key) * value into one hashed cell; a
// query takes the median across rows of sign(key) * cell, an unbiased
// estimate that supports signed updates.
class CountSketch {
public:
    CountSketch(std::size_t depth, std::size_t width, std::uint64_t seed);

    void update(std::uint64_t index, double value);
    double query(std::uint64_t index) const;

    std::size_t depth() const { return depth_; }
    std::size_t width() const { return width_; }
    std::size_t cell_count() const { return depth_ * width_; }

private:
    std::size_t depth_;
    std::size_t width_;
    std::vector<double> table_;
    std::vector<RowHash> hash_;
    std::vector<RowHash> sign_;
};

} // namespace vecsum
