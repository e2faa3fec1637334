#include "vecsum/sketch.hpp"

#include <algorithm>
#include <string>

#include "vecsum/rng.hpp"

namespace vecsum {

namespace {

void check_shape(std::size_t depth, std::size_t width) {
    if (depth == 0 || width == 0) {
        throw InvalidConfig("sketch depth and width must be positive");
    }
}

std::vector<RowHash> derive_hashes(SplitMix64& seeds, std::size_t depth) {
    std::vector<RowHash> out(depth);
    for (auto& h : out) {
        h.a = seeds.next() | 1ULL;
        h.b = seeds.next();
    }
    return out;
}

double median(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

CountMin::CountMin(std::size_t depth, std::size_t width, std::uint64_t seed)
    : depth_(depth), width_(width) {
    check_shape(depth, width);
    table_.assign(depth * width, 0.0);
    SplitMix64 seeds(seed);
    hash_ = derive_hashes(seeds, depth);
}

void CountMin::update(std::uint64_t index, double value) {
    if (value < 0.0) {
        throw UnsupportedNegative("count-min update with negative value " +
                                  std::to_string(value));
    }
    for (std::size_t r = 0; r < depth_; ++r) {
        table_[r * width_ + hash_[r].column(index, width_)] += value;
    }
}

double CountMin::query(std::uint64_t index) const {
    double best = table_[hash_[0].column(index, width_)];
    for (std::size_t r = 1; r < depth_; ++r) {
        best = std::min(best, table_[r * width_ + hash_[r].column(index, width_)]);
    }
    return best;
}

CountSketch::CountSketch(std::size_t depth, std::size_t width, std::uint64_t seed)
    : depth_(depth), width_(width) {
    check_shape(depth, width);
    table_.assign(depth * width, 0.0);
    SplitMix64 seeds(seed);
    hash_ = derive_hashes(seeds, depth);
    sign_ = derive_hashes(seeds, depth);
}

void CountSketch::update(std::uint64_t index, double value) {
    for (std::size_t r = 0; r < depth_; ++r) {
        table_[r * width_ + hash_[r].column(index, width_)] +=
            sign_[r].sign(index) * value;
    }
}

double CountSketch::query(std::uint64_t index) const {
    std::vector<double> est(depth_);
    for (std::size_t r = 0; r < depth_; ++r) {
        est[r] = sign_[r].sign(index) *
                 table_[r * width_ + hash_[r].column(index, width_)];
    }
    return median(est);
}

} // namespace vecsum
