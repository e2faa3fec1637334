#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "vecsum/vectors.hpp"

using namespace vecsum;

TEST_SUITE("vectors") {

TEST_CASE("sparse_from_pairs merges duplicates") {
    SparseVector v = sparse_from_pairs({{3, 1.0}, {3, 2.0}});
    REQUIRE(v.nnz() == 1);
    CHECK(v.entries[0].first == 3);
    CHECK(v.entries[0].second == 3.0);
}

TEST_CASE("sparse_from_pairs drops zeros") {
    CHECK(sparse_from_pairs({{5, 0.0}}).empty());
    // Cancellation through duplicate merge also lands on zero.
    CHECK(sparse_from_pairs({{2, 1.5}, {2, -1.5}}).empty());
}

TEST_CASE("sparse_from_pairs sorts and keeps negatives") {
    SparseVector v = sparse_from_pairs({{2, -1.5}, {0, 2.0}});
    REQUIRE(v.nnz() == 2);
    CHECK(v.entries[0] == std::pair<std::uint64_t, double>{0, 2.0});
    CHECK(v.entries[1] == std::pair<std::uint64_t, double>{2, -1.5});
}

TEST_CASE("sparse_from_pairs rejects bad input") {
    CHECK_THROWS_AS(sparse_from_pairs({{-1, 1.0}}), InvalidIndex);
    CHECK_THROWS_AS(sparse_from_pairs({{0, std::nan("")}}), InvalidScalar);
}

TEST_CASE("canonicalization is idempotent") {
    oracle::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        auto points = oracle::random_points(rng, 1, 12);
        std::vector<std::pair<long long, double>> pairs;
        for (const auto& [idx, val] : points[0].entries) {
            pairs.emplace_back(static_cast<long long>(idx), val);
        }
        SparseVector once = sparse_from_pairs(pairs);
        std::vector<std::pair<long long, double>> again;
        for (const auto& [idx, val] : once.entries) {
            again.emplace_back(static_cast<long long>(idx), val);
        }
        CHECK(sparse_from_pairs(again) == once);
    }
}

TEST_CASE("weighted_mean on a symmetric pair") {
    WeightedPointSet P{{sparse_from_pairs({{1, 1.0}}), sparse_from_pairs({{0, 1.0}})},
                       Distribution::uniform(2)};
    DenseVector m = weighted_mean(P);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("weighted_mean of a single point densifies it") {
    SparseVector p = sparse_from_pairs({{0, 2.0}, {3, -1.0}});
    WeightedPointSet P{{p}, Distribution::uniform(1)};
    DenseVector m = weighted_mean(P);
    REQUIRE(m.size() == 4);
    CHECK(m[0] == 2.0);
    CHECK(m[1] == 0.0);
    CHECK(m[2] == 0.0);
    CHECK(m[3] == -1.0);
}

TEST_CASE("weighted_mean of identity rows is uniform") {
    const std::size_t n = 17;
    std::vector<SparseVector> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i].entries.emplace_back(i, 1.0);
    WeightedPointSet P{rows, Distribution::uniform(n)};
    DenseVector m = weighted_mean(P);
    REQUIRE(m.size() == n);
    for (double x : m) CHECK(x == doctest::Approx(1.0 / n).epsilon(1e-14));
}

TEST_CASE("weighted_variance basics") {
    SUBCASE("identical points have zero variance") {
        SparseVector p = sparse_from_pairs({{0, 3.0}});
        WeightedPointSet P{{p, p, p}, Distribution::uniform(3)};
        CHECK(weighted_variance(P, weighted_mean(P)) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("two points at distance 2 in R^1") {
        WeightedPointSet P{{SparseVector{}, sparse_from_pairs({{0, 2.0}})},
                           Distribution::uniform(2)};
        CHECK(weighted_variance(P, weighted_mean(P)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("identity rows match the summation oracle") {
        const std::size_t n = 23;
        std::vector<SparseVector> rows(n);
        for (std::size_t i = 0; i < n; ++i) rows[i].entries.emplace_back(i, 1.0);
        WeightedPointSet P{rows, Distribution::uniform(n)};
        DenseVector m = weighted_mean(P);
        double expect = oracle::exact_variance(P, m);
        CHECK(weighted_variance(P, m) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(expect == doctest::Approx(1.0 - 1.0 / n).epsilon(1e-12));
    }
}

TEST_CASE("variance is non-negative and zero only for coincident points") {
    oracle::Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 2 + rng.below(20);
        auto points = oracle::random_points(rng, n, 6);
        auto w = oracle::random_weights(rng, n);
        WeightedPointSet P{points, Distribution::validated(w)};
        DenseVector m = weighted_mean(P);
        double var = weighted_variance(P, m);
        CHECK(var >= 0.0);

        bool coincident = true;
        const SparseVector* ref = nullptr;
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == 0.0) continue;
            if (!ref) {
                ref = &points[i];
            } else if (!(points[i] == *ref)) {
                coincident = false;
            }
        }
        if (coincident) {
            CHECK(var <= 1e-12);
        } else {
            CHECK(var > 1e-12);
        }
    }
}

TEST_CASE("weighted_mean minimizes the weighted squared distances") {
    oracle::Rng rng(13);
    std::size_t n = 30, d = 8;
    auto points = oracle::random_points(rng, n, d);
    auto w = oracle::random_weights(rng, n, false);
    WeightedPointSet P{points, Distribution::validated(w)};
    DenseVector m = weighted_mean(P);

    auto objective = [&](const DenseVector& c) {
        oracle::Acc acc;
        for (std::size_t i = 0; i < n; ++i) {
            auto dense = oracle::densify_ld(points[i], d);
            oracle::Acc dist;
            for (std::size_t j = 0; j < d; ++j) {
                long double cv = j < c.size() ? c[j] : 0.0L;
                dist.add((dense[j] - cv) * (dense[j] - cv));
            }
            acc.add(static_cast<long double>(w[i]) * dist.value());
        }
        return static_cast<double>(acc.value());
    };

    double base = objective(m);
    for (int t = 0; t < 100; ++t) {
        DenseVector delta(d);
        double norm = 0.0;
        for (auto& x : delta) {
            x = rng.gauss();
            norm += x * x;
        }
        norm = std::sqrt(norm);
        DenseVector c = m;
        c.resize(d, 0.0);
        for (std::size_t j = 0; j < d; ++j) c[j] += delta[j] / norm * 1e-2;
        CHECK(objective(c) >= base);
    }
}

TEST_CASE("axpy accumulates and grows") {
    DenseVector acc{0.0, 0.0};
    axpy(acc, 1.0, sparse_from_pairs({{1, 3.0}}));
    CHECK(acc == DenseVector{0.0, 3.0});

    DenseVector acc2{1.0};
    axpy(acc2, -1.0, sparse_from_pairs({{0, 1.0}}));
    CHECK(acc2 == DenseVector{0.0});

    DenseVector acc3{5.0};
    axpy(acc3, 0.0, sparse_from_pairs({{7, 2.0}}));
    CHECK(acc3 == DenseVector{5.0});

    DenseVector acc4;
    axpy(acc4, 2.0, sparse_from_pairs({{2, 1.5}}));
    CHECK(acc4 == DenseVector{0.0, 0.0, 3.0});

    CHECK_THROWS_AS(axpy(acc4, std::nan(""), sparse_from_pairs({{0, 1.0}})), InvalidScalar);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(Distribution::validated({0.5, -0.1, 0.6}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution::validated({0.5, 0.4}), InvalidDistribution);
    CHECK_NOTHROW(Distribution::validated({0.5, 0.5}));
    CHECK_THROWS_AS(Distribution::normalized({0.0, 0.0}), InvalidDistribution);

    double total = 0.0;
    Distribution d = Distribution::normalized({1.0, 3.0}, &total);
    CHECK(total == 4.0);
    CHECK(d[0] == 0.25);
    CHECK(d[1] == 0.75);
}

TEST_CASE("make_weighted validates shape") {
    CHECK_THROWS_AS(make_weighted({}, Distribution::uniform(1)), InvalidInput);
    CHECK_THROWS_AS(
        make_weighted({SparseVector{}, SparseVector{}}, Distribution::uniform(1)),
        InvalidInput);
    CHECK_NOTHROW(make_weighted({SparseVector{}}, Distribution::uniform(1)));
}

} // TEST_SUITE
