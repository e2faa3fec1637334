#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "vecsum/bench.hpp"
#include "vecsum/cluster.hpp"

using namespace vecsum;

namespace {

CoresetParams make_params(std::size_t beta) {
    CoresetParams p;
    p.beta = beta;
    return p;
}

} // namespace

TEST_SUITE("cluster") {

TEST_CASE("construction and empty-state errors") {
    CHECK_THROWS_AS(Cluster(0, make_params(4), 32), InvalidConfig);
    Cluster c(3, make_params(4), 32);
    CHECK(c.machine_count() == 3);
    CHECK_THROWS_AS(c.collect(), EmptyStream);
}

TEST_CASE("round-robin routing splits the stream evenly") {
    Cluster c(4, make_params(4), 32);
    WeightedPointSet P = gen_gaussian(103, 3, 41);
    for (const auto& p : P.points) c.route_insert(p);
    CHECK(c.total_count() == 103);
    // 103 = 4 * 25 + 3: machines 0..2 get 26, machine 3 gets 25.
    CHECK(c.machine(0).total_count() == 26);
    CHECK(c.machine(1).total_count() == 26);
    CHECK(c.machine(2).total_count() == 26);
    CHECK(c.machine(3).total_count() == 25);
}

TEST_CASE("collect merges every machine and counts the traffic") {
    const std::size_t n = 2048, d = 8, beta = 32;
    Cluster c(4, make_params(beta), 128);
    WeightedPointSet P = gen_gaussian(n, d, 43);
    for (const auto& p : P.points) c.route_insert(p);

    Coreset merged = c.collect();
    CHECK(merged.represented_count == n);
    CHECK(merged.represented_weight == doctest::Approx(static_cast<double>(n)));

    // Traffic equals the points each machine shipped.
    std::uint64_t expect = 0;
    for (std::size_t m = 0; m < 4; ++m) {
        expect += c.machine(m).finalize().size();
    }
    CHECK(c.comm_log() == expect);
    CHECK(merged.size() == expect);

    DenseVector exact = oracle::exact_mean(P);
    double var = oracle::exact_variance(P, exact);
    CHECK(oracle::sq_dist(estimate_mean(merged), exact) <= 0.5 * var);

    SUBCASE("collection is repeatable and additive in the log") {
        Coreset again = c.collect();
        CHECK(again.size() == merged.size());
        CHECK(c.comm_log() == 2 * expect);
        for (std::size_t k = 0; k < merged.size(); ++k) {
            CHECK(again.points[k] == merged.points[k]);
            CHECK(again.w[k] == merged.w[k]);
        }
    }
    SUBCASE("machines keep streaming after a collection") {
        c.route_insert(P.points[0]);
        CHECK(c.total_count() == n + 1);
        Coreset after = c.collect();
        CHECK(after.represented_count == n + 1);
    }
}

TEST_CASE("idle machines are skipped") {
    Cluster c(5, make_params(4), 32);
    // Only two points: machines 2..4 never see anything.
    c.route_insert(sparse_from_pairs({{0, 1.0}}));
    c.route_insert(sparse_from_pairs({{0, 3.0}}));
    Coreset merged = c.collect();
    CHECK(merged.represented_count == 2);
    DenseVector est = estimate_mean(merged);
    REQUIRE(est.size() == 1);
    CHECK(est[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("one machine collapses to a plain stream") {
    WeightedPointSet P = gen_gaussian(300, 5, 47);
    Cluster c(1, make_params(8), 32);
    StreamState s(make_params(8), 32);
    for (const auto& p : P.points) {
        c.route_insert(p);
        s.insert(p);
    }
    Coreset via_cluster = c.collect();
    Coreset direct = s.finalize();
    REQUIRE(via_cluster.size() == direct.size());
    for (std::size_t k = 0; k < direct.size(); ++k) {
        CHECK(via_cluster.points[k] == direct.points[k]);
        CHECK(via_cluster.w[k] == direct.w[k]);
    }
}

TEST_CASE("accuracy degrades gracefully with machine count") {
    // More machines means more summaries merged without recompression,
    // so the error may grow but stays within the single-stream regime.
    const std::size_t n = 4096, d = 6, beta = 24;
    WeightedPointSet P = gen_gaussian(n, d, 53);
    DenseVector exact = oracle::exact_mean(P);
    double var = oracle::exact_variance(P, exact);
    for (std::size_t M : {1, 2, 4, 8}) {
        Cluster c(M, make_params(beta), 64);
        for (const auto& p : P.points) c.route_insert(p);
        Coreset merged = c.collect();
        CHECK(oracle::sq_dist(estimate_mean(merged), exact) <= var);
        CHECK(merged.size() <= M * ((beta + 1) * 8 + 64));
    }
}

} // TEST_SUITE
