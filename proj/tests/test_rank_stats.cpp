#include <catch_amalgamated.hpp>

#include <cmath>

#include "blockcp/rank_stats.hpp"
#include "oracles.hpp"

using namespace blockcp;
using Catch::Approx;

TEST_CASE("kernel examples") {
    CHECK(kernel_h(1.0, 2.0) == 1);
    CHECK(kernel_h(2.0, 1.0) == -1);
    CHECK(kernel_h(1.0, 1.0) == 0);
    CHECK(kernel_g(1.0, 2.0) == 0.5);
    CHECK(kernel_g(2.0, 1.0) == -0.5);
    CHECK(kernel_g(1.0, 1.0) == 0.5);
}

TEST_CASE("kernel moments by exhaustive enumeration") {
    const auto m = oracle::kernel_moments();
    CHECK(m.h_mean == 0.0);
    CHECK(m.h_sq == 1.0);
    CHECK(m.h_xy_xz == Approx(1.0 / 3).epsilon(0).margin(1e-12));
    CHECK(m.h_xy_zy == Approx(1.0 / 3).epsilon(0).margin(1e-12));
    CHECK(m.h_xy_zt == 0.0);
    CHECK(m.g_sq == 0.25);
    CHECK(m.g_mean == 0.0);
    CHECK(m.g_xy_zy == Approx(1.0 / 12).epsilon(0).margin(1e-12));
    CHECK(m.g_xy_xz == Approx(1.0 / 12).epsilon(0).margin(1e-12));
    CHECK(m.g_xy_zt == 0.0);
}

TEST_CASE("u_stat examples") {
    const auto up = oracle::table_from({{1, 2}, {2, 1}});
    CHECK(u_stat(up, 0, 1) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(u_stat(up, 1, 1) == Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(u_stat(up, 0, 0), InfeasibleError);
    CHECK_THROWS_AS(u_stat(up, 0, 2), InfeasibleError);
}

TEST_CASE("s_two_sample on the 2x2 example") {
    const auto r = compute_ranks(SymMatrix(2, {1, 2, 2, 1}));
    const auto s = s_two_sample(r, 1);
    CHECK(s.s_value == Approx(1.0).epsilon(1e-14));
    CHECK(s.expected_s == 1.0);
    CHECK(s.t_value == Approx(0.0).margin(1e-14));
    CHECK(s.t_value == (s.s_value - s.expected_s) / std::sqrt(2.0));
    CHECK(s_multi(r, Boundaries(2, {1})).s_value == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("expected_s values") {
    CHECK(expected_s(2, 1) == 1.0);
    CHECK(expected_s(5, 1) == 2.0);
    CHECK(expected_s(5, 3) == 6.0);
}

TEST_CASE("rank form equals h form on tie-free rows") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 5 + seed;
        const auto m = oracle::random_matrix(n, 100 + seed);
        const auto r = compute_ranks(m);
        for (std::size_t n1 = 1; n1 < n; n1 += 3) {
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(u_stat(r, i, n1) == Approx(oracle::u_hform(m.row(i), n1)).margin(1e-12));
                CHECK(u_stat_second_group(r, i, n1) == Approx(u_stat(r, i, n1)).margin(1e-12));
            }
            CHECK(s_two_sample(r, n1).s_value == Approx(oracle::s_hform(m, n1)).margin(1e-9));
        }
    }
}

TEST_CASE("single-cut multi-sample statistic equals the two-sample statistic") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 2 + seed % 30;
        const auto r = compute_ranks(oracle::random_matrix(n, 500 + seed));
        for (std::size_t n1 = 1; n1 < n; ++n1)
            CHECK(s_multi(r, Boundaries(n, {n1})).s_value == Approx(s_two_sample(r, n1).s_value).margin(1e-9));
    }
}

TEST_CASE("s_multi matches its group-mean definition") {
    const auto m = oracle::random_matrix(11, 3);
    const auto r = compute_ranks(m);
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < 11; ++i) rows.push_back(oracle::count_ranks(m.row(i)));
    for (const auto& cuts : std::vector<std::vector<std::size_t>>{{1}, {5}, {2, 9}, {1, 2, 3, 10}}) {
        const auto s = s_multi(r, Boundaries(11, cuts));
        CHECK(s.s_value == Approx(oracle::s_multi_direct(rows, cuts)).margin(1e-9));
        CHECK(s.expected_s == expected_s(11, cuts.size()));
    }
    CHECK_THROWS_AS(s_multi(r, Boundaries(11, {})), InfeasibleError);
    CHECK_THROWS_AS(s_multi(r, Boundaries(10, {5})), InfeasibleError);
}

TEST_CASE("exhaustive null mean, two-sample") {
    CHECK(oracle::null_mean_two_sample(3, 1) == Approx(4.0 / 3).margin(1e-9));
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t n1 = 1; n1 < n; ++n1)
            CHECK(oracle::null_mean_two_sample(n, n1) == Approx((n + 1) / 3.0).margin(1e-9));
}

TEST_CASE("exhaustive null mean, multi-sample n=4 L=2") {
    for (const auto& cuts : std::vector<std::vector<std::size_t>>{{1, 2}, {1, 3}, {2, 3}}) {
        const auto [lib, direct] = oracle::null_mean_multi(4, cuts);
        CHECK(lib == Approx(10.0 / 3).margin(1e-9));
        CHECK(direct == Approx(10.0 / 3).margin(1e-9));
    }
}

TEST_CASE("statistics are invariant under increasing transforms of rows") {
    const auto m = oracle::random_matrix(25, 8);
    const auto t = SymMatrix::from_lower(25, [&](std::size_t i, std::size_t j) { return std::atan(m(i, j)) * 4 - 1; });
    const auto a = compute_ranks(m), b = compute_ranks(t);
    CHECK(s_two_sample(a, 7).s_value == s_two_sample(b, 7).s_value);
    CHECK(s_multi(a, Boundaries(25, {4, 12, 20})).s_value == s_multi(b, Boundaries(25, {4, 12, 20})).s_value);
}

TEST_CASE("segment_cost validates its range") {
    const auto r = compute_ranks(oracle::random_matrix(4, 1));
    CHECK_THROWS_AS(segment_cost(r, 0, 2), InfeasibleError);
    CHECK_THROWS_AS(segment_cost(r, 3, 2), InfeasibleError);
    CHECK_THROWS_AS(segment_cost(r, 1, 5), InfeasibleError);
}
