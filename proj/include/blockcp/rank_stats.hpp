#pragma once

// Rank-based homogeneity statistics for column groups of a symmetric matrix.
//
// Two-sample (columns 1..n1 vs n1+1..n):
//   U_i(n1) = 2 / sqrt(n n1 (n - n1)) * sum_{j <= n1} ((n + 1)/2 - R_ij)
//   S(n1)   = sum_i U_i(n1)^2,   E[S] = (n + 1)/3 under homogeneity,
//   T(n1)   = (S(n1) - (n + 1)/3) / sqrt(n).
// Multi-sample with cuts n_1 < ... < n_L:
//   S = 4/n^2 * sum_l (n_{l+1} - n_l) * sum_i (mean rank of row i in group l - (n + 1)/2)^2,
//   E[S] = L (n + 1)/3.
//
// Everything is evaluated from RankTable prefix sums. Segment costs are
// accumulated in exact 64-bit integer arithmetic and converted once, so
// results do not depend on summation order.

#include <cmath>
#include <cstdint>
#include <string>

#include "blockcp/boundaries.hpp"
#include "blockcp/error.hpp"
#include "blockcp/ranks.hpp"

namespace blockcp {

/// h(x, y) = 1{x <= y} - 1{y <= x}.
constexpr int kernel_h(double x, double y) noexcept {
    return static_cast<int>(x <= y) - static_cast<int>(y <= x);
}

/// g(x, y) = 1{x <= y} - 1/2.
constexpr double kernel_g(double x, double y) noexcept {
    return (x <= y ? 1.0 : 0.0) - 0.5;
}

/// Null expectation L (n + 1) / 3 of the multi-sample statistic (L = 1 is the
/// two-sample case).
constexpr double expected_s(std::size_t n, std::size_t groups_minus_one) noexcept {
    return static_cast<double>(groups_minus_one) * static_cast<double>(n + 1) / 3.0;
}

namespace detail {

inline void check_split(std::size_t n, std::size_t n1) {
    if (n1 < 1 || n1 + 1 > n)
        throw InfeasibleError("split n1 = " + std::to_string(n1) + " outside [1, " +
                              std::to_string(n - 1) + "]");
}

/// 4 * len * sum_i (mean_i - (n+1)/2)^2 = sum_i (2 * sum_i - len * (n + 1))^2 / len,
/// returned as the integer numerator; exact for n up to kMaxExactOrder.
inline std::int64_t segment_numerator(const RankTable& r, std::size_t a, std::size_t b) {
    const std::size_t n = r.order();
    const auto centre = static_cast<std::int64_t>((b - a + 1) * (n + 1));
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t d = 2 * r.segment_sum(i, a, b) - centre;
        acc += d * d;
    }
    return acc;
}

}  // namespace detail

/// Largest order for which segment numerators fit in int64 (n^5 < 2^63).
inline constexpr std::size_t kMaxExactOrder = 6000;

/// Delta(a:b) = (b - a + 1) * sum_i (mean rank of row i over columns a..b - (n + 1)/2)^2,
/// 1-based inclusive columns.
inline double segment_cost(const RankTable& r, std::size_t a, std::size_t b) {
    if (a < 1 || b < a || b > r.order())
        throw InfeasibleError("segment " + std::to_string(a) + ":" + std::to_string(b) +
                              " outside 1.." + std::to_string(r.order()));
    const auto len = static_cast<double>(b - a + 1);
    return static_cast<double>(detail::segment_numerator(r, a, b)) / (4.0 * len);
}

/// U_i(n1) from the first-group rank sum. Row i is 0-based.
inline double u_stat(const RankTable& r, std::size_t i, std::size_t n1) {
    const std::size_t n = r.order();
    detail::check_split(n, n1);
    const double norm = 2.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(n1) *
                                        static_cast<double>(n - n1));
    const double centred = static_cast<double>(n1) * static_cast<double>(n + 1) / 2.0 -
                           static_cast<double>(r.prefix(i, n1));
    return norm * centred;
}

/// U_i(n1) from the second-group rank sum; equals u_stat on tie-free rows.
inline double u_stat_second_group(const RankTable& r, std::size_t i, std::size_t n1) {
    const std::size_t n = r.order();
    detail::check_split(n, n1);
    const double norm = 2.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(n1) *
                                        static_cast<double>(n - n1));
    const double centred = static_cast<double>(r.prefix(i, n) - r.prefix(i, n1)) -
                           static_cast<double>(n - n1) * static_cast<double>(n + 1) / 2.0;
    return norm * centred;
}

struct TwoSampleStat {
    std::size_t n = 0;
    std::size_t n1 = 0;
    double s_value = 0.0;
    double t_value = 0.0;
    double expected_s = 0.0;
};

inline TwoSampleStat s_two_sample(const RankTable& r, std::size_t n1) {
    const std::size_t n = r.order();
    detail::check_split(n, n1);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = u_stat(r, i, n1);
        s += u * u;
    }
    const double e = expected_s(n, 1);
    return {n, n1, s, (s - e) / std::sqrt(static_cast<double>(n)), e};
}

struct MultiSampleStat {
    Boundaries boundaries;
    double s_value = 0.0;
    double expected_s = 0.0;
};

inline MultiSampleStat s_multi(const RankTable& r, const Boundaries& b) {
    const std::size_t n = r.order();
    if (b.order() != n)
        throw InfeasibleError("boundaries are for order " + std::to_string(b.order()) +
                              ", ranks for order " + std::to_string(n));
    if (b.empty()) throw InfeasibleError("multi-sample statistic needs at least one cut");
    const auto edges = b.edges();
    double total = 0.0;
    for (std::size_t l = 0; l + 1 < edges.size(); ++l) total += segment_cost(r, edges[l] + 1, edges[l + 1]);
    const double nn = static_cast<double>(n);
    return {b, 4.0 / (nn * nn) * total, expected_s(n, b.size())};
}

}  // namespace blockcp
