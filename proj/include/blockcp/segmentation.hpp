#pragma once

// Exact maximisation of the multi-sample statistic over cut positions.
//
// The objective sum_l Delta(n_l + 1 : n_{l+1}) is additive over segments, so
//   I_0(p) = Delta(1:p),
//   I_l(p) = max_k { I_{l-1}(k) + Delta(k + 1 : p) }
// gives the optimum for every number of cuts up to l_max in one pass.
// Building the Delta table is O(n^3); the recursion is O(l_max n^2).

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "blockcp/boundaries.hpp"
#include "blockcp/error.hpp"
#include "blockcp/rank_stats.hpp"

namespace blockcp {

/// Delta(a:b) for all 1 <= a <= b <= n, stored as a dense n x n table.
class CostTable {
public:
    explicit CostTable(std::size_t n) : n_(n), delta_(n * n, 0.0) {}

    std::size_t order() const noexcept { return n_; }
    /// 1-based inclusive columns, a <= b.
    double operator()(std::size_t a, std::size_t b) const noexcept { return delta_[(a - 1) * n_ + (b - 1)]; }
    double& at(std::size_t a, std::size_t b) noexcept { return delta_[(a - 1) * n_ + (b - 1)]; }

private:
    std::size_t n_;
    std::vector<double> delta_;
};

inline CostTable build_cost_table(const RankTable& r) {
    const std::size_t n = r.order();
    if (n > kMaxExactOrder)
        throw InfeasibleError("matrix order " + std::to_string(n) + " exceeds supported maximum " +
                              std::to_string(kMaxExactOrder));
    CostTable table(n);
    const auto span = static_cast<std::int64_t>(n + 1);

#pragma omp parallel
    {
        std::vector<std::int64_t> acc(n + 1);
#pragma omp for schedule(dynamic, 4)
        for (std::ptrdiff_t aa = 1; aa <= static_cast<std::ptrdiff_t>(n); ++aa) {
            const auto a = static_cast<std::size_t>(aa);
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t* p = r.prefix_row(i).data();
                const std::int64_t base = p[a - 1];
                for (std::size_t b = a; b <= n; ++b) {
                    const std::int64_t d =
                        2 * (p[b] - base) - static_cast<std::int64_t>(b - a + 1) * span;
                    acc[b] += d * d;
                }
            }
            for (std::size_t b = a; b <= n; ++b)
                table.at(a, b) = static_cast<double>(acc[b]) / (4.0 * static_cast<double>(b - a + 1));
        }
    }
    return table;
}

struct SegmentationLevel {
    std::size_t cuts_count = 0;
    double objective = 0.0;  ///< I_l(n)
    double s_value = 0.0;    ///< 4 / n^2 * I_l(n)
    Boundaries boundaries;
};

struct SegmentationResult {
    std::size_t n = 0;
    std::size_t min_seg = 1;
    std::vector<SegmentationLevel> levels;  ///< levels[l] holds the optimum with l cuts
};

/// Throws InfeasibleError unless (l_max + 1) segments of length >= min_seg fit in n.
inline void check_feasible(std::size_t n, std::size_t l_max, std::size_t min_seg) {
    if (min_seg < 1) throw InfeasibleError("min_seg must be at least 1");
    if ((l_max + 1) * min_seg > n)
        throw InfeasibleError(std::to_string(l_max) + " cuts with minimum segment length " +
                              std::to_string(min_seg) + " do not fit in order " + std::to_string(n));
}

/// Optimal cuts for every count 0..l_max. When several split points attain a
/// maximum the smallest one is kept, so the result is deterministic.
inline SegmentationResult dp_segment(const CostTable& c, std::size_t l_max, std::size_t min_seg = 1) {
    const std::size_t n = c.order();
    check_feasible(n, l_max, min_seg);
    constexpr double kNone = -std::numeric_limits<double>::infinity();

    // value[l][p], p in 0..n; arg[l][p] is the last cut before column p + 1.
    std::vector<std::vector<double>> value(l_max + 1, std::vector<double>(n + 1, kNone));
    std::vector<std::vector<std::size_t>> arg(l_max + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t p = min_seg; p <= n; ++p) value[0][p] = c(1, p);

    for (std::size_t l = 1; l <= l_max; ++l) {
        const auto& prev = value[l - 1];
        auto& cur = value[l];
        const std::size_t first_p = (l + 1) * min_seg;
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t pp = static_cast<std::ptrdiff_t>(first_p); pp <= static_cast<std::ptrdiff_t>(n); ++pp) {
            const auto p = static_cast<std::size_t>(pp);
            double best = kNone;
            std::size_t best_k = 0;
            for (std::size_t k = l * min_seg; k + min_seg <= p; ++k) {
                const double v = prev[k] + c(k + 1, p);
                if (v > best) {
                    best = v;
                    best_k = k;
                }
            }
            cur[p] = best;
            arg[l][p] = best_k;
        }
    }

    SegmentationResult out{n, min_seg, {}};
    const double nn = static_cast<double>(n);
    for (std::size_t l = 0; l <= l_max; ++l) {
        std::vector<std::size_t> cuts(l);
        std::size_t p = n;
        for (std::size_t k = l; k > 0; --k) {
            p = arg[k][p];
            cuts[k - 1] = p;
        }
        const double obj = value[l][n];
        out.levels.push_back({l, obj, 4.0 / (nn * nn) * obj, Boundaries(n, std::move(cuts))});
    }
    return out;
}

struct BruteForceResult {
    double objective = 0.0;
    Boundaries boundaries;
};

/// Exhaustive maximiser over every admissible cut vector with `cuts` cuts.
/// Among exact ties the vector that is smallest when compared from the last
/// cut backwards is returned, matching dp_segment. Refuses instances with more
/// than `budget` candidate vectors.
inline BruteForceResult brute_force_segment(const CostTable& c, std::size_t cuts, std::size_t min_seg = 1,
                                            std::uint64_t budget = 10'000'000) {
    const std::size_t n = c.order();
    check_feasible(n, cuts, min_seg);

    // C(n - 1, cuts) without overflow past the budget.
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < cuts; ++k) {
        count = count * (n - 1 - k) / (k + 1);
        if (count > budget)
            throw InfeasibleError("brute-force enumeration exceeds budget of " + std::to_string(budget));
    }

    std::vector<std::size_t> edges(cuts + 2);
    edges.front() = 0;
    edges.back() = n;
    std::vector<std::size_t> best_cuts;
    double best = -std::numeric_limits<double>::infinity();

    auto colex_less = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        for (std::size_t k = a.size(); k > 0; --k)
            if (a[k - 1] != b[k - 1]) return a[k - 1] < b[k - 1];
        return false;
    };

    // Recursive enumeration of cut k (1-based) given edges[k - 1].
    auto visit = [&](auto&& self, std::size_t k) -> void {
        if (k == cuts + 1) {
            if (n - edges[cuts] < min_seg) return;
            double v = 0.0;
            for (std::size_t s = 0; s <= cuts; ++s) v += c(edges[s] + 1, edges[s + 1]);
            std::vector<std::size_t> cand(edges.begin() + 1, edges.end() - 1);
            if (v > best || (v == best && colex_less(cand, best_cuts))) {
                best = v;
                best_cuts = std::move(cand);
            }
            return;
        }
        for (std::size_t pos = edges[k - 1] + min_seg; pos + min_seg * (cuts + 1 - k) <= n; ++pos) {
            edges[k] = pos;
            self(self, k + 1);
        }
    };
    visit(visit, 1);
    return {best, Boundaries(n, best_cuts)};
}

}  // namespace blockcp
