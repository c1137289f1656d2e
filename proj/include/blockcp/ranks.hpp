#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blockcp/rng.hpp"
#include "blockcp/sym_matrix.hpp"

namespace blockcp {

using Rank = std::int32_t;

/// Writes R_j = #{k : row[k] <= row[j]} into `out` (tied entries all receive
/// the largest rank of their group). Returns true when the row has ties.
inline bool rank_row(std::span<const double> row, std::span<Rank> out,
                     std::vector<std::pair<double, std::uint32_t>>& scratch) {
    const std::size_t n = row.size();
    scratch.resize(n);
    for (std::size_t k = 0; k < n; ++k) scratch[k] = {row[k], static_cast<std::uint32_t>(k)};
    std::sort(scratch.begin(), scratch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    bool ties = false;
    std::size_t g = 0;
    while (g < n) {
        std::size_t e = g + 1;
        while (e < n && scratch[e].first == scratch[g].first) ++e;
        if (e - g > 1) ties = true;
        for (std::size_t k = g; k < e; ++k) out[scratch[k].second] = static_cast<Rank>(e);
        g = e;
    }
    return ties;
}

inline std::vector<Rank> rank_row(std::span<const double> row) {
    std::vector<Rank> out(row.size());
    std::vector<std::pair<double, std::uint32_t>> scratch;
    rank_row(row, out, scratch);
    return out;
}

/// Per-row ranks of a symmetric matrix plus per-row prefix sums.
///
/// ranks(i, j) uses 0-based (i, j). prefix(i, j) = sum of ranks(i, 0..j-1),
/// so prefix(i, 0) == 0 and prefix(i, n) is the full row total; with 1-based
/// column indices a..b the segment sum is prefix(i, b) - prefix(i, a - 1).
class RankTable {
public:
    RankTable(std::size_t n, std::vector<Rank> ranks, std::vector<bool> has_ties)
        : n_(n), ranks_(std::move(ranks)), prefix_(n * (n + 1)), has_ties_(std::move(has_ties)) {
        for (std::size_t i = 0; i < n_; ++i) {
            std::int64_t acc = 0;
            prefix_[i * (n_ + 1)] = 0;
            for (std::size_t j = 0; j < n_; ++j) {
                acc += ranks_[i * n_ + j];
                prefix_[i * (n_ + 1) + j + 1] = acc;
            }
        }
    }

    std::size_t order() const noexcept { return n_; }
    Rank rank(std::size_t i, std::size_t j) const noexcept { return ranks_[i * n_ + j]; }
    std::span<const Rank> row(std::size_t i) const noexcept { return {ranks_.data() + i * n_, n_}; }
    std::int64_t prefix(std::size_t i, std::size_t j) const noexcept { return prefix_[i * (n_ + 1) + j]; }
    std::span<const std::int64_t> prefix_row(std::size_t i) const noexcept {
        return {prefix_.data() + i * (n_ + 1), n_ + 1};
    }
    /// Sum of ranks of row i over 1-based columns a..b.
    std::int64_t segment_sum(std::size_t i, std::size_t a, std::size_t b) const noexcept {
        return prefix(i, b) - prefix(i, a - 1);
    }
    bool has_ties(std::size_t i) const noexcept { return has_ties_[i]; }
    bool any_ties() const noexcept {
        return std::find(has_ties_.begin(), has_ties_.end(), true) != has_ties_.end();
    }

private:
    std::size_t n_;
    std::vector<Rank> ranks_;
    std::vector<std::int64_t> prefix_;
    std::vector<bool> has_ties_;
};

namespace detail {

/// Smallest strictly positive gap between distinct values of a row, or 1 when
/// the row holds a single distinct value.
inline double min_positive_gap(std::span<const double> row) {
    std::vector<double> s(row.begin(), row.end());
    std::sort(s.begin(), s.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] > s[k - 1]) gap = std::min(gap, s[k] - s[k - 1]);
    return std::isfinite(gap) ? gap : 1.0;
}

}  // namespace detail

/// Ranks every row of m.
///
/// When `jitter_seed` is set, each row i is perturbed by i.i.d. Uniform(0, eps_i)
/// noise before ranking, with eps_i half the row's smallest nonzero gap, so the
/// order of distinct values is preserved and ties are broken at random. Row i
/// draws from substream (seed, i). has_ties always describes the raw values.
inline RankTable compute_ranks(const SymMatrix& m, std::optional<std::uint64_t> jitter_seed = {}) {
    const std::size_t n = m.order();
    std::vector<Rank> ranks(n * n);
    std::vector<char> ties(n, 0);

#pragma omp parallel
    {
        std::vector<std::pair<double, std::uint32_t>> scratch;
        std::vector<double> work(n);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            const auto row = m.row(i);
            std::span<Rank> out(ranks.data() + i * n, n);
            const bool raw_ties = rank_row(row, out, scratch);
            ties[i] = raw_ties ? 1 : 0;
            if (raw_ties && jitter_seed) {
                const double eps = detail::min_positive_gap(row) / 2.0;
                Rng rng(*jitter_seed, i);
                for (std::size_t j = 0; j < n; ++j) work[j] = row[j] + eps * rng.uniform_open();
                rank_row(work, out, scratch);
            }
        }
    }
    return RankTable(n, std::move(ranks), std::vector<bool>(ties.begin(), ties.end()));
}

}  // namespace blockcp
