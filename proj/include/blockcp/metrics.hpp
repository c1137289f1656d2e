#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "blockcp/boundaries.hpp"
#include "blockcp/error.hpp"

namespace blockcp {

/// D = (1/n) * sqrt(sum_k (est_k - truth_k)^2), both sorted ascending before
/// pairing. Requires equally many cuts; n is taken from `truth`.
inline double distance_d(std::span<const std::size_t> estimated, std::span<const std::size_t> truth,
                         std::size_t n) {
    if (estimated.size() != truth.size())
        throw InfeasibleError("distance D needs equally many cuts (" + std::to_string(estimated.size()) +
                              " vs " + std::to_string(truth.size()) + ")");
    if (n == 0) throw InfeasibleError("distance D needs a positive order");
    std::vector<std::size_t> a(estimated.begin(), estimated.end());
    std::vector<std::size_t> b(truth.begin(), truth.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double ss = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
        ss += d * d;
    }
    return std::sqrt(ss) / static_cast<double>(n);
}

inline double distance_d(const Boundaries& estimated, const Boundaries& truth) {
    return distance_d(estimated.cuts(), truth.cuts(), truth.order());
}

struct HausdorffParts {
    double d1 = 0.0;  ///< sup over b of inf over a
    double d2 = 0.0;  ///< sup over a of inf over b
    double d = 0.0;   ///< max(d1, d2)
};

/// Directed sup-inf distance: sup_{y in b} inf_{x in a} |x - y|.
inline double directed_hausdorff(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    double sup = 0.0;
    for (std::size_t y : b) {
        double inf = std::numeric_limits<double>::infinity();
        for (std::size_t x : a) inf = std::min(inf, std::abs(static_cast<double>(x) - static_cast<double>(y)));
        sup = std::max(sup, inf);
    }
    return sup;
}

inline HausdorffParts hausdorff_components(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.empty() || b.empty()) throw InfeasibleError("Hausdorff distance needs two non-empty sets");
    HausdorffParts h;
    h.d1 = directed_hausdorff(a, b);
    h.d2 = directed_hausdorff(b, a);
    h.d = std::max(h.d1, h.d2);
    return h;
}

inline HausdorffParts hausdorff_components(const Boundaries& a, const Boundaries& b) {
    return hausdorff_components(a.cuts(), b.cuts());
}

/// counts[k - 1] = number of results containing position k, k in 1..n-1.
inline std::vector<std::size_t> selection_frequencies(std::span<const Boundaries> results, std::size_t n) {
    if (n < 2) throw InfeasibleError("selection frequencies need order >= 2");
    std::vector<std::size_t> counts(n - 1, 0);
    for (const auto& r : results) {
        if (r.order() != n)
            throw InfeasibleError("result of order " + std::to_string(r.order()) + " in a campaign of order " +
                                  std::to_string(n));
        for (std::size_t c : r.cuts()) ++counts[c - 1];
    }
    return counts;
}

}  // namespace blockcp
