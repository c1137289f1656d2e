#pragma once

#include <vector>

#include "blockcp/boundaries.hpp"
#include "blockcp/error.hpp"
#include "blockcp/sym_matrix.hpp"

namespace blockcp {

/// Block-wise constant summary of a matrix: each cell of the block grid
/// induced by `cuts` holds the mean of the observed entries lying in it.
struct SummaryMatrix {
    Boundaries cuts;
    std::vector<double> block_means;  ///< (blocks x blocks) row-major, symmetric

    std::size_t blocks() const noexcept { return cuts.size() + 1; }
    double mean(std::size_t r, std::size_t c) const { return block_means[r * blocks() + c]; }

    /// n x n matrix with every entry replaced by its block mean.
    SymMatrix expand() const {
        const std::size_t n = cuts.order();
        std::vector<std::size_t> block(n);
        for (std::size_t p = 0; p < n; ++p) block[p] = cuts.block_of(p);
        return SymMatrix::from_lower(n, [&](std::size_t i, std::size_t j) { return mean(block[i], block[j]); });
    }
};

/// Cell means are computed for the lower block triangle and mirrored, so the
/// expansion is bit-exactly symmetric.
inline SummaryMatrix summarize(const SymMatrix& m, const Boundaries& cuts) {
    if (cuts.order() != m.order())
        throw InfeasibleError("cuts are for order " + std::to_string(cuts.order()) + ", matrix has order " +
                              std::to_string(m.order()));
    const auto edges = cuts.edges();
    const std::size_t k = cuts.size() + 1;
    SummaryMatrix s{cuts, std::vector<double>(k * k)};
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            double sum = 0.0;
            for (std::size_t i = edges[r]; i < edges[r + 1]; ++i)
                for (std::size_t j = edges[c]; j < edges[c + 1]; ++j) sum += m(i, j);
            const double count = static_cast<double>((edges[r + 1] - edges[r]) * (edges[c + 1] - edges[c]));
            s.block_means[r * k + c] = sum / count;
            s.block_means[c * k + r] = sum / count;
        }
    }
    return s;
}

}  // namespace blockcp
