#pragma once

// Synthetic block-structured symmetric matrices.
//
// A layout partitions {1..n} into blocks by its cuts; cell (r, c) of the
// block grid draws its lower-triangle entries from dists[grid(r, c)]. The
// grid is symmetric, and upper-triangle entries are mirrored.

#include <cstdint>
#include <string>
#include <vector>

#include "blockcp/boundaries.hpp"
#include "blockcp/distributions.hpp"
#include "blockcp/error.hpp"
#include "blockcp/rng.hpp"
#include "blockcp/sym_matrix.hpp"

namespace blockcp {

enum class LayoutKind { TwoSampleBlocks, BlockDiagonal, Chessboard, Custom };

inline std::string to_string(LayoutKind k) {
    switch (k) {
        case LayoutKind::TwoSampleBlocks: return "two_sample";
        case LayoutKind::BlockDiagonal: return "block_diagonal";
        case LayoutKind::Chessboard: return "chessboard";
        case LayoutKind::Custom: return "custom";
    }
    return {};
}

inline LayoutKind parse_layout_kind(const std::string& s) {
    if (s == "two_sample" || s == "twosample") return LayoutKind::TwoSampleBlocks;
    if (s == "block_diagonal" || s == "blockdiag") return LayoutKind::BlockDiagonal;
    if (s == "chessboard") return LayoutKind::Chessboard;
    if (s == "custom") return LayoutKind::Custom;
    throw InputError("unknown layout kind '" + s + "'");
}

struct BlockLayout {
    LayoutKind kind = LayoutKind::Custom;
    Boundaries cuts;
    std::vector<DistSpec> dists;
    /// (blocks x blocks) row-major indices into dists; symmetric.
    std::vector<std::size_t> grid;

    std::size_t order() const noexcept { return cuts.order(); }
    std::size_t blocks() const noexcept { return cuts.size() + 1; }
    const DistSpec& cell(std::size_t r, std::size_t c) const { return dists[grid[r * blocks() + c]]; }

    void validate() const {
        const std::size_t k = blocks();
        if (cuts.order() < 2) throw InputError("layout order must be at least 2");
        if (grid.size() != k * k)
            throw InputError("layout grid has " + std::to_string(grid.size()) + " cells, expected " +
                             std::to_string(k * k));
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) {
                if (grid[r * k + c] >= dists.size())
                    throw InputError("layout grid references unknown distribution index");
                if (grid[r * k + c] != grid[c * k + r]) throw InputError("layout grid is not symmetric");
            }
        }
    }
};

/// Power-study layout: one cut at n1; L1 on the top-left block, L2 on the
/// off-diagonal block, L3 on the bottom-right block.
inline BlockLayout two_sample_layout(std::size_t n, std::size_t n1, DistSpec l1, DistSpec l2, DistSpec l3) {
    BlockLayout l{LayoutKind::TwoSampleBlocks, Boundaries(n, {n1}), {l1, l2, l3}, {0, 1, 1, 2}};
    l.validate();
    return l;
}

/// L1 on diagonal blocks, L2 everywhere else.
inline BlockLayout block_diagonal_layout(const Boundaries& cuts, DistSpec l1, DistSpec l2) {
    const std::size_t k = cuts.size() + 1;
    BlockLayout l{LayoutKind::BlockDiagonal, cuts, {l1, l2}, std::vector<std::size_t>(k * k, 1)};
    for (std::size_t r = 0; r < k; ++r) l.grid[r * k + r] = 0;
    l.validate();
    return l;
}

/// Two-colouring by parity of (block row + block column); the top-left block is L1.
inline BlockLayout chessboard_layout(const Boundaries& cuts, DistSpec l1, DistSpec l2) {
    const std::size_t k = cuts.size() + 1;
    BlockLayout l{LayoutKind::Chessboard, cuts, {l1, l2}, std::vector<std::size_t>(k * k)};
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) l.grid[r * k + c] = (r + c) % 2;
    l.validate();
    return l;
}

/// Every cell from the same distribution.
inline BlockLayout homogeneous_layout(std::size_t n, DistSpec d) {
    BlockLayout l{LayoutKind::Custom, Boundaries(n, {}), {d}, {0}};
    l.validate();
    return l;
}

/// Samples the lower triangle row-major (diagonal included) and mirrors it.
inline SymMatrix gen_matrix(const BlockLayout& layout, std::uint64_t seed) {
    layout.validate();
    const std::size_t n = layout.order();
    std::vector<std::size_t> block(n);
    for (std::size_t p = 0; p < n; ++p) block[p] = layout.cuts.block_of(p);
    Rng rng(seed);
    return SymMatrix::from_lower(n, [&](std::size_t i, std::size_t j) {
        return sample_dist(layout.cell(block[i], block[j]), rng);
    });
}

}  // namespace blockcp
