#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blockcp/error.hpp"

namespace blockcp {

/// Interior change-points 0 < c_1 < ... < c_L < n of an order-n matrix.
///
/// A cut c means columns 1..c and c+1.. belong to different groups. The
/// sentinels 0 and n are implicit and never stored.
class Boundaries {
public:
    Boundaries() = default;

    Boundaries(std::size_t n, std::vector<std::size_t> cuts) : n_(n), cuts_(std::move(cuts)) {
        std::size_t prev = 0;
        for (std::size_t c : cuts_) {
            if (c <= prev || c >= n_)
                throw InfeasibleError("cuts must be strictly increasing within (0, " +
                                      std::to_string(n_) + ")");
            prev = c;
        }
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return cuts_.size(); }
    bool empty() const noexcept { return cuts_.empty(); }
    const std::vector<std::size_t>& cuts() const noexcept { return cuts_; }
    std::size_t operator[](std::size_t k) const noexcept { return cuts_[k]; }

    /// Segment edges including both sentinels: {0, c_1, ..., c_L, n}.
    std::vector<std::size_t> edges() const {
        std::vector<std::size_t> e;
        e.reserve(cuts_.size() + 2);
        e.push_back(0);
        e.insert(e.end(), cuts_.begin(), cuts_.end());
        e.push_back(n_);
        return e;
    }

    /// Block index (0-based) of 0-based position p.
    std::size_t block_of(std::size_t p) const noexcept {
        std::size_t b = 0;
        while (b < cuts_.size() && p >= cuts_[b]) ++b;
        return b;
    }

    friend bool operator==(const Boundaries&, const Boundaries&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> cuts_;
};

/// Cuts at every multiple of n / blocks (n must be divisible by blocks).
inline Boundaries regular_boundaries(std::size_t n, std::size_t blocks) {
    if (blocks == 0 || n % blocks != 0 || blocks > n)
        throw InfeasibleError("order " + std::to_string(n) + " is not divisible into " +
                              std::to_string(blocks) + " equal blocks");
    std::vector<std::size_t> cuts;
    for (std::size_t k = 1; k < blocks; ++k) cuts.push_back(k * (n / blocks));
    return Boundaries(n, std::move(cuts));
}

}  // namespace blockcp
