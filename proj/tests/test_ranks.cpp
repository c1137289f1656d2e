#include <catch_amalgamated.hpp>

#include <cmath>

#include "blockcp/ranks.hpp"
#include "oracles.hpp"

using namespace blockcp;

TEST_CASE("rank_row on distinct values") {
    CHECK(rank_row(std::vector<double>{3.0, 1.0, 2.0}) == std::vector<Rank>{3, 1, 2});
}

TEST_CASE("ties take the largest rank of the group") {
    const auto m = SymMatrix(2, {1, 1, 1, 1});
    const auto r = compute_ranks(m);
    CHECK(r.rank(0, 0) == 2);
    CHECK(r.rank(0, 1) == 2);
    CHECK(r.has_ties(0));
    CHECK(r.any_ties());
    CHECK(rank_row(std::vector<double>{2, 1, 2, 1, 3}) == std::vector<Rank>{4, 2, 4, 2, 5});
}

TEST_CASE("prefix sums") {
    // Row 0 = [5, 4, 3, 2, 1] inside a symmetric matrix.
    const auto m = SymMatrix::from_lower(5, [](std::size_t i, std::size_t j) {
        return j == 0 ? 5.0 - static_cast<double>(i) : static_cast<double>(i * 7 + j);
    });
    const auto r = compute_ranks(m);
    const auto p = r.prefix_row(0);
    CHECK(std::vector<std::int64_t>(p.begin(), p.end()) == std::vector<std::int64_t>{0, 5, 9, 12, 14, 15});
    CHECK(r.segment_sum(0, 2, 4) == 4 + 3 + 2);
}

TEST_CASE("ranks match literal counting on random matrices") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = oracle::random_matrix(3 + seed, seed);
        const auto r = compute_ranks(m);
        CHECK_FALSE(r.any_ties());
        for (std::size_t i = 0; i < m.order(); ++i) {
            const auto want = oracle::count_ranks(m.row(i));
            for (std::size_t j = 0; j < m.order(); ++j) CHECK(r.rank(i, j) == want[j]);
            CHECK(r.prefix(i, m.order()) == static_cast<std::int64_t>(m.order() * (m.order() + 1) / 2));
        }
    }
}

TEST_CASE("ranks are invariant under increasing transforms") {
    const auto m = oracle::random_matrix(30, 9);
    const auto t = SymMatrix::from_lower(30, [&](std::size_t i, std::size_t j) { return std::exp(3.0 * m(i, j)) + 7; });
    const auto a = compute_ranks(m);
    const auto b = compute_ranks(t);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 30; ++j) CHECK(a.rank(i, j) == b.rank(i, j));
}

TEST_CASE("jitter breaks ties reproducibly without reordering distinct values") {
    // Integer counts with many ties.
    Rng rng(3);
    const auto m = SymMatrix::from_lower(40, [&](std::size_t, std::size_t) { return static_cast<double>(rng.below(4)); });
    const auto raw = compute_ranks(m);
    const auto j1 = compute_ranks(m, 77);
    const auto j2 = compute_ranks(m, 77);
    const auto j3 = compute_ranks(m, 78);
    bool differs = false;
    for (std::size_t i = 0; i < 40; ++i) {
        CHECK(j1.has_ties(i) == raw.has_ties(i));
        auto sorted = std::vector<Rank>(j1.row(i).begin(), j1.row(i).end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < 40; ++k) CHECK(sorted[k] == static_cast<Rank>(k + 1));
        for (std::size_t a = 0; a < 40; ++a) {
            CHECK(j1.rank(i, a) == j2.rank(i, a));
            if (j1.rank(i, a) != j3.rank(i, a)) differs = true;
            for (std::size_t b = 0; b < 40; ++b)
                if (m(i, a) < m(i, b)) CHECK(j1.rank(i, a) < j1.rank(i, b));
        }
    }
    CHECK(differs);
}

TEST_CASE("jitter leaves tie-free rows untouched") {
    const auto m = oracle::random_matrix(12, 4);
    const auto a = compute_ranks(m);
    const auto b = compute_ranks(m, 5);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) CHECK(a.rank(i, j) == b.rank(i, j));
}

TEST_CASE("constant rows survive jitter") {
    const auto m = SymMatrix(3, std::vector<double>(9, 0.0));
    const auto r = compute_ranks(m, 1);
    auto row = std::vector<Rank>(r.row(0).begin(), r.row(0).end());
    std::sort(row.begin(), row.end());
    CHECK(row == std::vector<Rank>{1, 2, 3});
}
