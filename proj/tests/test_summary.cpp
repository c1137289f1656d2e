#include <catch_amalgamated.hpp>

#include "blockcp/simgen.hpp"
#include "blockcp/summary.hpp"

using namespace blockcp;
using Catch::Approx;

TEST_CASE("block means of a small matrix") {
    // Blocks {1,2} and {3}.
    const SymMatrix m(3, {1, 2, 3, 2, 4, 5, 3, 5, 6});
    const auto s = summarize(m, Boundaries(3, {2}));
    CHECK(s.mean(0, 0) == Approx((1 + 2 + 2 + 4) / 4.0));
    CHECK(s.mean(0, 1) == Approx((3 + 5) / 2.0));
    CHECK(s.mean(1, 0) == s.mean(0, 1));
    CHECK(s.mean(1, 1) == 6.0);
    const auto x = s.expand();
    CHECK(x(0, 2) == 4.0);
    CHECK(x(1, 1) == 2.25);
}

TEST_CASE("expansion is block-constant and symmetric") {
    const auto l = chessboard_layout(regular_boundaries(40, 4), DistSpec::normal(1, 1), DistSpec::normal(0, 1));
    const auto m = gen_matrix(l, 2);
    const auto s = summarize(m, l.cuts);
    const auto x = s.expand();
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 40; ++j) {
            CHECK(x(i, j) == x(j, i));
            CHECK(x(i, j) == s.mean(i / 10, j / 10));
        }
    // Summarizing the expansion again is a fixed point.
    const auto again = summarize(x, l.cuts);
    for (std::size_t k = 0; k < s.block_means.size(); ++k)
        CHECK(again.block_means[k] == Approx(s.block_means[k]).epsilon(1e-12));
}

TEST_CASE("no cuts gives the grand mean") {
    const SymMatrix m(2, {1, 3, 3, 5});
    CHECK(summarize(m, Boundaries(2, {})).mean(0, 0) == 3.0);
    CHECK_THROWS_AS(summarize(m, Boundaries(3, {1})), InfeasibleError);
}
