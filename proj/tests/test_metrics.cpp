#include <catch_amalgamated.hpp>

#include <cmath>

#include "blockcp/metrics.hpp"
#include "blockcp/rng.hpp"

using namespace blockcp;
using Catch::Approx;

TEST_CASE("distance D examples") {
    CHECK(distance_d(Boundaries(100, {10, 20}), Boundaries(100, {10, 20})) == 0.0);
    CHECK(distance_d(Boundaries(100, {53}), Boundaries(100, {50})) == Approx(0.03).margin(1e-12));
    CHECK(distance_d(Boundaries(10, {3, 6}), Boundaries(10, {2, 7})) == Approx(std::sqrt(2.0) / 10).margin(1e-12));
    CHECK_THROWS_AS(distance_d(Boundaries(10, {3}), Boundaries(10, {2, 7})), InfeasibleError);
}

TEST_CASE("distance D sorts before pairing") {
    const std::vector<std::size_t> est{6, 3}, truth{7, 2};
    CHECK(distance_d(est, truth, 10) == Approx(std::sqrt(2.0) / 10).margin(1e-12));
}

TEST_CASE("Hausdorff examples") {
    const auto same = hausdorff_components(Boundaries(20, {4, 9}), Boundaries(20, {4, 9}));
    CHECK(same.d1 == 0.0);
    CHECK(same.d2 == 0.0);
    CHECK(same.d == 0.0);

    const std::vector<std::size_t> a{10}, b{12, 50};
    const auto h = hausdorff_components(a, b);
    CHECK(h.d1 == 40.0);
    CHECK(h.d2 == 2.0);
    CHECK(h.d == 40.0);

    const std::vector<std::size_t> s{3}, t{7};
    const auto st = hausdorff_components(s, t);
    CHECK(st.d1 == 4.0);
    CHECK(st.d2 == 4.0);
    CHECK(st.d == 4.0);

    CHECK_THROWS_AS(hausdorff_components(std::vector<std::size_t>{}, b), InfeasibleError);
}

TEST_CASE("Hausdorff symmetry and triangle inequality on random sets") {
    Rng rng(17);
    auto random_set = [&] {
        std::vector<std::size_t> v;
        const auto k = 1 + rng.below(6);
        for (std::uint64_t i = 0; i < k; ++i) v.push_back(1 + rng.below(99));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    for (int t = 0; t < 1000; ++t) {
        const auto a = random_set(), b = random_set(), c = random_set();
        const auto ab = hausdorff_components(a, b), ba = hausdorff_components(b, a);
        CHECK(ab.d == ba.d);
        CHECK(ab.d1 == ba.d2);
        CHECK(hausdorff_components(a, c).d <= ab.d + hausdorff_components(b, c).d);
        CHECK(hausdorff_components(a, a).d == 0.0);
    }
}

TEST_CASE("selection frequencies") {
    std::vector<Boundaries> one{Boundaries(20, {10})};
    auto f = selection_frequencies(one, 20);
    REQUIRE(f.size() == 19);
    for (std::size_t k = 0; k < 19; ++k) CHECK(f[k] == (k == 9 ? 1u : 0u));

    std::vector<Boundaries> two{Boundaries(20, {10}), Boundaries(20, {3, 10})};
    f = selection_frequencies(two, 20);
    CHECK(f[9] == 2);
    CHECK(f[2] == 1);
    CHECK_THROWS_AS(selection_frequencies(two, 21), InfeasibleError);
}
