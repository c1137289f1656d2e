#include <catch_amalgamated.hpp>

#include "blockcp/calibration.hpp"
#include "blockcp/serialize.hpp"

using namespace blockcp;
using Catch::Approx;

TEST_CASE("empirical quantile uses the upper order statistic") {
    std::vector<double> v{5, 1, 4, 2, 3};
    CHECK(empirical_quantile(v, 0.5) == 3);  // ceil(2.5) = 3rd smallest
    std::vector<double> w(100);
    for (std::size_t k = 0; k < 100; ++k) w[k] = static_cast<double>(100 - k);
    CHECK(empirical_quantile(w, 0.05) == 95);  // rank exactly 95, no rounding up
    std::vector<double> one{0.7};
    CHECK(empirical_quantile(one, 0.05) == 0.7);
    CHECK_THROWS_AS(empirical_quantile(one, 0.0), InfeasibleError);
    CHECK_THROWS_AS(empirical_quantile(one, 1.0), InfeasibleError);
    std::vector<double> none;
    CHECK_THROWS_AS(empirical_quantile(none, 0.05), InfeasibleError);
}

TEST_CASE("a single replication gives its own T value") {
    const auto rep = calibrate_quantile(20, 4, DistSpec::normal(0, 1), 1, 0.05, 9);
    CHECK(rep.quantile == simulate_t(homogeneous_layout(20, DistSpec::normal(0, 1)), 4, 9, 0));
    CHECK(rep.reps == 1);
    CHECK(rep.seed == 9);
}

TEST_CASE("calibration is reproducible and validates input") {
    const auto a = calibrate_quantile(20, 10, DistSpec::cauchy(0, 1), 300, 0.05, 4);
    const auto b = calibrate_quantile(20, 10, DistSpec::cauchy(0, 1), 300, 0.05, 4);
    CHECK(a.quantile == b.quantile);
    CHECK_THROWS_AS(calibrate_quantile(20, 10, DistSpec::normal(0, 1), 10, 1.5, 1), InfeasibleError);
    CHECK_THROWS_AS(calibrate_quantile(20, 10, DistSpec::normal(0, 1), 0, 0.05, 1), InfeasibleError);
    CHECK_THROWS_AS(calibrate_quantile(20, 20, DistSpec::normal(0, 1), 10, 0.05, 1), InfeasibleError);
    const auto back = calibration_from_json(to_json(a));
    CHECK(back.quantile == a.quantile);
    CHECK(back.dist == a.dist);
}

TEST_CASE("results do not depend on replication scheduling") {
    const auto layout = homogeneous_layout(15, DistSpec::normal(0, 1));
    const auto all = simulate_t_values(layout, 5, 50, 8);
    for (std::uint64_t r = 0; r < 50; r += 7) CHECK(all[r] == simulate_t(layout, 5, 8, r));
}

TEST_CASE("decision rule") {
    CHECK(decide(0.3, 0.8).decision == Decision::Retain);
    CHECK(decide(0.9, 0.8).decision == Decision::Reject);
    CHECK(decide(0.8, 0.8).decision == Decision::Retain);
    CHECK_THROWS_AS(decide(0.1, std::numeric_limits<double>::infinity()), InfeasibleError);
    CHECK(to_string(Decision::Reject) == "reject");
}

TEST_CASE("strong shift at n=500 is rejected at a calibrated threshold") {
    const auto cal = calibrate_quantile(500, 250, DistSpec::normal(0, 1), 100, 0.05, 31);
    const auto layout = two_sample_layout(500, 250, DistSpec::normal(0, 1), DistSpec::normal(1, 1), DistSpec::normal(0, 1));
    const auto out = two_sample_test(gen_matrix(layout, 32), 250, cal.quantile);
    CHECK(out.decision == Decision::Reject);
    CHECK(out.t_value > 10 * cal.quantile);
}

TEST_CASE("null quantiles agree across distributions") {
    double lo = 1e9, hi = -1e9;
    std::uint64_t seed = 100;
    for (const auto& d : {DistSpec::normal(0, 1), DistSpec::cauchy(0, 1), DistSpec::exponential(2)}) {
        const double q = calibrate_quantile(30, 15, d, 2000, 0.05, seed++).quantile;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    CHECK(hi - lo < 0.1);
}
