#pragma once

// Monte-Carlo calibration of the rejection threshold of the two-sample test.
//
// Replication r simulates one homogeneous symmetric matrix from substream
// (seed, r), so reports are reproducible and independent of thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "blockcp/distributions.hpp"
#include "blockcp/error.hpp"
#include "blockcp/rank_stats.hpp"
#include "blockcp/ranks.hpp"
#include "blockcp/simgen.hpp"

namespace blockcp {

struct CalibrationReport {
    std::size_t n = 0;
    std::size_t n1 = 0;
    DistSpec dist;
    std::size_t reps = 0;
    double alpha = 0.05;
    double quantile = 0.0;
    std::uint64_t seed = 0;
};

/// Upper empirical order statistic at 1-based rank ceil((1 - alpha) * reps),
/// no interpolation. `values` is reordered.
inline double empirical_quantile(std::vector<double>& values, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InfeasibleError("alpha must lie in (0, 1)");
    if (values.empty()) throw InfeasibleError("quantile of an empty sample");
    const double pos = (1.0 - alpha) * static_cast<double>(values.size());
    // Guard against (1 - alpha) * reps landing a rounding error above an integer.
    auto k = static_cast<std::size_t>(std::ceil(pos - 1e-9));
    k = std::clamp<std::size_t>(k, 1, values.size());
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end());
    return values[k - 1];
}

/// T(n1) of one matrix drawn from `layout` with substream (seed, rep).
inline double simulate_t(const BlockLayout& layout, std::size_t n1, std::uint64_t seed, std::uint64_t rep) {
    const SymMatrix m = gen_matrix(layout, derive_seed(seed, rep));
    return s_two_sample(compute_ranks(m), n1).t_value;
}

/// T(n1) for `reps` replications of `layout`, in replication order.
inline std::vector<double> simulate_t_values(const BlockLayout& layout, std::size_t n1, std::size_t reps,
                                             std::uint64_t seed) {
    detail::check_split(layout.order(), n1);
    std::vector<double> t(reps);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(reps); ++r)
        t[static_cast<std::size_t>(r)] = simulate_t(layout, n1, seed, static_cast<std::uint64_t>(r));
    return t;
}

inline CalibrationReport calibrate_quantile(std::size_t n, std::size_t n1, const DistSpec& dist, std::size_t reps,
                                            double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InfeasibleError("alpha must lie in (0, 1)");
    if (reps < 1) throw InfeasibleError("calibration needs at least one replication");
    if (n < 2) throw InfeasibleError("matrix order must be at least 2");
    auto t = simulate_t_values(homogeneous_layout(n, DistSpec::validated(dist)), n1, reps, seed);
    return {n, n1, dist, reps, alpha, empirical_quantile(t, alpha), seed};
}

enum class Decision { Retain, Reject };

inline std::string to_string(Decision d) { return d == Decision::Reject ? "reject" : "retain"; }

struct TestOutcome {
    Decision decision = Decision::Retain;
    double t_value = 0.0;
    double threshold = 0.0;
};

/// Rejects homogeneity iff T(n1) > threshold.
inline TestOutcome decide(double t_value, double threshold) {
    if (!std::isfinite(threshold)) throw InfeasibleError("threshold must be finite");
    return {t_value > threshold ? Decision::Reject : Decision::Retain, t_value, threshold};
}

inline TestOutcome two_sample_test(const RankTable& r, std::size_t n1, double threshold) {
    return decide(s_two_sample(r, n1).t_value, threshold);
}

inline TestOutcome two_sample_test(const SymMatrix& m, std::size_t n1, double threshold) {
    return two_sample_test(compute_ranks(m), n1, threshold);
}

/// Fraction of `reps` matrices from `layout` for which T(n1) > threshold.
inline double rejection_rate(const BlockLayout& layout, std::size_t n1, double threshold, std::size_t reps,
                             std::uint64_t seed) {
    if (reps == 0) throw InfeasibleError("rejection rate needs at least one replication");
    const auto t = simulate_t_values(layout, n1, reps, seed);
    const auto hits = std::count_if(t.begin(), t.end(), [&](double v) { return v > threshold; });
    return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace blockcp
