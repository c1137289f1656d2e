#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "blockcp/error.hpp"
#include "blockcp/rng.hpp"
#include "blockcp/sym_matrix.hpp"

namespace blockcp {

enum class Family { Normal, Cauchy, Exponential };

/// A cell distribution.
///   Normal:      first = mean, second = standard deviation (> 0)
///   Cauchy:      first = location, second = scale (> 0)
///   Exponential: first = rate (> 0), second unused
struct DistSpec {
    Family family = Family::Normal;
    double first = 0.0;
    double second = 1.0;

    static DistSpec normal(double mean, double sd) { return validated({Family::Normal, mean, sd}); }
    static DistSpec cauchy(double location, double scale) { return validated({Family::Cauchy, location, scale}); }
    static DistSpec exponential(double rate) { return validated({Family::Exponential, rate, 0.0}); }

    static DistSpec validated(DistSpec d) {
        const bool ok = d.family == Family::Exponential ? d.first > 0.0 && std::isfinite(d.first)
                                                        : d.second > 0.0 && std::isfinite(d.second) &&
                                                              std::isfinite(d.first);
        if (!ok) throw InputError("invalid distribution parameters: " + d.to_string());
        return d;
    }

    /// "normal:0,1", "cauchy:1,2", "exponential:2".
    std::string to_string() const {
        switch (family) {
            case Family::Normal: return "normal:" + format_real(first) + "," + format_real(second);
            case Family::Cauchy: return "cauchy:" + format_real(first) + "," + format_real(second);
            case Family::Exponential: return "exponential:" + format_real(first);
        }
        return {};
    }

    friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

/// Parses the to_string() form. Family names may be abbreviated to
/// norm/cau/exp.
inline DistSpec parse_dist(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw InputError("distribution '" + std::string(text) + "' lacks ':'");
    const std::string name(text.substr(0, colon));
    std::vector<double> params;
    for (auto f : detail::split_fields(text.substr(colon + 1), ',')) params.push_back(detail::parse_real(f, 0));

    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw InputError("distribution '" + std::string(text) + "' expects " + std::to_string(k) +
                             " parameter(s)");
    };
    if (name == "normal" || name == "norm") {
        need(2);
        return DistSpec::normal(params[0], params[1]);
    }
    if (name == "cauchy" || name == "cau") {
        need(2);
        return DistSpec::cauchy(params[0], params[1]);
    }
    if (name == "exponential" || name == "exp") {
        need(1);
        return DistSpec::exponential(params[0]);
    }
    throw InputError("unsupported distribution family '" + name + "'");
}

/// One draw. Normal: mean + sd * Box-Muller; Cauchy: location + scale *
/// tan(pi (U - 1/2)); Exponential: -ln(U) / rate.
inline double sample_dist(const DistSpec& d, Rng& rng) {
    switch (d.family) {
        case Family::Normal: return d.first + d.second * rng.standard_normal();
        case Family::Cauchy: return d.first + d.second * std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
        case Family::Exponential: return -std::log(rng.uniform_open()) / d.first;
    }
    return 0.0;
}

}  // namespace blockcp
