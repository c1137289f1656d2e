#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "blockcp/error.hpp"

namespace blockcp {

/// Dense symmetric n x n matrix of finite reals, row-major.
///
/// Construction validates every invariant (n >= 2, finite entries, bit-exact
/// symmetry), so a SymMatrix that exists is always valid.
class SymMatrix {
public:
    SymMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (n_ < 2) throw InputError("matrix order must be at least 2, got " + std::to_string(n_));
        if (values_.size() != n_ * n_)
            throw InputError("expected " + std::to_string(n_ * n_) + " values, got " +
                             std::to_string(values_.size()));
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double a = values_[i * n_ + j];
                const double b = values_[j * n_ + i];
                if (!std::isfinite(a) || !std::isfinite(b))
                    throw InputError("non-finite entry at (" + std::to_string(i + 1) + ", " +
                                     std::to_string(j + 1) + ")");
                if (a != b) throw SymmetryViolation(i, j, a, b);
            }
        }
    }

    /// Builds from a lower-triangle generator f(i, j), i >= j, mirrored to the
    /// upper triangle. Entries are visited row-major over the lower triangle.
    template <typename F>
    static SymMatrix from_lower(std::size_t n, F&& f) {
        std::vector<double> v(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double x = f(i, j);
                v[i * n + j] = x;
                v[j * n + i] = x;
            }
        }
        return SymMatrix(n, std::move(v));
    }

    std::size_t order() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * n_, n_};
    }
    const std::vector<double>& values() const noexcept { return values_; }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// How load_dense treats mirrored entries that are not bit-identical.
///
/// With repair off, any difference is a SymmetryViolation. With repair on,
/// pairs within `tolerance` are replaced by their average and pairs beyond it
/// are still rejected.
struct SymmetryPolicy {
    double tolerance = 0.0;
    bool repair = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view field, std::size_t line_no) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw InputError("line " + std::to_string(line_no) + ": non-numeric field '" +
                         std::string(field) + "'");
    if (!std::isfinite(x))
        throw InputError("line " + std::to_string(line_no) + ": non-finite value");
    return x;
}

/// Splits on a single delimiter; a space delimiter splits on runs of blanks.
inline std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    if (delim == ' ') {
        std::size_t pos = 0;
        while (true) {
            pos = line.find_first_not_of(" \t", pos);
            if (pos == std::string_view::npos) break;
            const auto end = line.find_first_of(" \t", pos);
            out.push_back(line.substr(pos, end == std::string_view::npos ? end : end - pos));
            if (end == std::string_view::npos) break;
            pos = end;
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto end = line.find(delim, start);
        out.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

inline bool skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

}  // namespace detail

/// Reads a dense matrix: one row per line, `delimiter`-separated fields,
/// '#' comment lines and blank lines ignored. n is the number of data rows.
inline SymMatrix load_dense(const std::string& path, char delimiter = '\t',
                            SymmetryPolicy policy = {}) {
    auto in = detail::open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::skippable(line)) continue;
        std::string_view body = line;
        if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
        std::vector<double> row;
        for (auto f : detail::split_fields(body, delimiter)) row.push_back(detail::parse_real(f, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw InputError("line " + std::to_string(line_no) + ": ragged row (" +
                             std::to_string(row.size()) + " fields, expected " +
                             std::to_string(rows.front().size()) + ")");
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n < 2) throw InputError("matrix order must be at least 2, got " + std::to_string(n));
    if (rows.front().size() != n)
        throw InputError("matrix is not square: " + std::to_string(n) + " rows of " +
                         std::to_string(rows.front().size()) + " fields");

    std::vector<double> v(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i * n + j] = rows[i][j];

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double& a = v[i * n + j];
            double& b = v[j * n + i];
            if (a == b) continue;
            if (!policy.repair || std::abs(a - b) > policy.tolerance) throw SymmetryViolation(i, j, a, b);
            const double mid = (a + b) / 2.0;
            a = mid;
            b = mid;
        }
    }
    return SymMatrix(n, std::move(v));
}

/// Reads whitespace-separated (i, j, value) records with 1-based indices.
/// Both orientations of an off-diagonal pair accumulate into the same
/// unordered pair; absent pairs are zero.
inline SymMatrix load_triples(const std::string& path, std::size_t n) {
    if (n < 2) throw InputError("matrix order must be at least 2, got " + std::to_string(n));
    auto in = detail::open_input(path);
    std::vector<double> v(n * n, 0.0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::skippable(line)) continue;
        const auto fields = detail::split_fields(detail::trim(line), ' ');
        if (fields.size() != 3)
            throw InputError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
        const double fi = detail::parse_real(fields[0], line_no);
        const double fj = detail::parse_real(fields[1], line_no);
        const double x = detail::parse_real(fields[2], line_no);
        if (fi != std::floor(fi) || fj != std::floor(fj) || fi < 1 || fj < 1 ||
            fi > static_cast<double>(n) || fj > static_cast<double>(n))
            throw InputError("line " + std::to_string(line_no) + ": index out of range 1.." +
                             std::to_string(n));
        const auto i = static_cast<std::size_t>(fi) - 1;
        const auto j = static_cast<std::size_t>(fj) - 1;
        v[i * n + j] += x;
        if (i != j) v[j * n + i] += x;
    }
    return SymMatrix(n, std::move(v));
}

/// Shortest round-trip decimal form of x.
inline std::string format_real(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

/// Writes the dense text format read by load_dense. Values round-trip exactly.
inline void write_dense(const SymMatrix& m, const std::string& path, char delimiter = '\t') {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    const std::size_t n = m.order();
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        line.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j) line += delimiter;
            line += format_real(m(i, j));
        }
        line += '\n';
        out << line;
    }
    if (!out) throw InputError("write failed for '" + path + "'");
}

/// Writes the lower triangle (diagonal included) as 1-based "i j value"
/// records, skipping zeros; load_triples reads it back to the same matrix.
inline void write_triples(const SymMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    const std::size_t n = m.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (m(i, j) != 0.0) out << (i + 1) << ' ' << (j + 1) << ' ' << format_real(m(i, j)) << '\n';
    if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace blockcp
