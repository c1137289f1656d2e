#pragma once

// Versioned JSON documents and small text formats shared by the CLI.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockcp/boundaries.hpp"
#include "blockcp/calibration.hpp"
#include "blockcp/distributions.hpp"
#include "blockcp/error.hpp"
#include "blockcp/metrics.hpp"
#include "blockcp/segmentation.hpp"
#include "blockcp/simgen.hpp"
#include "blockcp/version.hpp"

namespace blockcp {

using json = nlohmann::ordered_json;

inline json document_header(const std::string& schema) {
    return json{{"schema", schema}, {"schema_version", kSchemaVersion}, {"tool_version", kVersion}};
}

inline void check_schema(const json& j, const std::string& schema) {
    if (!j.is_object() || j.value("schema", std::string{}) != schema)
        throw InputError("expected a '" + schema + "' document");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw InputError("unsupported " + schema + " schema_version " + j.value("schema_version", json{}).dump());
}

inline json to_json(const SegmentationResult& r) {
    json j = document_header("blockcp.segmentation");
    j["n"] = r.n;
    j["min_seg"] = r.min_seg;
    j["l_max"] = r.levels.empty() ? 0 : r.levels.size() - 1;
    json levels = json::array();
    for (const auto& lv : r.levels)
        levels.push_back({{"cuts_count", lv.cuts_count},
                          {"cuts", lv.boundaries.cuts()},
                          {"objective", lv.objective},
                          {"s_value", lv.s_value}});
    j["levels"] = std::move(levels);
    return j;
}

/// Cuts of the level with `cuts_count` cuts in a segmentation document.
inline Boundaries cuts_from_segmentation(const json& j, std::size_t cuts_count) {
    check_schema(j, "blockcp.segmentation");
    const auto n = j.at("n").get<std::size_t>();
    for (const auto& lv : j.at("levels"))
        if (lv.at("cuts_count").get<std::size_t>() == cuts_count)
            return Boundaries(n, lv.at("cuts").get<std::vector<std::size_t>>());
    throw InfeasibleError("segmentation has no level with " + std::to_string(cuts_count) + " cuts");
}

inline json to_json(const CalibrationReport& r) {
    json j = document_header("blockcp.calibration");
    j["n"] = r.n;
    j["n1"] = r.n1;
    j["dist"] = r.dist.to_string();
    j["reps"] = r.reps;
    j["alpha"] = r.alpha;
    j["quantile"] = r.quantile;
    j["seed"] = r.seed;
    return j;
}

inline CalibrationReport calibration_from_json(const json& j) {
    check_schema(j, "blockcp.calibration");
    CalibrationReport r;
    r.n = j.at("n").get<std::size_t>();
    r.n1 = j.at("n1").get<std::size_t>();
    r.dist = parse_dist(j.at("dist").get<std::string>());
    r.reps = j.at("reps").get<std::size_t>();
    r.alpha = j.at("alpha").get<double>();
    r.quantile = j.at("quantile").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

inline json to_json(const TestOutcome& t, std::size_t n, std::size_t n1) {
    json j = document_header("blockcp.test");
    j["n"] = n;
    j["n1"] = n1;
    j["t_value"] = t.t_value;
    j["threshold"] = t.threshold;
    j["decision"] = to_string(t.decision);
    return j;
}

inline json to_json(const BlockLayout& l) {
    json j = document_header("blockcp.layout");
    j["kind"] = to_string(l.kind);
    j["n"] = l.order();
    j["cuts"] = l.cuts.cuts();
    json dists = json::array();
    for (const auto& d : l.dists) dists.push_back(d.to_string());
    j["dists"] = std::move(dists);
    const std::size_t k = l.blocks();
    json grid = json::array();
    for (std::size_t r = 0; r < k; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < k; ++c) row.push_back(l.grid[r * k + c]);
        grid.push_back(std::move(row));
    }
    j["grid"] = std::move(grid);
    return j;
}

/// Reads a layout document. For the named kinds the grid may be omitted and is
/// then derived from the kind (two_sample needs three dists, the others two).
inline BlockLayout layout_from_json(const json& j) {
    check_schema(j, "blockcp.layout");
    const auto kind = parse_layout_kind(j.at("kind").get<std::string>());
    const Boundaries cuts(j.at("n").get<std::size_t>(), j.at("cuts").get<std::vector<std::size_t>>());
    std::vector<DistSpec> dists;
    for (const auto& d : j.at("dists")) dists.push_back(parse_dist(d.get<std::string>()));

    if (!j.contains("grid")) {
        auto need = [&](std::size_t k) {
            if (dists.size() != k)
                throw InputError("layout '" + to_string(kind) + "' needs " + std::to_string(k) + " dists");
        };
        switch (kind) {
            case LayoutKind::TwoSampleBlocks:
                need(3);
                if (cuts.size() != 1) throw InputError("two_sample layout needs exactly one cut");
                return two_sample_layout(cuts.order(), cuts[0], dists[0], dists[1], dists[2]);
            case LayoutKind::BlockDiagonal: need(2); return block_diagonal_layout(cuts, dists[0], dists[1]);
            case LayoutKind::Chessboard: need(2); return chessboard_layout(cuts, dists[0], dists[1]);
            case LayoutKind::Custom: throw InputError("custom layout needs an explicit grid");
        }
    }
    BlockLayout l{kind, cuts, std::move(dists), {}};
    for (const auto& row : j.at("grid")) {
        if (row.size() != l.blocks()) throw InputError("layout grid row has wrong length");
        for (const auto& v : row) l.grid.push_back(v.get<std::size_t>());
    }
    l.validate();
    return l;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write failed for '" + path + "'");
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

/// One cut position per line ('#' comments and blank lines ignored).
inline std::vector<std::size_t> read_cut_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::vector<std::size_t> cuts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::skippable(line)) continue;
        const double v = detail::parse_real(line, line_no);
        if (v < 1 || v != std::floor(v)) throw InputError("line " + std::to_string(line_no) + ": invalid cut position");
        cuts.push_back(static_cast<std::size_t>(v));
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

inline std::string cut_list_text(const std::vector<std::size_t>& cuts) {
    std::string s;
    for (auto c : cuts) s += std::to_string(c) + "\n";
    return s;
}

}  // namespace blockcp
