#pragma once

// The `blockcp` command-line tool. Kept header-only so the test suite can
// drive every subcommand in-process through run().
//
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 input data error,
// 4 infeasible parameters.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "blockcp/blockcp.hpp"
#include "blockcp/serialize.hpp"
#include "manifest.hpp"

namespace blockcp::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kInputError = 3, kInfeasible = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline char parse_delimiter(const std::string& s) {
    if (s == "tab" || s == "\\t" || s == "\t") return '\t';
    if (s == "space" || s == " ") return ' ';
    if (s == "comma" || s == ",") return ',';
    if (s.size() == 1) return s[0];
    throw UsageError("delimiter must be a single character or one of tab/space/comma, got '" + s + "'");
}

inline std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (auto f : blockcp::detail::split_fields(s, ',')) {
        const double v = blockcp::detail::parse_real(f, 0);
        if (v < 0 || v != std::floor(v)) throw UsageError("expected non-negative integers, got '" + s + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string join(const std::vector<std::size_t>& v, char sep = ',') {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += sep;
        s += std::to_string(v[k]);
    }
    return s;
}

/// Where and how a subcommand reads its input matrix.
struct MatrixSource {
    std::string path;
    std::string format = "dense";
    std::size_t order = 0;
    std::string delimiter = "tab";
    double symmetry_tol = 0.0;
    bool repair = false;

    void add_options(CLI::App* app) {
        app->add_option("-i,--input", path, "Matrix file")->required();
        app->add_option("--format", format, "Input format")
            ->check(CLI::IsMember({"dense", "triples"}))
            ->capture_default_str();
        app->add_option("--order", order, "Matrix order (required for --format triples)");
        app->add_option("--delimiter", delimiter, "Dense field delimiter: tab, space, comma or one character")
            ->capture_default_str();
        app->add_option("--symmetry-tol", symmetry_tol, "Largest |a - b| averaged by --repair-symmetry")
            ->capture_default_str();
        app->add_flag("--repair-symmetry", repair, "Average mirrored entries that differ within tolerance");
    }

    SymMatrix load() const {
        if (format == "triples") {
            if (order == 0) throw UsageError("--format triples needs --order");
            return load_triples(path, order);
        }
        return load_dense(path, parse_delimiter(delimiter), SymmetryPolicy{symmetry_tol, repair});
    }
};

}  // namespace detail

class Tool {
public:
    Tool(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args) {
        args_ = args;
        CLI::App app{"Change-point detection for block-structured symmetric matrices", "blockcp"};
        app.set_version_flag("--version", std::string(kVersion));
        app.require_subcommand(1);
        app.add_option("--threads", threads_, "Cap on worker threads (0 = all cores)");

        setup_detect(app);
        setup_test(app);
        setup_calibrate(app);
        setup_simulate(app);
        setup_evaluate(app);
        setup_summarize(app);
        setup_bench(app);
        setup_replay(app);

        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? kOk : kUsage;
        }
#ifdef _OPENMP
        if (threads_ > 0) omp_set_num_threads(static_cast<int>(threads_));
#endif
        try {
            action_();
            return kOk;
        } catch (const UsageError& e) {
            err_ << "usage error: " << e.what() << "\n";
            return kUsage;
        } catch (const InputError& e) {
            err_ << "input error: " << e.what() << "\n";
            return kInputError;
        } catch (const InfeasibleError& e) {
            err_ << "infeasible parameters: " << e.what() << "\n";
            return kInfeasible;
        } catch (const json::exception& e) {
            err_ << "input error: " << e.what() << "\n";
            return kInputError;
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
            return kInternal;
        }
    }

private:
    // ---- shared helpers -------------------------------------------------

    std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t given) {
        if (opt->count() > 0) return given;
        std::random_device rd;
        const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        replay_args_.push_back("--seed");
        replay_args_.push_back(std::to_string(s));
        return s;
    }

    void emit(const std::string& path, const std::string& text) {
        if (path.empty() || path == "-") {
            out_ << text;
        } else {
            write_text_file(path, text);
            outputs_.push_back(path);
        }
    }

    void write_manifest(const CLI::App* sub, std::optional<std::uint64_t> seed, const std::vector<std::string>& inputs,
                        double runtime_ms) {
        if (outputs_.empty()) return;
        RunManifest m;
        m.command = sub->get_name();
        m.argv = args_;
        m.argv.insert(m.argv.end(), replay_args_.begin(), replay_args_.end());
        for (const CLI::Option* opt : sub->get_options()) {
            if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
            std::string value;
            if (opt->count() > 0) {
                for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
            } else {
                value = opt->get_default_str();
            }
            m.parameters[opt->get_lnames().front()] = value;
        }
        m.seed = seed;
        for (const auto& in : inputs) m.input_digest[in] = sha256_file(in);
        m.outputs = outputs_;
        m.runtime_ms = runtime_ms;
        write_json_file(manifest_path_for(outputs_.front()), to_json(m));
    }

    // ---- detect ---------------------------------------------------------

    struct DetectOptions {
        detail::MatrixSource src;
        std::size_t lmax = 1;
        std::size_t min_seg = 1;
        std::uint64_t jitter_seed = 0;
        std::string out;
        std::string summary;
        std::size_t summary_level = 0;
        CLI::Option* jitter_opt = nullptr;
        CLI::Option* level_opt = nullptr;
    } detect_;

    void setup_detect(CLI::App& app) {
        auto* sub = app.add_subcommand("detect", "Estimate change-points for every count 0..lmax");
        detect_.src.add_options(sub);
        sub->add_option("--lmax", detect_.lmax, "Largest number of change-points")->capture_default_str();
        sub->add_option("--min-seg", detect_.min_seg, "Minimum segment length")->capture_default_str();
        detect_.jitter_opt = sub->add_option("--jitter-seed", detect_.jitter_seed, "Break ties with seeded jitter");
        sub->add_option("-o,--out", detect_.out, "Result JSON (default stdout)");
        sub->add_option("--summary", detect_.summary, "Write the block-mean matrix as a dense file");
        detect_.level_opt = sub->add_option("--summary-level", detect_.summary_level,
                                            "Change-point count used for --summary (default lmax)");
        sub->callback([this, sub] { action_ = [this, sub] { do_detect(sub); }; });
    }

    void do_detect(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = detect_;
        const SymMatrix m = o.src.load();
        check_feasible(m.order(), o.lmax, o.min_seg);
        std::optional<std::uint64_t> jitter;
        if (o.jitter_opt->count()) jitter = o.jitter_seed;
        const RankTable ranks = compute_ranks(m, jitter);
        const SegmentationResult result = dp_segment(build_cost_table(ranks), o.lmax, o.min_seg);

        json j = to_json(result);
        std::size_t tied_rows = 0;
        for (std::size_t i = 0; i < m.order(); ++i) tied_rows += ranks.has_ties(i) ? 1 : 0;
        j["rows_with_ties"] = tied_rows;
        j["jitter_seed"] = jitter ? json(*jitter) : json(nullptr);
        emit(o.out, j.dump(2) + "\n");

        if (!o.summary.empty()) {
            const std::size_t level = o.level_opt->count() ? o.summary_level : o.lmax;
            if (level > o.lmax) throw InfeasibleError("--summary-level exceeds --lmax");
            write_dense(summarize(m, result.levels[level].boundaries).expand(), o.summary);
            outputs_.push_back(o.summary);
        }
        write_manifest(sub, std::nullopt, {o.src.path}, detail::ms_since(t0));
    }

    // ---- test -----------------------------------------------------------

    struct TestOptions {
        detail::MatrixSource src;
        std::size_t n1 = 0;
        double threshold = 0.0;
        double alpha = 0.05;
        std::size_t reps = 0;
        std::string dist = "normal:0,1";
        std::uint64_t seed = 0;
        std::uint64_t jitter_seed = 0;
        std::string out;
        CLI::Option* threshold_opt = nullptr;
        CLI::Option* alpha_opt = nullptr;
        CLI::Option* reps_opt = nullptr;
        CLI::Option* seed_opt = nullptr;
        CLI::Option* jitter_opt = nullptr;
    } test_;

    void setup_test(CLI::App& app) {
        auto* sub = app.add_subcommand("test", "Two-sample homogeneity test at a given split");
        auto& o = test_;
        o.src.add_options(sub);
        sub->add_option("--n1", o.n1, "Split: columns 1..n1 vs n1+1..n")->required();
        o.threshold_opt = sub->add_option("--threshold", o.threshold, "Reject when T > threshold");
        o.alpha_opt = sub->add_option("--alpha", o.alpha, "Level for in-process calibration");
        o.reps_opt = sub->add_option("--calibrate-reps", o.reps, "Replications for in-process calibration");
        sub->add_option("--calibrate-dist", o.dist, "Null distribution for calibration")->capture_default_str();
        o.seed_opt = sub->add_option("--seed", o.seed, "Calibration seed");
        o.jitter_opt = sub->add_option("--jitter-seed", o.jitter_seed, "Break ties with seeded jitter");
        sub->add_option("-o,--out", o.out, "Decision JSON (default stdout)");
        o.threshold_opt->excludes(o.alpha_opt)->excludes(o.reps_opt);
        sub->callback([this, sub] { action_ = [this, sub] { do_test(sub); }; });
    }

    void do_test(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = test_;
        const bool calibrate = o.alpha_opt->count() > 0 && o.reps_opt->count() > 0;
        if (!o.threshold_opt->count() && !calibrate)
            throw UsageError("give either --threshold or both --alpha and --calibrate-reps");
        const SymMatrix m = o.src.load();
        std::optional<std::uint64_t> jitter;
        if (o.jitter_opt->count()) jitter = o.jitter_seed;

        double threshold = o.threshold;
        std::optional<std::uint64_t> seed;
        json calibration = nullptr;
        if (calibrate) {
            seed = resolve_seed(o.seed_opt, o.seed);
            const auto report = calibrate_quantile(m.order(), o.n1, parse_dist(o.dist), o.reps, o.alpha, *seed);
            threshold = report.quantile;
            calibration = to_json(report);
        }
        const TestOutcome outcome = two_sample_test(compute_ranks(m, jitter), o.n1, threshold);
        json j = to_json(outcome, m.order(), o.n1);
        j["calibration"] = calibration;
        emit(o.out, j.dump(2) + "\n");
        write_manifest(sub, seed, {o.src.path}, detail::ms_since(t0));
    }

    // ---- calibrate ------------------------------------------------------

    struct CalibrateOptions {
        std::size_t n = 0;
        std::size_t n1 = 0;
        double n1_frac = 0.0;
        std::string dist = "normal:0,1";
        std::size_t reps = 10000;
        double alpha = 0.05;
        std::uint64_t seed = 0;
        std::string out;
        CLI::Option* n1_opt = nullptr;
        CLI::Option* seed_opt = nullptr;
    } calibrate_;

    void setup_calibrate(CLI::App& app) {
        auto* sub = app.add_subcommand("calibrate", "Monte-Carlo (1 - alpha) quantile of T under homogeneity");
        auto& o = calibrate_;
        sub->add_option("-n,--n", o.n, "Matrix order")->required();
        o.n1_opt = sub->add_option("--n1", o.n1, "Split");
        auto* frac = sub->add_option("--n1-frac", o.n1_frac, "Split as floor(frac * n)");
        o.n1_opt->excludes(frac);
        sub->add_option("--dist", o.dist, "Null distribution, e.g. normal:0,1 cauchy:0,1 exponential:2")
            ->capture_default_str();
        sub->add_option("--reps", o.reps, "Replications")->capture_default_str();
        sub->add_option("--alpha", o.alpha, "Test level")->capture_default_str();
        o.seed_opt = sub->add_option("--seed", o.seed, "RNG seed (drawn from entropy when absent)");
        sub->add_option("-o,--out", o.out, "Report JSON (default stdout)");
        sub->callback([this, sub, frac] {
            action_ = [this, sub, frac] {
                if (!calibrate_.n1_opt->count() && !frac->count()) throw UsageError("give --n1 or --n1-frac");
                do_calibrate(sub);
            };
        });
    }

    void do_calibrate(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = calibrate_;
        const std::size_t n1 =
            o.n1_opt->count() ? o.n1 : static_cast<std::size_t>(std::floor(o.n1_frac * static_cast<double>(o.n)));
        const std::uint64_t seed = resolve_seed(o.seed_opt, o.seed);
        const auto report = calibrate_quantile(o.n, n1, parse_dist(o.dist), o.reps, o.alpha, seed);
        emit(o.out, to_json(report).dump(2) + "\n");
        write_manifest(sub, seed, {}, detail::ms_since(t0));
    }

    // ---- simulate -------------------------------------------------------

    struct SimulateOptions {
        std::string layout = "chessboard";
        std::string layout_file;
        std::size_t n = 100;
        std::size_t blocks = 10;
        std::string dist1 = "normal:1,1";
        std::string dist2 = "normal:0,1";
        std::string dist3 = "normal:0,1";
        std::size_t n1 = 0;
        std::size_t reps = 100;
        std::size_t min_seg = 1;
        std::uint64_t seed = 0;
        bool no_timing = false;
        std::string out;
        std::string freq_out;
        std::string emit_matrix;
        std::string emit_triples;
        std::string emit_truth;
        std::string emit_layout;
        CLI::Option* seed_opt = nullptr;
    } simulate_;

    void setup_simulate(CLI::App& app) {
        auto* sub = app.add_subcommand("simulate", "Synthetic benchmark campaign with known change-points");
        auto& o = simulate_;
        sub->add_option("--layout", o.layout, "two_sample, block_diagonal or chessboard")
            ->check(CLI::IsMember({"two_sample", "block_diagonal", "chessboard"}))
            ->capture_default_str();
        sub->add_option("--layout-file", o.layout_file, "Layout JSON (overrides the layout flags)");
        sub->add_option("-n,--n", o.n, "Matrix order")->capture_default_str();
        sub->add_option("--blocks", o.blocks, "Equal blocks for block_diagonal/chessboard")->capture_default_str();
        sub->add_option("--dist1", o.dist1, "L1: top-left block")->capture_default_str();
        sub->add_option("--dist2", o.dist2, "L2")->capture_default_str();
        sub->add_option("--dist3", o.dist3, "L3 (two_sample bottom-right block)")->capture_default_str();
        sub->add_option("--n1", o.n1, "Split for two_sample (default floor(n/2))");
        sub->add_option("--reps", o.reps, "Replications")->capture_default_str();
        sub->add_option("--min-seg", o.min_seg, "Minimum segment length")->capture_default_str();
        o.seed_opt = sub->add_option("--seed", o.seed, "Campaign seed (drawn from entropy when absent)");
        sub->add_flag("--no-timing", o.no_timing, "Write runtime_ms as 0 so the CSV is reproducible");
        sub->add_option("-o,--out", o.out, "Per-replication CSV (default stdout)");
        sub->add_option("--freq-out", o.freq_out, "Selection-frequency CSV");
        sub->add_option("--emit-matrix", o.emit_matrix, "Dense file of replication 0");
        sub->add_option("--emit-triples", o.emit_triples, "Triples file of replication 0");
        sub->add_option("--emit-truth", o.emit_truth, "True cuts, one per line");
        sub->add_option("--emit-layout", o.emit_layout, "Layout JSON");
        sub->callback([this, sub] { action_ = [this, sub] { do_simulate(sub); }; });
    }

    BlockLayout simulate_layout() const {
        const auto& o = simulate_;
        if (!o.layout_file.empty()) return layout_from_json(read_json_file(o.layout_file));
        if (o.layout == "two_sample") {
            const std::size_t n1 = o.n1 ? o.n1 : o.n / 2;
            return two_sample_layout(o.n, n1, parse_dist(o.dist1), parse_dist(o.dist2), parse_dist(o.dist3));
        }
        const Boundaries cuts = regular_boundaries(o.n, o.blocks);
        if (o.layout == "block_diagonal") return block_diagonal_layout(cuts, parse_dist(o.dist1), parse_dist(o.dist2));
        return chessboard_layout(cuts, parse_dist(o.dist1), parse_dist(o.dist2));
    }

    void do_simulate(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = simulate_;
        const BlockLayout layout = simulate_layout();
        const std::size_t n = layout.order();
        const Boundaries& truth = layout.cuts;
        const std::size_t k = truth.size();
        check_feasible(n, k, o.min_seg);
        const std::uint64_t seed = resolve_seed(o.seed_opt, o.seed);

        std::ostringstream csv;
        csv << "rep,seed,L,D,d1,d2,runtime_ms\n";
        std::vector<Boundaries> estimates;
        std::vector<double> ds;
        std::optional<SymMatrix> first;
        for (std::size_t rep = 0; rep < o.reps; ++rep) {
            const std::uint64_t rep_seed = derive_seed(seed, rep);
            const auto r0 = detail::Clock::now();
            const SymMatrix m = gen_matrix(layout, rep_seed);
            const auto result = dp_segment(build_cost_table(compute_ranks(m)), k, o.min_seg);
            const double runtime = o.no_timing ? 0.0 : detail::ms_since(r0);
            const Boundaries& est = result.levels[k].boundaries;
            const double d = distance_d(est, truth);
            csv << rep << ',' << rep_seed << ',' << k << ',' << format_real(d) << ',';
            if (k > 0) {
                const auto h = hausdorff_components(truth, est);
                csv << format_real(h.d1) << ',' << format_real(h.d2);
            } else {
                csv << ',';
            }
            csv << ',' << format_real(runtime) << '\n';
            ds.push_back(d);
            estimates.push_back(est);
            if (rep == 0) first.emplace(m);
        }
        emit(o.out, csv.str());
        if (first && !o.emit_matrix.empty()) {
            write_dense(*first, o.emit_matrix);
            outputs_.push_back(o.emit_matrix);
        }
        if (first && !o.emit_triples.empty()) {
            write_triples(*first, o.emit_triples);
            outputs_.push_back(o.emit_triples);
        }
        if (!o.freq_out.empty()) {
            const auto counts = selection_frequencies(estimates, n);
            std::string text = "position,count\n";
            for (std::size_t p = 1; p < n; ++p) text += std::to_string(p) + "," + std::to_string(counts[p - 1]) + "\n";
            emit(o.freq_out, text);
        }
        if (!o.emit_truth.empty()) emit(o.emit_truth, cut_list_text(truth.cuts()));
        if (!o.emit_layout.empty()) emit(o.emit_layout, to_json(layout).dump(2) + "\n");

        if (!(o.out.empty() || o.out == "-")) {
            std::vector<double> sorted = ds;
            std::sort(sorted.begin(), sorted.end());
            double median = 0.0;
            if (!sorted.empty()) {
                const std::size_t h = sorted.size() / 2;
                median = sorted.size() % 2 ? sorted[h] : (sorted[h - 1] + sorted[h]) / 2.0;
            }
            json s = document_header("blockcp.simulation_summary");
            s["reps"] = o.reps;
            s["seed"] = seed;
            s["truth"] = truth.cuts();
            s["median_D"] = median;
            out_ << s.dump(2) << "\n";
        }
        write_manifest(sub, seed, o.layout_file.empty() ? std::vector<std::string>{}
                                                        : std::vector<std::string>{o.layout_file},
                       detail::ms_since(t0));
    }

    // ---- evaluate -------------------------------------------------------

    struct EvaluateOptions {
        std::string truth;
        std::string truth_cuts;
        std::string estimate;
        std::string estimate_cuts;
        std::string result;
        std::size_t level = 0;
        std::size_t n = 0;
        std::string out;
        CLI::Option* level_opt = nullptr;
    } evaluate_;

    void setup_evaluate(CLI::App& app) {
        auto* sub = app.add_subcommand("evaluate", "Distance D and Hausdorff parts between two cut sets");
        auto& o = evaluate_;
        auto* t1 = sub->add_option("--truth", o.truth, "Reference cuts, one per line");
        auto* t2 = sub->add_option("--truth-cuts", o.truth_cuts, "Reference cuts, comma-separated");
        auto* e1 = sub->add_option("--estimate", o.estimate, "Estimated cuts, one per line");
        auto* e2 = sub->add_option("--estimate-cuts", o.estimate_cuts, "Estimated cuts, comma-separated");
        auto* e3 = sub->add_option("--result", o.result, "Segmentation JSON from detect");
        o.level_opt = sub->add_option("--level", o.level, "Change-point count to read from --result");
        sub->add_option("-n,--n", o.n, "Matrix order (taken from --result when given)");
        sub->add_option("-o,--out", o.out, "Metrics JSON (default stdout)");
        t1->excludes(t2);
        e1->excludes(e2)->excludes(e3);
        e2->excludes(e3);
        sub->callback([this, sub] { action_ = [this, sub] { do_evaluate(sub); }; });
    }

    void do_evaluate(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = evaluate_;
        std::vector<std::string> inputs;
        std::vector<std::size_t> truth;
        if (!o.truth.empty()) {
            truth = read_cut_list(o.truth);
            inputs.push_back(o.truth);
        } else if (!o.truth_cuts.empty()) {
            truth = detail::parse_size_list(o.truth_cuts);
        } else {
            throw UsageError("give --truth or --truth-cuts");
        }
        std::vector<std::size_t> est;
        std::size_t n = o.n;
        if (!o.result.empty()) {
            const json r = read_json_file(o.result);
            inputs.push_back(o.result);
            const Boundaries b = cuts_from_segmentation(r, o.level_opt->count() ? o.level : truth.size());
            est = b.cuts();
            n = b.order();
        } else if (!o.estimate.empty()) {
            est = read_cut_list(o.estimate);
            inputs.push_back(o.estimate);
        } else if (!o.estimate_cuts.empty()) {
            est = detail::parse_size_list(o.estimate_cuts);
        } else {
            throw UsageError("give --estimate, --estimate-cuts or --result");
        }
        if (n == 0) throw UsageError("give --n (matrix order)");

        json j = document_header("blockcp.evaluation");
        j["n"] = n;
        j["truth"] = truth;
        j["estimate"] = est;
        j["D"] = est.size() == truth.size() ? json(distance_d(est, truth, n)) : json(nullptr);
        if (!truth.empty() && !est.empty()) {
            const auto h = hausdorff_components(truth, est);
            j["d1"] = h.d1;
            j["d2"] = h.d2;
            j["d"] = h.d;
        } else {
            j["d1"] = j["d2"] = j["d"] = nullptr;
        }
        emit(o.out, j.dump(2) + "\n");
        write_manifest(sub, std::nullopt, inputs, detail::ms_since(t0));
    }

    // ---- summarize ------------------------------------------------------

    struct SummarizeOptions {
        detail::MatrixSource src;
        std::string cuts;
        std::string cuts_list;
        std::string result;
        std::size_t level = 0;
        std::string out;
        std::string means_out;
    } summarize_;

    void setup_summarize(CLI::App& app) {
        auto* sub = app.add_subcommand("summarize", "Block-wise mean matrix for a set of cuts");
        auto& o = summarize_;
        o.src.add_options(sub);
        auto* c1 = sub->add_option("--cuts", o.cuts, "Cuts, one per line");
        auto* c2 = sub->add_option("--cuts-list", o.cuts_list, "Cuts, comma-separated");
        auto* c3 = sub->add_option("--result", o.result, "Segmentation JSON from detect");
        sub->add_option("--level", o.level, "Change-point count to read from --result")->needs(c3);
        c1->excludes(c2)->excludes(c3);
        c2->excludes(c3);
        sub->add_option("-o,--out", o.out, "Expanded dense matrix")->required();
        sub->add_option("--means-out", o.means_out, "Block means JSON");
        sub->callback([this, sub] { action_ = [this, sub] { do_summarize(sub); }; });
    }

    void do_summarize(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = summarize_;
        const SymMatrix m = o.src.load();
        std::vector<std::string> inputs{o.src.path};
        Boundaries cuts;
        if (!o.result.empty()) {
            cuts = cuts_from_segmentation(read_json_file(o.result), o.level);
            inputs.push_back(o.result);
        } else if (!o.cuts.empty()) {
            cuts = Boundaries(m.order(), read_cut_list(o.cuts));
            inputs.push_back(o.cuts);
        } else if (!o.cuts_list.empty()) {
            cuts = Boundaries(m.order(), detail::parse_size_list(o.cuts_list));
        } else {
            throw UsageError("give --cuts, --cuts-list or --result");
        }
        const SummaryMatrix s = summarize(m, cuts);
        write_dense(s.expand(), o.out);
        outputs_.push_back(o.out);
        if (!o.means_out.empty()) {
            json j = document_header("blockcp.summary");
            j["n"] = m.order();
            j["cuts"] = cuts.cuts();
            json rows = json::array();
            for (std::size_t r = 0; r < s.blocks(); ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < s.blocks(); ++c) row.push_back(s.mean(r, c));
                rows.push_back(std::move(row));
            }
            j["block_means"] = std::move(rows);
            emit(o.means_out, j.dump(2) + "\n");
        }
        write_manifest(sub, std::nullopt, inputs, detail::ms_since(t0));
    }

    // ---- bench ----------------------------------------------------------

    struct BenchOptions {
        std::string sizes = "100,200,300,400,500";
        std::size_t lmax = 75;
        std::uint64_t seed = 1;
        std::string out;
    } bench_;

    void setup_bench(CLI::App& app) {
        auto* sub = app.add_subcommand("bench", "Detection timing curve over matrix orders");
        auto& o = bench_;
        sub->add_option("--sizes", o.sizes, "Comma-separated orders")->capture_default_str();
        sub->add_option("--lmax", o.lmax, "Largest change-point count (clamped to n - 1)")->capture_default_str();
        sub->add_option("--seed", o.seed, "Seed of the benchmark matrices")->capture_default_str();
        sub->add_option("-o,--out", o.out, "Timing CSV (default stdout)");
        sub->callback([this, sub] { action_ = [this, sub] { do_bench(sub); }; });
    }

    void do_bench(const CLI::App* sub) {
        const auto t0 = detail::Clock::now();
        auto& o = bench_;
        std::string csv = "n,l_max,rank_ms,cost_ms,dp_ms,total_ms\n";
        for (std::size_t n : detail::parse_size_list(o.sizes)) {
            const BlockLayout layout =
                n % 10 == 0 && n >= 10
                    ? chessboard_layout(regular_boundaries(n, 10), DistSpec::normal(1, 1), DistSpec::normal(0, 1))
                    : homogeneous_layout(n, DistSpec::normal(0, 1));
            const SymMatrix m = gen_matrix(layout, derive_seed(o.seed, n));
            const std::size_t lmax = std::min(o.lmax, n - 1);
            const auto a = detail::Clock::now();
            const RankTable r = compute_ranks(m);
            const auto b = detail::Clock::now();
            const CostTable c = build_cost_table(r);
            const auto d = detail::Clock::now();
            dp_segment(c, lmax);
            const auto e = detail::Clock::now();
            auto ms = [](auto x, auto y) { return std::chrono::duration<double, std::milli>(y - x).count(); };
            csv += std::to_string(n) + "," + std::to_string(lmax) + "," + format_real(ms(a, b)) + "," +
                   format_real(ms(b, d)) + "," + format_real(ms(d, e)) + "," + format_real(ms(a, e)) + "\n";
        }
        emit(o.out, csv);
        write_manifest(sub, o.seed, {}, detail::ms_since(t0));
    }

    // ---- replay ---------------------------------------------------------

    std::string replay_path_;

    void setup_replay(CLI::App& app) {
        auto* sub = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
        sub->add_option("manifest", replay_path_, "Manifest JSON")->required();
        sub->callback([this] { action_ = [this] { do_replay(); }; });
    }

    void do_replay() {
        const RunManifest m = manifest_from_json(read_json_file(replay_path_));
        for (const auto& [path, digest] : m.input_digest)
            if (sha256_file(path) != digest) throw InputError("input '" + path + "' changed since the manifest was written");
        Tool inner(out_, err_);
        const int code = inner.run(m.argv);
        if (code != kOk) throw std::runtime_error("replayed command failed with exit code " + std::to_string(code));
    }

    std::ostream& out_;
    std::ostream& err_;
    std::vector<std::string> args_;
    std::vector<std::string> replay_args_;
    std::vector<std::string> outputs_;
    std::size_t threads_ = 0;
    std::function<void()> action_;
};

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Tool tool(out, err);
    return tool.run(args);
}

}  // namespace blockcp::cli
