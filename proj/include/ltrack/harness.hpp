#ifndef LTRACK_HARNESS_HPP
#define LTRACK_HARNESS_HPP

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ltrack/config.hpp"
#include "ltrack/metrics.hpp"
#include "ltrack/protocol.hpp"
#include "ltrack/synth.hpp"

namespace ltrack {

/// Runs fn(i) for i in [0, n) on `jobs` threads. Tasks must be independent;
/// exceptions are re-thrown on the caller thread.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w]() {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// The ablation ladder: baseline plus one mechanism at a time, then the full
/// pipeline. Random search and its score penalty toggle together.
inline std::vector<std::pair<std::string, Config>> ablation_variants(const Config& base) {
    Config off = base;
    off.enable_consensus = false;
    off.enable_random_search = false;
    off.enable_penalty = false;
    off.enable_bg_augment = false;

    std::vector<std::pair<std::string, Config>> v;
    v.emplace_back("baseline", off);
    Config c = off;
    c.enable_consensus = true;
    v.emplace_back("consensus", c);
    c = off;
    c.enable_random_search = true;
    c.enable_penalty = true;
    v.emplace_back("random_search_penalty", c);
    c = off;
    c.enable_bg_augment = true;
    v.emplace_back("bg_augment", c);
    Config full = base;
    full.enable_consensus = true;
    full.enable_random_search = true;
    full.enable_penalty = true;
    full.enable_bg_augment = true;
    v.emplace_back("full", full);
    return v;
}

struct VariantResult {
    std::string variant;
    double overall = 0.0;                    // mean per-sequence f_max
    std::map<std::string, double> per_attr;  // attribute -> mean f_max
    std::vector<SequenceEval> sequences;
};

struct AblationReport {
    std::vector<VariantResult> variants;
    std::vector<std::string> attribute_columns;
};

/// Runs one tracker configuration over a set of sequences (optionally in
/// parallel) and evaluates per-sequence f_max.
inline VariantResult run_variant(const std::string& name, const Config& cfg,
                                 const std::vector<fs::path>& seq_dirs,
                                 const fs::path& out_dir, int jobs,
                                 std::vector<RunResult>* runs_out = nullptr) {
    VariantResult vr;
    vr.variant = name;
    vr.sequences.resize(seq_dirs.size());
    std::vector<RunResult> runs(seq_dirs.size());
    const auto taus = cfg.thresholds();

    parallel_for(static_cast<int>(seq_dirs.size()), jobs, [&](int i) {
        const auto& dir = seq_dirs[static_cast<std::size_t>(i)];
        RunResult run = run_sequence(dir, cfg.orchestrator());
        if (!out_dir.empty()) write_run_outputs(run, out_dir);
        const auto boxes = run.boxes();
        const auto conf = run.confidences();
        const MetricCurve curve = compute_curve(boxes, conf, run.gt, taus);
        SequenceEval ev;
        ev.name = run.name;
        ev.f_max = curve.f_max;
        const auto attrs = load_attributes(dir / "attributes.txt");
        ev.attributes.insert(attrs.begin(), attrs.end());
        vr.sequences[static_cast<std::size_t>(i)] = std::move(ev);
        runs[static_cast<std::size_t>(i)] = std::move(run);
    });

    vr.overall = overall_mean_fmax(vr.sequences);
    vr.per_attr = attribute_average(vr.sequences);
    if (runs_out) *runs_out = std::move(runs);
    return vr;
}

/// Full ablation over a rendered suite; writes per-variant outputs under
/// out_dir/<variant>/ and the summary table to out_dir/ablation.csv.
inline AblationReport run_ablation(const Config& base, const std::vector<fs::path>& seq_dirs,
                                   const fs::path& out_dir, int jobs) {
    AblationReport report;
    std::set<std::string> attr_cols;
    for (const auto& [name, cfg] : ablation_variants(base)) {
        VariantResult vr = run_variant(name, cfg, seq_dirs, out_dir / name, jobs);
        for (const auto& [a, _] : vr.per_attr) attr_cols.insert(a);
        report.variants.push_back(std::move(vr));
    }
    report.attribute_columns.assign(attr_cols.begin(), attr_cols.end());

    std::ofstream csv(out_dir / "ablation.csv");
    if (!csv) throw std::runtime_error("cannot write ablation.csv");
    csv << "variant,overall";
    for (const auto& a : report.attribute_columns) csv << ',' << a;
    csv << '\n';
    for (const auto& vr : report.variants) {
        csv << vr.variant << ',' << format_fixed(vr.overall);
        for (const auto& a : report.attribute_columns) {
            const auto it = vr.per_attr.find(a);
            csv << ',' << (it == vr.per_attr.end() ? "" : format_fixed(it->second));
        }
        csv << '\n';
    }
    return report;
}

struct BenchRow {
    std::string sequence;
    std::string variant;
    long lost_frames = 0;
    long redetect_evals = 0;
    double evals_per_lost_frame = 0.0;
    int tiles = 0;
    double wall_ms = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;  // per sequence x variant, then two ALL rows
    double eval_ratio = 0.0;     // sliding-window / random-search evals per lost frame
    double wall_ratio = 0.0;
};

/// Re-detection budget benchmark on the far-reappearance family: random
/// search vs full sliding window, counting localizer evaluations per lost
/// frame. Writes per-sequence traces next to the summary CSV.
inline BenchReport run_bench(const Config& base, const std::vector<fs::path>& seq_dirs,
                             const fs::path& out_dir, int jobs) {
    BenchReport report;
    fs::create_directories(out_dir);

    const std::pair<std::string, bool> variants[2] = {{"random_search", true},
                                                      {"sliding_window", false}};
    double evals_per[2] = {0.0, 0.0};
    double wall[2] = {0.0, 0.0};

    for (int v = 0; v < 2; ++v) {
        Config cfg = base;
        cfg.enable_random_search = variants[v].second;
        std::vector<BenchRow> rows(seq_dirs.size());
        parallel_for(static_cast<int>(seq_dirs.size()), jobs, [&](int i) {
            const auto t0 = std::chrono::steady_clock::now();
            RunResult run = run_sequence(seq_dirs[static_cast<std::size_t>(i)],
                                         cfg.orchestrator());
            const auto t1 = std::chrono::steady_clock::now();
            BenchRow row;
            row.sequence = run.name;
            row.variant = variants[v].first;
            for (const auto& f : run.frames) {
                if (f.redetect_evals > 0) {
                    ++row.lost_frames;
                    row.redetect_evals += f.redetect_evals;
                    row.tiles = std::max(row.tiles, f.grid_tiles);
                }
            }
            row.evals_per_lost_frame =
                row.lost_frames > 0 ? static_cast<double>(row.redetect_evals) / row.lost_frames
                                    : 0.0;
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            write_trace_csv(run, out_dir / (run.name + "_" + variants[v].first + "_trace.csv"));
            rows[static_cast<std::size_t>(i)] = std::move(row);
        });

        BenchRow all;
        all.sequence = "ALL";
        all.variant = variants[v].first;
        for (const auto& r : rows) {
            all.lost_frames += r.lost_frames;
            all.redetect_evals += r.redetect_evals;
            all.tiles = std::max(all.tiles, r.tiles);
            all.wall_ms += r.wall_ms;
            report.rows.push_back(r);
        }
        all.evals_per_lost_frame =
            all.lost_frames > 0 ? static_cast<double>(all.redetect_evals) / all.lost_frames : 0.0;
        evals_per[v] = all.evals_per_lost_frame;
        wall[v] = all.wall_ms;
        report.rows.push_back(all);
    }

    report.eval_ratio = evals_per[0] > 0.0 ? evals_per[1] / evals_per[0] : 0.0;
    report.wall_ratio = wall[0] > 0.0 ? wall[1] / wall[0] : 0.0;

    std::ofstream csv(out_dir / "bench.csv");
    if (!csv) throw std::runtime_error("cannot write bench.csv");
    csv << "sequence,variant,lost_frames,redetect_evals,evals_per_lost_frame,tiles,wall_ms\n";
    for (const auto& r : report.rows)
        csv << r.sequence << ',' << r.variant << ',' << r.lost_frames << ',' << r.redetect_evals
            << ',' << format_fixed(r.evals_per_lost_frame) << ',' << r.tiles << ','
            << format_fixed(r.wall_ms, 3) << '\n';
    csv << "ratio_evals_per_lost_frame,ratio_wall_time\n";
    csv << format_fixed(report.eval_ratio) << ',' << format_fixed(report.wall_ratio) << '\n';
    return report;
}

}  // namespace ltrack

#endif  // LTRACK_HARNESS_HPP
