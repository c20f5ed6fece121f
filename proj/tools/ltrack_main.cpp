// ltrack command-line interface: tracking runs, evaluation, synthetic
// sequence generation, ablations and the re-detection budget benchmark.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "ltrack/ltrack.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

ltrack::Config load_config(const std::string& path) {
    return path.empty() ? ltrack::Config::defaults() : ltrack::Config::load(path);
}

int cmd_run(const std::string& seq, const std::string& config, const std::string& out,
            bool trace) {
    const ltrack::Config cfg = load_config(config);
    const ltrack::RunResult run = ltrack::run_protocol(seq, cfg.orchestrator(), out);
    if (trace) ltrack::write_trace_csv(run, fs::path(out) / (run.name + "_trace.csv"));
    std::cout << "ran " << run.name << ": " << run.frames.size() << " frames\n";
    return kExitOk;
}

int cmd_eval(const std::string& seq, const std::string& pred, const std::string& out,
             const std::string& config) {
    const ltrack::Config cfg = load_config(config);
    const std::string name = fs::path(seq).filename().string();
    const auto gt = ltrack::load_groundtruth(fs::path(seq) / "groundtruth.txt");
    const auto boxes = ltrack::load_boxes(fs::path(pred) / (name + "_bbox.txt"));
    const auto conf = ltrack::load_confidences(fs::path(pred) / (name + "_confidence.txt"));
    if (boxes.size() != gt.size() || conf.size() != gt.size())
        throw std::runtime_error("eval: prediction/ground-truth length mismatch");
    const auto curve =
        ltrack::compute_curve(boxes, conf, gt, cfg.thresholds());
    if (!fs::path(out).parent_path().empty())
        fs::create_directories(fs::path(out).parent_path());
    ltrack::write_metrics_csv(out, curve);
    std::cout << name << ": f_max=" << ltrack::format_fixed(curve.f_max)
              << " tau_star=" << ltrack::format_fixed(curve.tau_star) << "\n";
    return kExitOk;
}

int cmd_synth(const std::string& script_path, std::uint64_t suite_seed, bool suite,
              const std::string& out) {
    if (suite) {
        const auto scripts = ltrack::standard_suite(suite_seed);
        ltrack::render_suite(scripts, out);
        std::cout << "rendered " << scripts.size() << " sequences under " << out << "\n";
        return kExitOk;
    }
    std::ifstream in(script_path);
    if (!in) throw std::runtime_error("cannot open script: " + script_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const ltrack::SceneScript script = ltrack::parse_script(ss.str());
    const fs::path dir = fs::path(out) / script.name;
    ltrack::render(script, dir);
    std::cout << "rendered " << script.frames << " frames to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_ablate(std::uint64_t suite_seed, const std::string& out, const std::string& config,
               int jobs) {
    const ltrack::Config cfg = load_config(config);
    const fs::path out_dir(out);
    const auto dirs = ltrack::render_suite(ltrack::standard_suite(suite_seed),
                                           out_dir / "suite");
    const auto report = ltrack::run_ablation(cfg, dirs, out_dir, jobs);
    std::cout << "variant,overall\n";
    for (const auto& v : report.variants)
        std::cout << v.variant << ',' << ltrack::format_fixed(v.overall) << "\n";
    std::cout << "wrote " << (out_dir / "ablation.csv").string() << "\n";
    return kExitOk;
}

int cmd_bench(std::uint64_t suite_seed, const std::string& out, const std::string& config,
              int jobs) {
    const ltrack::Config cfg = load_config(config);
    const fs::path out_dir(out);
    const auto suite = ltrack::standard_suite(suite_seed);
    std::vector<ltrack::SceneScript> family_c;
    for (const auto& s : suite)
        if (s.name.rfind("c", 0) == 0) family_c.push_back(s);
    const auto dirs = ltrack::render_suite(family_c, out_dir / "suite");
    const auto report = ltrack::run_bench(cfg, dirs, out_dir, jobs);
    std::cout << "evals/lost-frame ratio (sliding/random): "
              << ltrack::format_fixed(report.eval_ratio) << "\n";
    std::cout << "wall-time ratio (sliding/random): "
              << ltrack::format_fixed(report.wall_ratio) << "\n";
    std::cout << "wrote " << (out_dir / "bench.csv").string() << "\n";
    return kExitOk;
}

int cmd_dump_config(const std::string& out) {
    const std::string text = ltrack::Config::defaults().dump();
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"long-term tracking toolkit"};
    app.require_subcommand(1);

    std::string seq, config, out, pred, script;
    std::uint64_t suite_seed = 42;
    bool trace = false, suite = false;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "track one sequence (no-reset protocol)");
    run->add_option("--seq", seq, "sequence directory")->required();
    run->add_option("--config", config, "config file (flat key = value)");
    run->add_option("--out", out, "output directory")->required();
    run->add_flag("--trace", trace, "also write a per-frame re-detection trace");

    auto* eval = app.add_subcommand("eval", "score tracker output against ground truth");
    eval->add_option("--seq", seq, "sequence directory")->required();
    eval->add_option("--pred", pred, "directory with <seq>_bbox/_confidence files")->required();
    eval->add_option("--out", out, "metrics CSV path")->required();
    eval->add_option("--config", config, "config file");

    auto* synth = app.add_subcommand("synth", "render synthetic sequences");
    synth->add_option("--script", script, "scene script file");
    synth->add_flag("--suite", suite, "render the 20-sequence standard suite");
    synth->add_option("--suite-seed", suite_seed, "suite seed");
    synth->add_option("--out", out, "output directory")->required();

    auto* ablate = app.add_subcommand("ablate", "run the mechanism ablation ladder");
    ablate->add_option("--suite-seed", suite_seed, "suite seed");
    ablate->add_option("--out", out, "output directory")->required();
    ablate->add_option("--config", config, "config file");
    ablate->add_option("--jobs", jobs, "parallel sequence jobs");

    auto* bench = app.add_subcommand("bench", "re-detection budget benchmark");
    bench->add_option("--suite-seed", suite_seed, "suite seed");
    bench->add_option("--out", out, "output directory")->required();
    bench->add_option("--config", config, "config file");
    bench->add_option("--jobs", jobs, "parallel sequence jobs");

    auto* dump = app.add_subcommand("dump-default-config", "print every config default");
    dump->add_option("--out", out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(seq, config, out, trace);
        if (app.got_subcommand(eval)) return cmd_eval(seq, pred, out, config);
        if (app.got_subcommand(synth)) {
            if (!suite && script.empty()) {
                std::cerr << "synth: need --script or --suite\n";
                return kExitUsage;
            }
            return cmd_synth(script, suite_seed, suite, out);
        }
        if (app.got_subcommand(ablate)) return cmd_ablate(suite_seed, out, config, jobs);
        if (app.got_subcommand(bench)) return cmd_bench(suite_seed, out, config, jobs);
        if (app.got_subcommand(dump)) return cmd_dump_config(out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
