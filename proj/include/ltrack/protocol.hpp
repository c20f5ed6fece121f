#ifndef LTRACK_PROTOCOL_HPP
#define LTRACK_PROTOCOL_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ltrack/orchestrator.hpp"
#include "ltrack/pgm.hpp"
#include "ltrack/sequence_io.hpp"

namespace ltrack {

struct RunResult {
    std::string name;
    std::vector<FrameResult> frames;  // frames[0] is the init echo
    std::vector<std::optional<BBox>> gt;

    std::vector<BBox> boxes() const {
        std::vector<BBox> b;
        b.reserve(frames.size());
        for (const auto& f : frames) b.push_back(f.bbox);
        return b;
    }
    std::vector<double> confidences() const {
        std::vector<double> c;
        c.reserve(frames.size());
        for (const auto& f : frames) c.push_back(f.confidence);
        return c;
    }
};

inline std::vector<Image> load_bg_pool(const std::string& dir) {
    std::vector<Image> pool;
    if (dir.empty()) return pool;
    if (!fs::is_directory(dir)) throw std::runtime_error("bg_pool_dir not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) pool.push_back(read_pgm(f.string()));
    return pool;
}

/// No-reset run over one sequence directory: the tracker is initialized on
/// frame 0 with the ground-truth box and never restarted; every frame gets
/// exactly one result. Frame 0 echoes the init box at confidence 1.
inline RunResult run_sequence(const fs::path& seq_dir, const OrchestratorConfig& cfg) {
    RunResult res;
    res.name = seq_dir.filename().string();
    const auto frame_files = list_frames(seq_dir);
    res.gt = load_groundtruth(seq_dir / "groundtruth.txt");
    if (res.gt.size() != frame_files.size())
        throw std::runtime_error("ground truth length (" + std::to_string(res.gt.size()) +
                                 ") does not match frame count (" +
                                 std::to_string(frame_files.size()) + ") in " +
                                 seq_dir.string());
    if (!res.gt[0]) throw std::runtime_error("ground truth absent on frame 0 in " +
                                             seq_dir.string());

    LongTermTracker tracker(cfg, load_bg_pool(cfg.augment.bg_pool_dir));

    Frame frame(read_pgm(frame_files[0].string()), 0);
    tracker.init(frame, *res.gt[0]);

    FrameResult first;
    first.bbox = *res.gt[0];
    first.confidence = 1.0;
    first.state = TrackState::Normal;
    first.mode = Mode::Tracking;
    res.frames.push_back(first);

    for (std::size_t i = 1; i < frame_files.size(); ++i) {
        frame = Frame(read_pgm(frame_files[i].string()), static_cast<long>(i));
        res.frames.push_back(tracker.step(frame));
    }
    return res;
}

inline void write_run_outputs(const RunResult& run, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const auto boxes = run.boxes();
    const auto conf = run.confidences();
    write_boxes(out_dir / (run.name + "_bbox.txt"), boxes);
    write_confidences(out_dir / (run.name + "_confidence.txt"), conf);
}

/// Per-frame re-detection trace (frame, mode, evals, best raw and penalized
/// tile scores).
inline void write_trace_csv(const RunResult& run, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "frame,mode,evals_this_frame,best_s,best_s_prime\n";
    for (std::size_t i = 0; i < run.frames.size(); ++i) {
        const auto& f = run.frames[i];
        out << i << ',' << to_string(f.mode) << ',' << f.redetect_evals << ','
            << format_fixed(f.peak) << ',' << format_fixed(f.penalized) << '\n';
    }
}

/// Full protocol: run, write bbox/confidence files, return the in-memory run.
inline RunResult run_protocol(const fs::path& seq_dir, const OrchestratorConfig& cfg,
                              const fs::path& out_dir) {
    RunResult run = run_sequence(seq_dir, cfg);
    write_run_outputs(run, out_dir);
    return run;
}

}  // namespace ltrack

#endif  // LTRACK_PROTOCOL_HPP
