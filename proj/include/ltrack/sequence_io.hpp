#ifndef LTRACK_SEQUENCE_IO_HPP
#define LTRACK_SEQUENCE_IO_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ltrack/geometry.hpp"
#include "ltrack/metrics.hpp"

namespace ltrack {

namespace fs = std::filesystem;

/// Per-sequence annotation: one optional box per frame (absent = target out
/// of view) plus free-form attribute tags.
struct SequenceAnnotation {
    std::vector<std::optional<BBox>> gt;
    std::vector<std::string> attributes;
};

namespace detail {
inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
    return out;
}

inline bool is_nan_token(std::string t) {
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return t == "nan";
}
}  // namespace detail

/// Parses groundtruth.txt: one `x,y,w,h` line per frame, `nan,nan,nan,nan`
/// (case-insensitive) when the target is absent.
inline std::vector<std::optional<BBox>> load_groundtruth(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::optional<BBox>> gt;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto tok = detail::split_csv(t);
        if (tok.size() != 4)
            throw std::runtime_error("malformed ground truth line: " + line);
        if (detail::is_nan_token(tok[0])) {
            gt.emplace_back(std::nullopt);
            continue;
        }
        try {
            BBox b{std::stod(tok[0]), std::stod(tok[1]), std::stod(tok[2]), std::stod(tok[3])};
            if (!b.valid()) throw std::runtime_error("");
            gt.emplace_back(b);
        } catch (...) {
            throw std::runtime_error("malformed ground truth line: " + line);
        }
    }
    return gt;
}

inline std::vector<std::string> load_attributes(const fs::path& path) {
    std::vector<std::string> attrs;
    std::ifstream in(path);
    if (!in) return attrs;  // attribute file is optional
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (!t.empty()) attrs.push_back(t);
    }
    return attrs;
}

/// Sorted list of the sequence's frame files (<seq>/frames/*.pgm).
inline std::vector<fs::path> list_frames(const fs::path& seq_dir) {
    const fs::path dir = seq_dir / "frames";
    if (!fs::is_directory(dir))
        throw std::runtime_error("missing frames directory: " + dir.string());
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".pgm") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    if (out.empty()) throw std::runtime_error("no frames in " + dir.string());
    return out;
}

inline std::string format_fixed(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

inline void write_boxes(const fs::path& path, std::span<const BBox> boxes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& b : boxes)
        out << format_fixed(b.x) << ',' << format_fixed(b.y) << ',' << format_fixed(b.w) << ','
            << format_fixed(b.h) << '\n';
}

inline void write_confidences(const fs::path& path, std::span<const double> conf) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (double c : conf) out << format_fixed(c) << '\n';
}

inline std::vector<BBox> load_boxes(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<BBox> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto tok = detail::split_csv(t);
        if (tok.size() != 4) throw std::runtime_error("malformed box line: " + line);
        out.push_back({std::stod(tok[0]), std::stod(tok[1]), std::stod(tok[2]), std::stod(tok[3])});
    }
    return out;
}

inline std::vector<double> load_confidences(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (!t.empty()) out.push_back(std::stod(t));
    }
    return out;
}

/// Metrics CSV: the sweep plus an f_max/tau_star summary block.
inline void write_metrics_csv(const fs::path& path, const MetricCurve& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "tau,precision,recall,f\n";
    for (std::size_t i = 0; i < c.thresholds.size(); ++i)
        out << format_fixed(c.thresholds[i]) << ',' << format_fixed(c.pr[i]) << ','
            << format_fixed(c.re[i]) << ',' << format_fixed(c.f[i]) << '\n';
    out << "f_max,tau_star\n";
    out << format_fixed(c.f_max) << ',' << format_fixed(c.tau_star) << '\n';
}

}  // namespace ltrack

#endif  // LTRACK_SEQUENCE_IO_HPP
