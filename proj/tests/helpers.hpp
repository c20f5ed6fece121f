#ifndef LTRACK_TESTS_HELPERS_HPP
#define LTRACK_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ltrack/ltrack.hpp"

namespace testutil {

using namespace ltrack;

/// Smooth low-contrast backdrop, like the synthetic benchmark scenes.
inline Frame background_frame(int w, int h, std::uint64_t seed, long index = 0) {
    return Frame(value_noise(w, h, seed, 24.0, 0.45, 0.55, 0.02), index);
}

/// High-contrast fine-grained object texture.
inline Image object_texture(int w, int h, std::uint64_t seed) {
    return value_noise(w, h, seed, 3.0, 0.05, 0.95, 0.6);
}

inline void paste(Image& frame, const Image& tex, int x, int y) {
    synth_detail::paste(frame, tex, Rect{x, y, tex.width, tex.height});
}

inline BBox box_at(double cx, double cy, double w, double h) {
    return BBox::from_center({cx, cy}, w, h);
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "ltrack_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testutil

#endif
