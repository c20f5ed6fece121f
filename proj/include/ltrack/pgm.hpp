#ifndef LTRACK_PGM_HPP
#define LTRACK_PGM_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ltrack/image.hpp"

namespace ltrack {

namespace detail {
inline int next_pgm_token(std::istream& in) {
    // Skips whitespace and '#' comments, then reads one unsigned integer.
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw std::runtime_error("pgm: malformed header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}
}  // namespace detail

/// Reads a binary (P5) 8-bit PGM; intensities map to [0,1] by /maxval.
inline Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') throw std::runtime_error("pgm: not a P5 file: " + path);
    const int w = detail::next_pgm_token(in);
    const int h = detail::next_pgm_token(in);
    const int maxval = detail::next_pgm_token(in);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
        throw std::runtime_error("pgm: unsupported header in " + path);
    // next_pgm_token consumed the single whitespace after maxval already,
    // so the stream is positioned at the first pixel byte.
    std::string raw(static_cast<std::size_t>(w) * h, '\0');
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw std::runtime_error("pgm: truncated pixel data in " + path);
    Image img(w, h);
    for (std::size_t i = 0; i < raw.size(); ++i)
        img.px[i] = static_cast<double>(static_cast<unsigned char>(raw[i])) / maxval;
    return img;
}

/// Writes a binary (P5) 8-bit PGM; values are clamped to [0,1] and scaled by 255.
inline void write_pgm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pgm: cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::string raw(img.size(), '\0');
    for (std::size_t i = 0; i < img.px.size(); ++i) {
        const double v = std::min(1.0, std::max(0.0, img.px[i]));
        raw[i] = static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!out) throw std::runtime_error("pgm: write failed for " + path);
}

}  // namespace ltrack

#endif  // LTRACK_PGM_HPP
