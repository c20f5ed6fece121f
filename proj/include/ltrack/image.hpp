#ifndef LTRACK_IMAGE_HPP
#define LTRACK_IMAGE_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ltrack/geometry.hpp"

namespace ltrack {

/// Single-channel image, intensities in [0,1], row-major.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> px;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), px(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int x, int y) { return px[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return px[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::size_t size() const { return px.size(); }
    double diag() const { return frame_diagonal(width, height); }
};

/// Image plus its position in a sequence.
struct Frame : Image {
    long index = 0;

    Frame() = default;
    Frame(int w, int h, double fill = 0.0, long idx = 0) : Image(w, h, fill), index(idx) {}
    explicit Frame(Image img, long idx = 0) : Image(std::move(img)), index(idx) {}
};

inline double mean_intensity(const Image& img) {
    if (img.px.empty()) return 0.0;
    double s = 0.0;
    for (double v : img.px) s += v;
    return s / static_cast<double>(img.px.size());
}

/// Mean intensity over rect ∩ image; falls back to the whole-image mean when
/// the clipped rect is empty.
inline double mean_intensity(const Image& img, const Rect& r) {
    const Rect c = r.clipped(img.width, img.height);
    if (c.empty()) return mean_intensity(img);
    double s = 0.0;
    for (int y = c.y; y < c.bottom(); ++y)
        for (int x = c.x; x < c.right(); ++x) s += img.at(x, y);
    return s / static_cast<double>(c.area());
}

/// Bilinear sample at a continuous position; pixel (i,j) has its center at
/// (i+0.5, j+0.5). Taps outside the image read `fill`.
inline double sample_bilinear(const Image& img, double x, double y, double fill) {
    const double ax = x - 0.5;
    const double ay = y - 0.5;
    const int x0 = static_cast<int>(std::floor(ax));
    const int y0 = static_cast<int>(std::floor(ay));
    const double fx = ax - x0;
    const double fy = ay - y0;
    auto tap = [&](int ix, int iy) {
        return img.in_bounds(ix, iy) ? img.at(ix, iy) : fill;
    };
    const double top = tap(x0, y0) * (1.0 - fx) + tap(x0 + 1, y0) * fx;
    const double bot = tap(x0, y0 + 1) * (1.0 - fx) + tap(x0 + 1, y0 + 1) * fx;
    return top * (1.0 - fy) + bot * fy;
}

/// Bilinear-resampled crop of `src` to out_w x out_h. Output cell (i,j) is
/// sampled at src.x + (i+0.5)*src.w/out_w (and likewise in y). Samples that
/// fall outside the frame read `fill`, which defaults to the frame mean.
/// Throws when `src` does not overlap the frame at all.
inline Image extract_patch(const Image& frame, const BBox& src, int out_w, int out_h,
                           std::optional<double> fill = std::nullopt) {
    if (out_w < 1 || out_h < 1) throw std::invalid_argument("extract_patch: bad output size");
    if (src.right() <= 0.0 || src.bottom() <= 0.0 || src.x >= frame.width ||
        src.y >= frame.height || src.w <= 0.0 || src.h <= 0.0)
        throw std::invalid_argument("extract_patch: empty crop");

    const double sx = src.w / out_w;
    const double sy = src.h / out_h;
    double fill_v = 0.0;
    if (fill) {
        fill_v = *fill;
    } else {
        // Only pay for the mean when some tap can fall outside.
        const bool inside = src.x + 0.5 * sx - 0.5 >= 0.0 &&
                            src.y + 0.5 * sy - 0.5 >= 0.0 &&
                            src.right() - 0.5 * sx + 0.5 <= frame.width &&
                            src.bottom() - 0.5 * sy + 0.5 <= frame.height;
        if (!inside) fill_v = mean_intensity(frame);
    }

    Image out(out_w, out_h);
    for (int j = 0; j < out_h; ++j) {
        const double y = src.y + (j + 0.5) * sy;
        for (int i = 0; i < out_w; ++i) {
            const double x = src.x + (i + 0.5) * sx;
            out.at(i, j) = sample_bilinear(frame, x, y, fill_v);
        }
    }
    return out;
}

/// Copy of `f` with pixels inside `r` (clipped to the frame) set to `fill`.
inline Frame erase_rect(const Frame& f, const Rect& r, double fill) {
    Frame out = f;
    const Rect c = r.clipped(f.width, f.height);
    for (int y = c.y; y < c.bottom(); ++y)
        for (int x = c.x; x < c.right(); ++x) out.at(x, y) = fill;
    return out;
}

/// In-place variant for hot loops; same clipping rule.
inline void erase_rect_inplace(Image& img, const Rect& r, double fill) {
    const Rect c = r.clipped(img.width, img.height);
    for (int y = c.y; y < c.bottom(); ++y)
        for (int x = c.x; x < c.right(); ++x) img.at(x, y) = fill;
}

/// Background copy with `patch` pasted at `at`. `at` must match the patch
/// dimensions and lie fully inside the background.
inline Image composite(const Image& patch, const Image& background, const Rect& at) {
    if (at.w != patch.width || at.h != patch.height)
        throw std::invalid_argument("composite: rect does not match patch size");
    if (at.x < 0 || at.y < 0 || at.right() > background.width || at.bottom() > background.height)
        throw std::invalid_argument("composite: rect outside background");
    Image out = background;
    for (int y = 0; y < patch.height; ++y)
        for (int x = 0; x < patch.width; ++x) out.at(at.x + x, at.y + y) = patch.at(x, y);
    return out;
}

}  // namespace ltrack

#endif  // LTRACK_IMAGE_HPP
