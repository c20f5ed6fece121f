#ifndef LTRACK_GEOMETRY_HPP
#define LTRACK_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltrack {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Axis-aligned box, real-valued pixel coordinates, top-left origin, y down.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }
    Vec2 center() const { return {cx(), cy()}; }
    double area() const { return w * h; }
    double diag() const { return std::hypot(w, h); }

    static BBox from_center(Vec2 c, double w, double h) {
        return {c.x - w / 2.0, c.y - h / 2.0, w, h};
    }

    bool valid() const {
        return w > 0.0 && h > 0.0 && std::isfinite(x) && std::isfinite(y) &&
               std::isfinite(w) && std::isfinite(h);
    }
};

/// Integer-aligned rectangle used for erasure and grid tiling.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    int right() const { return x + w; }
    int bottom() const { return y + h; }
    long long area() const { return w <= 0 || h <= 0 ? 0 : static_cast<long long>(w) * h; }
    bool empty() const { return w <= 0 || h <= 0; }
    Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }

    BBox to_bbox() const {
        return {static_cast<double>(x), static_cast<double>(y),
                static_cast<double>(w), static_cast<double>(h)};
    }

    /// Intersection with [0,fw) x [0,fh); may come back empty.
    Rect clipped(int fw, int fh) const {
        const int x0 = std::max(x, 0);
        const int y0 = std::max(y, 0);
        const int x1 = std::min(right(), fw);
        const int y1 = std::min(bottom(), fh);
        return {x0, y0, x1 - x0, y1 - y0};
    }
};

/// Intersection-over-union of two boxes; 0 when disjoint or degenerate.
inline double iou(const BBox& a, const BBox& b) {
    const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

inline double frame_diagonal(int width, int height) {
    return std::hypot(static_cast<double>(width), static_cast<double>(height));
}

}  // namespace ltrack

#endif  // LTRACK_GEOMETRY_HPP
