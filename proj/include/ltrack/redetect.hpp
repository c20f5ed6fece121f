#ifndef LTRACK_REDETECT_HPP
#define LTRACK_REDETECT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltrack/localizer.hpp"
#include "ltrack/rng.hpp"

namespace ltrack {

/// Multiplicative weights of the re-detection score penalty: basic
/// re-detection, distance and time.
struct PenaltyParams {
    double w_b = 0.99;
    double w_d = 0.85;
    double w_t = 0.02;

    void validate() const {
        if (!(w_b >= 0.0 && w_b <= 1.0)) throw std::invalid_argument("penalty: bad w_b");
        if (!(w_d >= 0.0 && w_d <= 1.0)) throw std::invalid_argument("penalty: bad w_d");
        if (!(w_t >= 0.0)) throw std::invalid_argument("penalty: bad w_t");
    }
};

struct RedetectConfig {
    double beta = 0.2;     // search-count scale factor
    int n_min = 2;
    int n_max = 10;
    double tau_redet = 0.25;
    std::uint64_t rng_seed = 0;
};

/// Anchor of the spatio-temporal constraint: where and when the target was
/// last seen confidently, and the image diagonal normalizing distances.
struct LostContext {
    Vec2 p_old;
    long t_old = 0;
    double d_max = 0.0;
};

/// Global search-template tiling with a shuffled visit order.
struct SearchGrid {
    std::vector<Rect> tiles;
    int tile_side = 0;
    int stride = 0;
    std::vector<int> visit_order;
    int cursor = 0;

    int tile_count() const { return static_cast<int>(tiles.size()); }
};

namespace detail {
inline std::vector<int> lattice_positions(int dim, int side, int stride) {
    std::vector<int> xs;
    for (int x = 0; x + side <= dim; x += stride) xs.push_back(x);
    if (xs.empty() || xs.back() + side < dim) xs.push_back(std::max(dim - side, 0));
    return xs;
}
}  // namespace detail

/// Builds the tiling: square tiles of side search_scale * target diagonal
/// (clamped into the frame) on a half-side stride, edge tiles clamped
/// inward, visit order freshly shuffled.
inline SearchGrid build_grid(int frame_w, int frame_h, const BBox& target, double search_scale,
                             Rng& rng) {
    SearchGrid g;
    const double want = search_scale * target.diag();
    g.tile_side = std::max(1, static_cast<int>(std::lround(
                                  std::min(want, static_cast<double>(std::min(frame_w, frame_h))))));
    g.stride = std::max(1, g.tile_side / 2);
    const auto xs = detail::lattice_positions(frame_w, g.tile_side, g.stride);
    const auto ys = detail::lattice_positions(frame_h, g.tile_side, g.stride);
    for (int y : ys)
        for (int x : xs) g.tiles.push_back({x, y, g.tile_side, g.tile_side});
    g.visit_order.resize(g.tiles.size());
    std::iota(g.visit_order.begin(), g.visit_order.end(), 0);
    rng.shuffle(g.visit_order);
    g.cursor = 0;
    return g;
}

/// Tiles to search per lost frame: ceil(beta * sqrt(A_frame / A_target)),
/// clamped to [n_min, n_max]. Non-increasing in the target area.
inline int num_searches(int frame_w, int frame_h, const BBox& target,
                        const RedetectConfig& cfg) {
    const double a_frame = static_cast<double>(frame_w) * frame_h;
    const double a_target = target.area();
    if (a_frame <= 0.0 || a_target <= 0.0) throw std::invalid_argument("num_searches: bad areas");
    // The 1e-9 nudge keeps ceil() honest when beta * sqrt(ratio) is an
    // integer that binary floating point overshoots (0.2 * 15 -> 3.0000...04).
    const double raw = cfg.beta * std::sqrt(a_frame / a_target);
    const int n = static_cast<int>(std::ceil(raw - 1e-9));
    return std::clamp(n, cfg.n_min, cfg.n_max);
}

/// Next n tiles of the shuffled visit order (n clamped to the tile count).
/// Cycles are aligned: when fewer than n tiles remain, the call is padded
/// with already-visited tiles of the current permutation and the next call
/// starts a freshly shuffled cycle, so every aligned window of
/// ceil(T/n) calls visits all T tiles.
inline std::vector<int> next_tiles(SearchGrid& grid, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("next_tiles: n must be >= 1");
    const int t = grid.tile_count();
    if (t == 0) return {};
    const int take = std::min(n, t);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(take));
    const int remaining = t - grid.cursor;
    if (remaining > take) {
        out.assign(grid.visit_order.begin() + grid.cursor,
                   grid.visit_order.begin() + grid.cursor + take);
        grid.cursor += take;
    } else {
        out.assign(grid.visit_order.begin() + grid.cursor, grid.visit_order.end());
        for (int i = 0; static_cast<int>(out.size()) < take; ++i) out.push_back(grid.visit_order[i]);
        rng.shuffle(grid.visit_order);
        grid.cursor = 0;
    }
    return out;
}

/// The spatio-temporal score penalty:
///   s' = w_b * (1 - w_d * (||p_new - p_old|| / d_max) * exp(-w_t * |t_new - t_old|)) * s
/// The distance ratio is clamped to 1 so clamped corner tiles cannot drive
/// the bracket negative.
inline double penalize(double s_new, Vec2 p_new, const LostContext& ctx, long t_new,
                       const PenaltyParams& p) {
    if (!(ctx.d_max > 0.0)) throw std::invalid_argument("penalize: d_max must be positive");
    const double ratio = std::min(distance(p_new, ctx.p_old) / ctx.d_max, 1.0);
    const double dt = std::abs(static_cast<double>(t_new - ctx.t_old));
    const double factor = p.w_b * (1.0 - p.w_d * ratio * std::exp(-p.w_t * dt));
    return factor * s_new;
}

struct Redetection {
    BBox box;
    double s_new = 0.0;
    double s_prime = 0.0;
    int tile = -1;
};

struct RedetectOutcome {
    std::optional<Redetection> accepted;
    double best_s = 0.0;
    double best_s_prime = 0.0;
    int evals = 0;
};

/// Scores the given tiles with read-only localizer evaluations, penalizes
/// each tile peak (when enabled) and accepts the best candidate iff its
/// penalized score exceeds tau_redet. Ties break toward the lowest tile index.
inline RedetectOutcome try_redetect(const Frame& frame, const Localizer& localizer,
                                    const SearchGrid& grid, std::span<const int> tile_indices,
                                    const LostContext& ctx, const PenaltyParams& params,
                                    double tau_redet, bool apply_penalty, long t_new) {
    RedetectOutcome out;
    Redetection best;
    bool have = false;
    LocalizeOptions opts;
    opts.multi_scale = false;
    for (int ti : tile_indices) {
        const Rect& tile = grid.tiles[static_cast<std::size_t>(ti)];
        opts.side_override = static_cast<double>(grid.tile_side);
        const LocalizeResult lr = localizer.localize(frame, tile.center(), opts);
        ++out.evals;
        const double s = std::max(lr.map.peak.value, 0.0);
        const double sp = apply_penalty ? penalize(s, lr.map.peak.pos, ctx, t_new, params) : s;
        const bool better = !have || sp > best.s_prime ||
                            (sp == best.s_prime && ti < best.tile);
        if (better) {
            best = {lr.box, s, sp, ti};
            have = true;
        }
    }
    if (have) {
        out.best_s = best.s_new;
        out.best_s_prime = best.s_prime;
        if (best.s_prime > tau_redet) out.accepted = best;
    }
    return out;
}

}  // namespace ltrack

#endif  // LTRACK_REDETECT_HPP
