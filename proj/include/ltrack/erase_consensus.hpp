#ifndef LTRACK_ERASE_CONSENSUS_HPP
#define LTRACK_ERASE_CONSENSUS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ltrack/image.hpp"
#include "ltrack/localizer.hpp"
#include "ltrack/rng.hpp"

namespace ltrack {

struct ErasureConfig {
    int k = 8;                      // erased copies (and rects per copy)
    double min_frac = 0.05;         // rect edge, fraction of search-region side
    double max_frac = 0.15;
    std::optional<double> fill;     // erase fill; empty = search-region mean
    double iou_agree = 0.5;         // vote agreement IoU threshold
    double agree_min = 0.6;         // minimum agreement fraction
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (k < 0) throw std::invalid_argument("erasure: k must be >= 0");
        if (!(min_frac > 0.0 && min_frac <= max_frac && max_frac < 1.0))
            throw std::invalid_argument("erasure: bad size_range");
        if (!(iou_agree > 0.0 && iou_agree < 1.0))
            throw std::invalid_argument("erasure: bad iou_agree");
        if (!(agree_min >= 0.0 && agree_min <= 1.0))
            throw std::invalid_argument("erasure: bad agree_min");
        if (fill && !(*fill >= 0.0 && *fill <= 1.0))
            throw std::invalid_argument("erasure: bad fill");
    }
};

struct ConsensusResult {
    double agreement = 1.0;
    std::vector<std::pair<BBox, double>> votes;  // (box, peak score) per copy
    TrackState corrected_state = TrackState::Normal;
};

/// k random rectangles for one erased copy: edges uniform in
/// [min_frac, max_frac] * region side, centers uniform inside the region,
/// clipped to the frame. Rects may overlap the target.
inline std::vector<Rect> sample_rects(const BBox& search_region, const ErasureConfig& cfg,
                                      Rng& rng, int frame_w, int frame_h) {
    std::vector<Rect> rects;
    rects.reserve(static_cast<std::size_t>(std::max(cfg.k, 0)));
    const double side = std::min(search_region.w, search_region.h);
    for (int i = 0; i < cfg.k; ++i) {
        const double w = rng.uniform(cfg.min_frac, cfg.max_frac) * side;
        const double h = rng.uniform(cfg.min_frac, cfg.max_frac) * side;
        const double cx = rng.uniform(search_region.x, search_region.right());
        const double cy = rng.uniform(search_region.y, search_region.bottom());
        Rect r{static_cast<int>(std::lround(cx - w / 2.0)),
               static_cast<int>(std::lround(cy - h / 2.0)), static_cast<int>(std::lround(w)),
               static_cast<int>(std::lround(h))};
        rects.push_back(r.clipped(frame_w, frame_h));
    }
    return rects;
}

/// One-level downgrade along Normal -> Uncertain -> NotFound (HardNegative
/// joins at Uncertain) when agreement falls below agree_min; never upgrades
/// unless explicitly enabled.
inline TrackState correct_state(TrackState prior, double agreement, const ErasureConfig& cfg,
                                bool allow_upgrade = false) {
    if (agreement < cfg.agree_min) {
        switch (prior) {
            case TrackState::Normal:
            case TrackState::HardNegative: return TrackState::Uncertain;
            case TrackState::Uncertain: return TrackState::NotFound;
            case TrackState::NotFound: return TrackState::NotFound;
        }
    } else if (allow_upgrade) {
        switch (prior) {
            case TrackState::Uncertain: return TrackState::Normal;
            case TrackState::NotFound: return TrackState::Uncertain;
            default: break;
        }
    }
    return prior;
}

/// Re-localizes on k copies of the frame with random rectangles erased and
/// measures how often the vote still lands on the base prediction. Never
/// mutates the localizer.
inline ConsensusResult evaluate(const Frame& frame, const BBox& base_box,
                                const ResponseMap& base_map, const Localizer& localizer,
                                const ErasureConfig& cfg, Rng& rng, TrackState prior,
                                bool allow_upgrade = false) {
    ConsensusResult res;
    res.corrected_state = prior;
    if (cfg.k <= 0) {
        res.agreement = 1.0;
        return res;
    }

    const Rect region_px{static_cast<int>(std::floor(base_map.region.x)),
                         static_cast<int>(std::floor(base_map.region.y)),
                         static_cast<int>(std::ceil(base_map.region.w)),
                         static_cast<int>(std::ceil(base_map.region.h))};
    const double fill = cfg.fill ? *cfg.fill : mean_intensity(frame, region_px);

    LocalizeOptions opts;
    opts.multi_scale = false;
    opts.side_override = base_map.region_side;

    int agree = 0;
    Frame scratch;
    for (int i = 0; i < cfg.k; ++i) {
        const auto rects = sample_rects(base_map.region, cfg, rng, frame.width, frame.height);
        scratch = frame;
        for (const auto& r : rects) erase_rect_inplace(scratch, r, fill);
        const LocalizeResult vote = localizer.localize(scratch, base_map.search_center, opts);
        if (iou(vote.box, base_box) >= cfg.iou_agree) ++agree;
        res.votes.emplace_back(vote.box, vote.map.peak.value);
    }
    res.agreement = static_cast<double>(agree) / cfg.k;
    res.corrected_state = correct_state(prior, res.agreement, cfg, allow_upgrade);
    return res;
}

}  // namespace ltrack

#endif  // LTRACK_ERASE_CONSENSUS_HPP
