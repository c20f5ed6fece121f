#ifndef LTRACK_BG_AUGMENT_HPP
#define LTRACK_BG_AUGMENT_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrack/features.hpp"
#include "ltrack/image.hpp"
#include "ltrack/localizer.hpp"
#include "ltrack/rng.hpp"

namespace ltrack {

struct AugmentConfig {
    int n_first = 5;    // composited samples at the first frame (stored)
    int n_online = 2;   // composited samples per qualifying online frame (not stored)
    double tau_aug = 0.5;  // online gate on the peak score
    std::string bg_pool_dir;  // optional directory of PGM backgrounds
    std::uint64_t rng_seed = 0;
    double online_weight = 0.5;  // weight of online samples relative to a normal sample

    void validate(double tau_u) const {
        if (n_first < 0 || n_online < 0) throw std::invalid_argument("augment: negative count");
        if (tau_aug < tau_u)
            throw std::invalid_argument("augment: tau_aug must be >= tau_u");
    }
};

/// Square pixel area of the frame not covered by the search region.
inline double exterior_area(const Frame& frame, const BBox& search_region) {
    const BBox fbox{0.0, 0.0, static_cast<double>(frame.width),
                    static_cast<double>(frame.height)};
    const double ix = std::max(0.0, std::min(fbox.right(), search_region.right()) -
                                        std::max(fbox.x, search_region.x));
    const double iy = std::max(0.0, std::min(fbox.bottom(), search_region.bottom()) -
                                        std::max(fbox.y, search_region.y));
    return fbox.area() - ix * iy;
}

/// n crops of search-region size whose centers lie outside the search region
/// (rejection-sampled over the frame). Falls back to the provided pool when
/// the frame has no exterior area; with no pool either, this is an error.
inline std::vector<Image> harvest_backgrounds(const Frame& frame, const BBox& search_region,
                                              int n, Rng& rng,
                                              const std::vector<Image>* pool = nullptr) {
    std::vector<Image> out;
    if (n <= 0) return out;
    const int side = std::max(1, static_cast<int>(std::lround(search_region.w)));
    const bool have_pool = pool != nullptr && !pool->empty();
    const bool have_exterior = exterior_area(frame, search_region) > 0.0;
    if (!have_exterior && !have_pool)
        throw std::runtime_error("harvest_backgrounds: no background source");

    auto inside_region = [&](double cx, double cy) {
        return cx >= search_region.x && cx < search_region.right() && cy >= search_region.y &&
               cy < search_region.bottom();
    };

    int attempts = 0;
    constexpr int kMaxAttempts = 10000;
    while (static_cast<int>(out.size()) < n) {
        if (have_exterior && attempts < kMaxAttempts) {
            ++attempts;
            const double cx = rng.uniform(0.0, frame.width);
            const double cy = rng.uniform(0.0, frame.height);
            if (inside_region(cx, cy)) continue;
            const BBox crop{cx - side / 2.0, cy - side / 2.0, static_cast<double>(side),
                            static_cast<double>(side)};
            out.push_back(extract_patch(frame, crop, side, side));
        } else if (have_pool) {
            const Image& src = (*pool)[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(pool->size()) - 1))];
            const double cx = rng.uniform(0.0, src.width);
            const double cy = rng.uniform(0.0, src.height);
            const BBox crop{cx - side / 2.0, cy - side / 2.0, static_cast<double>(side),
                            static_cast<double>(side)};
            out.push_back(extract_patch(src, crop, side, side));
        } else {
            throw std::runtime_error("harvest_backgrounds: no background source");
        }
    }
    return out;
}

/// Composites the target patch onto each background at the same relative
/// position (centered, matching its position in the search region), then
/// runs the shared feature transform. First-frame samples are storable.
inline std::vector<AugSample> make_samples(const Frame& frame, const BBox& target,
                                           const std::vector<Image>& backgrounds,
                                           bool first_frame, const FeaturePipeline& pipeline,
                                           double online_weight = 0.5) {
    std::vector<AugSample> out;
    if (backgrounds.empty()) return out;
    const int tw = std::max(1, static_cast<int>(std::lround(target.w)));
    const int th = std::max(1, static_cast<int>(std::lround(target.h)));
    const Image target_patch = extract_patch(frame, target, tw, th);

    const int res = pipeline.resolution();
    for (const Image& bg : backgrounds) {
        if (bg.width < tw || bg.height < th)
            throw std::invalid_argument("make_samples: background smaller than target");
        // Center the paste on the pixel that resamples onto the label's
        // center bin, matching the target's position in its own search
        // region; a naive midpoint paste biases the learned peak by ~1px.
        const double cx = (res / 2 + 0.5) * bg.width / res;
        const double cy = (res / 2 + 0.5) * bg.height / res;
        const Rect at{static_cast<int>(std::lround(cx - tw / 2.0)),
                      static_cast<int>(std::lround(cy - th / 2.0)), tw, th};
        const Image composed = composite(target_patch, bg, at);
        const Image patch = extract_patch(
            composed, {0.0, 0.0, static_cast<double>(bg.width), static_cast<double>(bg.height)},
            pipeline.resolution(), pipeline.resolution());
        AugSample s;
        // Composited samples keep their full background: the varied context
        // is the training signal (the zero label away from the center
        // teaches the filter not to respond to it). Ordinary samples are
        // target-masked instead.
        s.features = pipeline.features(patch, FeatureKind::Search);
        s.label = pipeline.label();
        s.weight = first_frame ? 1.0 : online_weight;
        s.store_in_memory = first_frame;
        out.push_back(std::move(s));
    }
    return out;
}

/// Online augmentation gate: only fully confident frames qualify.
inline bool online_gate(TrackState state, double peak, const AugmentConfig& cfg) {
    return state == TrackState::Normal && peak >= cfg.tau_aug;
}

}  // namespace ltrack

#endif  // LTRACK_BG_AUGMENT_HPP
