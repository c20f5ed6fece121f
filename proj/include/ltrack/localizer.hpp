#ifndef LTRACK_LOCALIZER_HPP
#define LTRACK_LOCALIZER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ltrack/features.hpp"
#include "ltrack/geometry.hpp"
#include "ltrack/image.hpp"

namespace ltrack {

/// Per-frame tracking state of the short-term localizer.
enum class TrackState { Normal, HardNegative, Uncertain, NotFound };

inline const char* to_string(TrackState s) {
    switch (s) {
        case TrackState::Normal: return "normal";
        case TrackState::HardNegative: return "hard_negative";
        case TrackState::Uncertain: return "uncertain";
        case TrackState::NotFound: return "not_found";
    }
    return "?";
}

struct PeakInfo {
    Vec2 pos;            // frame coordinates (sub-cell refined for the main peak)
    double value = 0.0;
    int bin_x = -1;
    int bin_y = -1;
};

/// Correlation response over one search region, plus the geometry needed to
/// map bins back to frame coordinates.
struct ResponseMap {
    int size = 0;                 // square score grid, size x size
    std::vector<double> scores;
    PeakInfo peak;
    PeakInfo second_peak;         // best local max farther than delta_peak from peak
    Vec2 search_center;
    double region_side = 0.0;
    double cell = 0.0;            // pixels per feature cell
    double scale = 1.0;           // winning scale factor
    BBox region;                  // actual crop rect in frame coordinates

    double score_at(int x, int y) const {
        return scores[static_cast<std::size_t>(y) * size + x];
    }
};

struct LocalizeOptions {
    bool multi_scale = true;
    /// Override for the search-region side in pixels (<=0 keeps
    /// search_scale * target diagonal). Used for grid tiles.
    double side_override = 0.0;
};

struct LocalizeResult {
    BBox box;
    ResponseMap map;
};

/// Short-term localizer interface. `localize` never mutates the model;
/// `init` and `update` are the only mutators.
class Localizer {
public:
    virtual ~Localizer() = default;

    /// Builds a fresh model from one annotated frame (clears any previous
    /// state). `extras` are additional first-frame training samples; entries
    /// with store_in_memory=true enter the sample memory.
    virtual void init(const Frame& frame, const BBox& target,
                      std::span<const AugSample> extras = {}) = 0;

    virtual LocalizeResult localize(const Frame& frame, Vec2 search_center,
                                    const LocalizeOptions& opts = {}) const = 0;

    /// Online model update. No-op for Uncertain/NotFound states. `extras`
    /// join the solve but are never stored.
    virtual void update(const Frame& frame, const BBox& predicted, TrackState state,
                        std::span<const AugSample> extras = {}) = 0;

    virtual Vec2 target_size() const = 0;
    virtual double target_diag() const = 0;
    virtual bool initialized() const = 0;

    /// Bitwise digest of the learned model; used to verify read-only calls.
    virtual std::uint64_t state_hash() const = 0;

    virtual const FeaturePipeline& pipeline() const = 0;
};

}  // namespace ltrack

#endif  // LTRACK_LOCALIZER_HPP
