#ifndef LTRACK_ORCHESTRATOR_HPP
#define LTRACK_ORCHESTRATOR_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ltrack/bg_augment.hpp"
#include "ltrack/dcf_tracker.hpp"
#include "ltrack/erase_consensus.hpp"
#include "ltrack/redetect.hpp"

namespace ltrack {

enum class Mode { Tracking, Lost };

inline const char* to_string(Mode m) { return m == Mode::Tracking ? "TRACK" : "LOST"; }

/// One output row per input frame (no-reset protocol: a box is always
/// emitted; while lost it repeats the last confident box at confidence 0).
struct FrameResult {
    BBox bbox;
    double confidence = 0.0;
    TrackState state = TrackState::NotFound;
    Mode mode = Mode::Tracking;

    // Diagnostics.
    double peak = 0.0;         // localization peak (tracking) / best tile peak (lost)
    double penalized = 0.0;    // best penalized score (lost); == peak while tracking
    int redetect_evals = 0;    // localizer evaluations spent on re-detection
    int grid_tiles = 0;        // search grid size while lost
    bool redetected = false;
    bool consensus_ran = false;
    double agreement = 1.0;
    bool downgraded = false;
};

/// Reliability of a frame: confident states score 1, Uncertain 0.5,
/// NotFound (or anything while lost) 0.
inline double assign_confidence(TrackState state, Mode mode) {
    if (mode == Mode::Lost) return 0.0;
    switch (state) {
        case TrackState::Normal:
        case TrackState::HardNegative: return 1.0;
        case TrackState::Uncertain: return 0.5;
        case TrackState::NotFound: return 0.0;
    }
    return 0.0;
}

struct OrchestratorConfig {
    TrackerConfig tracker;
    ErasureConfig erase;
    RedetectConfig redetect;
    PenaltyParams penalty;
    AugmentConfig augment;

    int lost_after = 3;        // consecutive NotFound frames before going LOST
    int consensus_every_n = 1; // run consensus on every n-th tracking frame
    bool consensus_allow_upgrade = false;

    bool enable_consensus = true;
    bool enable_random_search = true;  // false = full sliding window per lost frame
    bool enable_penalty = true;
    bool enable_bg_augment = true;

    std::uint64_t seed = 1;

    void validate() const {
        erase.validate();
        penalty.validate();
        augment.validate(tracker.tau_u);
        if (lost_after < 1) throw std::invalid_argument("lost_after must be >= 1");
        if (consensus_every_n < 1) throw std::invalid_argument("consensus_every_n must be >= 1");
    }
};

/// Long-term tracker: short-term localization with state classification and
/// consensus correction while TRACKING; random-search re-detection with the
/// spatio-temporal score penalty while LOST; a successful re-detection
/// re-initializes the model as a new first frame.
class LongTermTracker {
public:
    explicit LongTermTracker(OrchestratorConfig cfg, std::vector<Image> bg_pool = {})
        : cfg_(std::move(cfg)),
          tracker_(cfg_.tracker),
          bg_pool_(std::move(bg_pool)),
          rng_erase_(cfg_.erase.rng_seed ? cfg_.erase.rng_seed : mix_seed(cfg_.seed, 0xE5)),
          rng_redetect_(cfg_.redetect.rng_seed ? cfg_.redetect.rng_seed
                                               : mix_seed(cfg_.seed, 0x5D)),
          rng_augment_(cfg_.augment.rng_seed ? cfg_.augment.rng_seed
                                             : mix_seed(cfg_.seed, 0xA6)) {
        cfg_.validate();
    }

    const OrchestratorConfig& config() const { return cfg_; }
    const Localizer& localizer() const { return tracker_; }
    Mode mode() const { return mode_; }
    int grid_tiles() const { return grid_ ? grid_->tile_count() : 0; }
    BBox last_confident_box() const { return last_box_; }

    void init(const Frame& frame, const BBox& target) {
        reinitialize(frame, target);
        initialized_ = true;
    }

    FrameResult step(const Frame& frame) {
        if (!initialized_) throw std::logic_error("step before init");
        return mode_ == Mode::Tracking ? step_tracking(frame) : step_lost(frame);
    }

private:
    void reinitialize(const Frame& frame, const BBox& target) {
        std::vector<AugSample> extras;
        if (cfg_.enable_bg_augment && cfg_.augment.n_first > 0) {
            const double side = pipeline_side(target);
            const BBox region = tracker_.pipeline().region_rect(target.center(), side);
            const bool have_pool = !bg_pool_.empty();
            if (exterior_area(frame, region) > 0.0 || have_pool) {
                const auto bgs =
                    harvest_backgrounds(frame, region, cfg_.augment.n_first, rng_augment_,
                                        have_pool ? &bg_pool_ : nullptr);
                extras = make_samples(frame, target, bgs, true, tracker_.pipeline(),
                                      cfg_.augment.online_weight);
            }
        }
        tracker_.init(frame, target, extras);
        mode_ = Mode::Tracking;
        last_box_ = target;
        last_t_ = frame.index;
        search_center_ = target.center();
        notfound_streak_ = 0;
        grid_.reset();
    }

    FrameResult step_tracking(const Frame& frame) {
        LocalizeResult lr = tracker_.localize(frame, search_center_);
        TrackState state = classify_state(lr.map, cfg_.tracker);
        const double peak = std::max(lr.map.peak.value, 0.0);

        FrameResult res;
        res.peak = peak;
        res.penalized = peak;

        const bool consensus_prior =
            state == TrackState::Normal || state == TrackState::HardNegative ||
            (cfg_.consensus_allow_upgrade && state == TrackState::Uncertain);
        if (cfg_.enable_consensus && consensus_prior &&
            frame.index % cfg_.consensus_every_n == 0) {
            const ConsensusResult cons =
                evaluate(frame, lr.box, lr.map, tracker_, cfg_.erase, rng_erase_, state,
                         cfg_.consensus_allow_upgrade);
            res.consensus_ran = true;
            res.agreement = cons.agreement;
            res.downgraded = more_confident(state, cons.corrected_state);
            state = cons.corrected_state;
        }

        const bool confident =
            state == TrackState::Normal || state == TrackState::HardNegative;
        if (confident) {
            std::vector<AugSample> extras;
            if (cfg_.enable_bg_augment && cfg_.augment.n_online > 0 &&
                online_gate(state, peak, cfg_.augment)) {
                const BBox region = lr.map.region;
                const bool have_pool = !bg_pool_.empty();
                if (exterior_area(frame, region) > 0.0 || have_pool) {
                    const auto bgs =
                        harvest_backgrounds(frame, region, cfg_.augment.n_online, rng_augment_,
                                            have_pool ? &bg_pool_ : nullptr);
                    extras = make_samples(frame, lr.box, bgs, false, tracker_.pipeline(),
                                          cfg_.augment.online_weight);
                }
            }
            tracker_.update(frame, lr.box, state, extras);
            last_box_ = lr.box;
            last_t_ = frame.index;
            search_center_ = lr.box.center();
            notfound_streak_ = 0;
        } else if (state == TrackState::NotFound) {
            ++notfound_streak_;
            if (notfound_streak_ >= cfg_.lost_after) enter_lost(frame);
        } else {
            notfound_streak_ = 0;  // Uncertain breaks the streak
        }

        res.bbox = lr.box;
        res.state = state;
        res.mode = mode_;
        res.confidence = assign_confidence(state, mode_);
        if (mode_ == Mode::Lost) res.bbox = last_box_;
        return res;
    }

    FrameResult step_lost(const Frame& frame) {
        FrameResult res;
        res.mode = Mode::Lost;
        res.grid_tiles = grid_->tile_count();

        const int n = cfg_.enable_random_search
                          ? num_searches(frame.width, frame.height, last_box_, cfg_.redetect)
                          : grid_->tile_count();
        std::vector<int> tiles;
        if (cfg_.enable_random_search) {
            tiles = next_tiles(*grid_, n, rng_redetect_);
        } else {
            tiles.resize(static_cast<std::size_t>(grid_->tile_count()));
            std::iota(tiles.begin(), tiles.end(), 0);
        }

        const RedetectOutcome out =
            try_redetect(frame, tracker_, *grid_, tiles, lost_ctx_, cfg_.penalty,
                         cfg_.redetect.tau_redet, cfg_.enable_penalty, frame.index);
        res.redetect_evals = out.evals;
        res.peak = out.best_s;
        res.penalized = out.best_s_prime;

        if (out.accepted) {
            reinitialize(frame, out.accepted->box);
            res.redetected = true;
            res.bbox = out.accepted->box;
            res.state = TrackState::Normal;
            res.mode = Mode::Tracking;
            res.confidence = assign_confidence(res.state, res.mode);
        } else {
            res.bbox = last_box_;
            res.state = TrackState::NotFound;
            res.confidence = assign_confidence(res.state, Mode::Lost);
        }
        return res;
    }

    void enter_lost(const Frame& frame) {
        mode_ = Mode::Lost;
        grid_ = build_grid(frame.width, frame.height, last_box_, cfg_.tracker.search_scale,
                           rng_redetect_);
        lost_ctx_ = {last_box_.center(), last_t_, frame_diagonal(frame.width, frame.height)};
    }

    static bool more_confident(TrackState before, TrackState after) {
        auto rank = [](TrackState s) {
            switch (s) {
                case TrackState::Normal: return 3;
                case TrackState::HardNegative: return 2;
                case TrackState::Uncertain: return 1;
                case TrackState::NotFound: return 0;
            }
            return 0;
        };
        return rank(after) < rank(before);
    }

    double pipeline_side(const BBox& target) const {
        return tracker_.pipeline().region_side(target.diag());
    }

    OrchestratorConfig cfg_;
    DcfTracker tracker_;
    std::vector<Image> bg_pool_;
    Rng rng_erase_;
    Rng rng_redetect_;
    Rng rng_augment_;

    Mode mode_ = Mode::Tracking;
    BBox last_box_;
    long last_t_ = 0;
    Vec2 search_center_;
    int notfound_streak_ = 0;
    std::optional<SearchGrid> grid_;
    LostContext lost_ctx_;
    bool initialized_ = false;
};

}  // namespace ltrack

#endif  // LTRACK_ORCHESTRATOR_HPP
