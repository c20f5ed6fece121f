#ifndef LTRACK_DCF_TRACKER_HPP
#define LTRACK_DCF_TRACKER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltrack/features.hpp"
#include "ltrack/localizer.hpp"

namespace ltrack {

struct TrackerConfig {
    double tau_nf = 0.10;          // below: not found
    double tau_u = 0.25;           // below: uncertain
    double rho = 0.80;             // hard-negative second-peak ratio
    double delta_peak_frac = 0.30; // second-peak exclusion radius, fraction of target diag
    double learning_rate = 0.01;   // per-update weight of the new sample
    int capacity = 50;             // sample memory size
    double mu = 0.01;              // ridge regularizer
    double search_scale = 5.0;     // search-region side / target diagonal
    int resolution = 128;          // feature grid side
    double scale_step = 0.02;      // multi-scale refinement: {1-s, 1, 1+s}
    double feature_gain = 0.12;   // see FeatureConfig::feature_gain
    double w_intensity = 0.10;     // see FeatureConfig::w_intensity

    FeatureConfig feature_config() const {
        FeatureConfig fc;
        fc.resolution = resolution;
        fc.search_scale = search_scale;
        fc.feature_gain = feature_gain;
        fc.w_intensity = w_intensity;
        return fc;
    }
};

/// Four-way state from a response map: peak below tau_nf is NotFound, below
/// tau_u Uncertain; a strong secondary peak (>= rho * peak) makes a confident
/// frame HardNegative, otherwise Normal.
inline TrackState classify_state(const ResponseMap& rm, const TrackerConfig& cfg) {
    const double s = rm.peak.value;
    if (s < cfg.tau_nf) return TrackState::NotFound;
    if (s < cfg.tau_u) return TrackState::Uncertain;
    if (rm.second_peak.value >= cfg.rho * s) return TrackState::HardNegative;
    return TrackState::Normal;
}

namespace detail {

/// Solves the 3x3 Hermitian positive-definite system (A + mu*I) f = b
/// in place via Cholesky. A is row-major, 9 entries.
inline void solve3x3_hermitian(const std::complex<double>* A, double mu,
                               const std::complex<double>* b, std::complex<double>* f) {
    using C = std::complex<double>;
    const double a00 = A[0].real() + mu;
    const double l00 = std::sqrt(std::max(a00, 1e-300));
    const C l10 = std::conj(A[1]) / l00;  // A[1,0] = conj(A[0,1])
    const C l20 = std::conj(A[2]) / l00;
    const double a11 = A[4].real() + mu - std::norm(l10);
    const double l11 = std::sqrt(std::max(a11, 1e-300));
    const C l21 = (std::conj(A[5]) - l20 * std::conj(l10)) / l11;
    const double a22 = A[8].real() + mu - std::norm(l20) - std::norm(l21);
    const double l22 = std::sqrt(std::max(a22, 1e-300));

    // L z = b
    const C z0 = b[0] / l00;
    const C z1 = (b[1] - l10 * z0) / l11;
    const C z2 = (b[2] - l20 * z0 - l21 * z1) / l22;
    // L^H f = z
    f[2] = z2 / l22;
    f[1] = (z1 - std::conj(l21) * f[2]) / l11;
    f[0] = (z0 - std::conj(l10) * f[1] - std::conj(l20) * f[2]) / l00;
}

inline Image blur3x3(const Image& in) {
    // Separable binomial [1 2 1]/4.
    Image tmp(in.width, in.height), out(in.width, in.height);
    auto cx = [&](int x) { return std::clamp(x, 0, in.width - 1); };
    auto cy = [&](int y) { return std::clamp(y, 0, in.height - 1); };
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            tmp.at(x, y) = 0.25 * in.at(cx(x - 1), y) + 0.5 * in.at(x, y) +
                           0.25 * in.at(cx(x + 1), y);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            out.at(x, y) = 0.25 * tmp.at(x, cy(y - 1)) + 0.5 * tmp.at(x, y) +
                           0.25 * tmp.at(x, cy(y + 1));
    return out;
}

inline Image rotate_about_center(const Image& in, double degrees) {
    const double rad = degrees * 3.141592653589793 / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    const double cx = in.width / 2.0, cy = in.height / 2.0;
    const double fill = mean_intensity(in);
    Image out(in.width, in.height);
    for (int y = 0; y < in.height; ++y) {
        for (int x = 0; x < in.width; ++x) {
            const double dx = (x + 0.5) - cx, dy = (y + 0.5) - cy;
            const double sx = cx + c * dx + s * dy;
            const double sy = cy - s * dx + c * dy;
            out.at(x, y) = sample_bilinear(in, sx, sy, fill);
        }
    }
    return out;
}

inline Image hflip(const Image& in) {
    Image out(in.width, in.height);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x) out.at(x, y) = in.at(in.width - 1 - x, y);
    return out;
}

inline std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace detail

/// Discriminative correlation-filter localizer with online ridge regression.
///
/// The filter is the exact solution of the weighted ridge problem
///   min_f  sum_i w_i ||corr(x_i, f) - y_i||^2 + mu ||f||^2
/// over the sample memory (circular correlation, multi-channel). The DFT
/// diagonalizes the normal equations into independent 3x3 Hermitian systems
/// per frequency bin, which are solved directly; weighted outer-product
/// accumulators are maintained incrementally across updates.
class DcfTracker final : public Localizer {
public:
    struct MemoryEntry {
        Spectra3 xhat;
        double weight = 0.0;
        bool augmented = false;
        std::uint64_t id = 0;
    };

    explicit DcfTracker(TrackerConfig cfg = {})
        : cfg_(cfg), pipeline_(cfg.feature_config()) {}

    const TrackerConfig& config() const { return cfg_; }
    const FeaturePipeline& pipeline() const override { return pipeline_; }

    void init(const Frame& frame, const BBox& target,
              std::span<const AugSample> extras = {}) override {
        if (!target.valid()) throw std::invalid_argument("init: invalid target box");
        const BBox fbox{0.0, 0.0, static_cast<double>(frame.width),
                        static_cast<double>(frame.height)};
        if (iou(target, fbox) <= 0.0 || target.cx() < 0 || target.cx() >= frame.width ||
            target.cy() < 0 || target.cy() >= frame.height)
            throw std::invalid_argument("init: target outside frame");

        entries_.clear();
        next_id_ = 0;
        target_w_ = target.w;
        target_h_ = target.h;

        const double side = pipeline_.region_side(target.diag());
        const Image base = pipeline_.crop(frame, target.center(), side);

        const auto train = FeatureKind::Train;
        store_sample(pipeline_.features(base, train), 1.0, false);
        store_sample(pipeline_.features(detail::blur3x3(base), train), 1.0, false);
        store_sample(pipeline_.features(detail::rotate_about_center(base, 5.0), train), 1.0, false);
        store_sample(pipeline_.features(detail::rotate_about_center(base, -5.0), train), 1.0,
                     false);
        store_sample(pipeline_.features(detail::hflip(base), train), 1.0, false);
        for (const auto& ex : extras)
            if (ex.store_in_memory) store_sample(ex.features, ex.weight, true);

        normalize_weights();
        rebuild_accumulators();

        std::vector<std::pair<Spectra3, double>> loose;
        for (const auto& ex : extras)
            if (!ex.store_in_memory) loose.emplace_back(pipeline_.spectra(ex.features), ex.weight);
        solve(loose);
        initialized_ = true;
    }

    LocalizeResult localize(const Frame& frame, Vec2 search_center,
                            const LocalizeOptions& opts = {}) const override {
        if (!initialized_) throw std::logic_error("localize before init");
        const double diag = target_diag();
        const double base_side =
            opts.side_override > 0.0 ? opts.side_override : pipeline_.region_side(diag);

        // Non-unity scales must clearly beat the current one, and accepted
        // size changes are damped; both stop the slow shrink bias of
        // windowed correlation filters.
        static constexpr double kScalePreference = 0.97;
        static constexpr double kScaleDamping = 0.5;
        std::vector<double> scales{1.0};
        if (opts.multi_scale)
            scales = {1.0 - cfg_.scale_step, 1.0, 1.0 + cfg_.scale_step};

        ResponseMap best;
        double best_sel = -std::numeric_limits<double>::infinity();
        for (double sc : scales) {
            ResponseMap rm = respond(frame, search_center, base_side * sc);
            rm.scale = sc;
            const double sel = rm.peak.value * (sc == 1.0 ? 1.0 : kScalePreference);
            if (sel > best_sel) {
                best_sel = sel;
                best = std::move(rm);
            }
        }
        finalize_peaks(best, diag);
        LocalizeResult res;
        res.map = std::move(best);
        double sw = 1.0;
        if (opts.side_override <= 0.0 && res.map.scale != 1.0)
            sw = 1.0 + kScaleDamping * (res.map.scale - 1.0);
        res.box = BBox::from_center(res.map.peak.pos, target_w_ * sw, target_h_ * sw);
        return res;
    }

    void update(const Frame& frame, const BBox& predicted, TrackState state,
                std::span<const AugSample> extras = {}) override {
        if (!initialized_) throw std::logic_error("update before init");
        if (state == TrackState::Uncertain || state == TrackState::NotFound) return;
        if (!predicted.valid()) return;

        target_w_ = predicted.w;
        target_h_ = predicted.h;

        const double side = pipeline_.region_side(predicted.diag());
        Spectra3 xhat = pipeline_.spectra(
            pipeline_.features_at(frame, predicted.center(), side, FeatureKind::Train));

        const double lr = cfg_.learning_rate;
        for (auto& e : entries_) e.weight *= (1.0 - lr);
        scale_accumulators(1.0 - lr);

        if (static_cast<int>(entries_.size()) >= cfg_.capacity) evict_lowest_weight();

        accumulate(xhat, lr, +1.0);
        entries_.push_back({std::move(xhat), lr, false, next_id_++});
        normalize_weights_and_accumulators();

        std::vector<std::pair<Spectra3, double>> loose;
        const double newest_w = entries_.back().weight;
        for (const auto& ex : extras)
            loose.emplace_back(pipeline_.spectra(ex.features), ex.weight * newest_w);
        solve(loose);
    }

    Vec2 target_size() const override { return {target_w_, target_h_}; }
    double target_diag() const override { return std::hypot(target_w_, target_h_); }
    bool initialized() const override { return initialized_; }

    std::uint64_t state_hash() const override {
        std::uint64_t h = 1469598103934665603ULL;
        for (const auto& t : template_)
            h = detail::fnv1a(h, t.data(), t.size() * sizeof(t[0]));
        for (const auto& e : entries_) {
            h = detail::fnv1a(h, &e.weight, sizeof(e.weight));
            h = detail::fnv1a(h, &e.id, sizeof(e.id));
            h = detail::fnv1a(h, &e.augmented, sizeof(e.augmented));
        }
        h = detail::fnv1a(h, &target_w_, sizeof(target_w_));
        h = detail::fnv1a(h, &target_h_, sizeof(target_h_));
        return h;
    }

    const std::vector<MemoryEntry>& memory() const { return entries_; }

    std::vector<double> normalized_weights() const {
        std::vector<double> w;
        w.reserve(entries_.size());
        for (const auto& e : entries_) w.push_back(e.weight);
        return w;
    }

    /// The learned filter's conjugate spectrum (what responses correlate
    /// against); exposed for tests.
    const std::array<std::vector<std::complex<double>>, kFeatureChannels>& filter_conj() const {
        return template_;
    }

    /// Standalone weighted ridge solve over explicit samples; returns the
    /// filter spectrum f_hat per channel. Used by the incremental path and
    /// directly testable against dense/na\"ive oracles.
    static std::array<std::vector<std::complex<double>>, kFeatureChannels> solve_ridge(
        const std::vector<const Spectra3*>& xs, const std::vector<double>& weights,
        const std::vector<std::complex<double>>& yhat_conj, double mu) {
        if (xs.empty() || xs.size() != weights.size())
            throw std::invalid_argument("solve_ridge: bad sample set");
        const std::size_t bins = yhat_conj.size();
        std::vector<std::complex<double>> A(bins * 9);
        std::vector<std::complex<double>> b(bins * 3);
        double z = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            accumulate_into(A, b, *xs[i], yhat_conj, weights[i], +1.0);
            z += weights[i];
        }
        if (z <= 0.0) throw std::invalid_argument("solve_ridge: zero total weight");
        const double inv = 1.0 / z;
        for (auto& v : A) v *= inv;
        for (auto& v : b) v *= inv;
        std::array<std::vector<std::complex<double>>, kFeatureChannels> f;
        for (auto& c : f) c.resize(bins);
        for (std::size_t k = 0; k < bins; ++k) {
            std::complex<double> fk[3];
            detail::solve3x3_hermitian(&A[k * 9], mu, &b[k * 3], fk);
            f[0][k] = fk[0];
            f[1][k] = fk[1];
            f[2][k] = fk[2];
        }
        return f;
    }

private:
    void store_sample(const FeatureMap& fm, double weight, bool augmented) {
        if (static_cast<int>(entries_.size()) >= cfg_.capacity) return;  // init-phase: no eviction
        entries_.push_back({pipeline_.spectra(fm), weight, augmented, next_id_++});
    }

    void normalize_weights() {
        double z = 0.0;
        for (const auto& e : entries_) z += e.weight;
        if (z <= 0.0) throw std::logic_error("sample memory has zero weight");
        for (auto& e : entries_) e.weight /= z;
    }

    void rebuild_accumulators() {
        const std::size_t bins = pipeline_.fft().spectrum_size();
        A_.assign(bins * 9, {});
        b_.assign(bins * 3, {});
        for (const auto& e : entries_)
            accumulate_into(A_, b_, e.xhat, pipeline_.label_spectrum_conj(), e.weight, +1.0);
    }

    void scale_accumulators(double s) {
        for (auto& v : A_) v *= s;
        for (auto& v : b_) v *= s;
    }

    void accumulate(const Spectra3& x, double w, double sign) {
        accumulate_into(A_, b_, x, pipeline_.label_spectrum_conj(), w, sign);
    }

    static void accumulate_into(std::vector<std::complex<double>>& A,
                                std::vector<std::complex<double>>& b, const Spectra3& x,
                                const std::vector<std::complex<double>>& yhat_conj, double w,
                                double sign) {
        const std::size_t bins = yhat_conj.size();
        const double sw = w * sign;
        for (std::size_t k = 0; k < bins; ++k) {
            const std::complex<double> x0 = x.ch[0][k], x1 = x.ch[1][k], x2 = x.ch[2][k];
            auto* a = &A[k * 9];
            const std::complex<double> p01 = x0 * std::conj(x1);
            const std::complex<double> p02 = x0 * std::conj(x2);
            const std::complex<double> p12 = x1 * std::conj(x2);
            a[0] += sw * std::norm(x0);
            a[1] += sw * p01;
            a[2] += sw * p02;
            a[3] += sw * std::conj(p01);
            a[4] += sw * std::norm(x1);
            a[5] += sw * p12;
            a[6] += sw * std::conj(p02);
            a[7] += sw * std::conj(p12);
            a[8] += sw * std::norm(x2);
            const std::complex<double> yc = yhat_conj[k];
            b[k * 3 + 0] += sw * (x0 * yc);
            b[k * 3 + 1] += sw * (x1 * yc);
            b[k * 3 + 2] += sw * (x2 * yc);
        }
    }

    void evict_lowest_weight() {
        std::size_t victim = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            const auto& v = entries_[victim];
            if (e.weight < v.weight || (e.weight == v.weight && e.id < v.id)) victim = i;
        }
        accumulate(entries_[victim].xhat, entries_[victim].weight, -1.0);
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    }

    void normalize_weights_and_accumulators() {
        double z = 0.0;
        for (const auto& e : entries_) z += e.weight;
        if (z <= 0.0) throw std::logic_error("sample memory has zero weight");
        const double inv = 1.0 / z;
        for (auto& e : entries_) e.weight *= inv;
        scale_accumulators(inv);
    }

    /// Solves the normal equations from the current accumulators plus loose
    /// (non-stored) samples and refreshes the response template.
    void solve(const std::vector<std::pair<Spectra3, double>>& loose) {
        const std::size_t bins = pipeline_.fft().spectrum_size();
        const std::vector<std::complex<double>>* A = &A_;
        const std::vector<std::complex<double>>* b = &b_;
        std::vector<std::complex<double>> At, bt;
        double z = 1.0;  // memory weights are kept normalized
        if (!loose.empty()) {
            At = A_;
            bt = b_;
            for (const auto& [x, w] : loose) {
                accumulate_into(At, bt, x, pipeline_.label_spectrum_conj(), w, +1.0);
                z += w;
            }
            A = &At;
            b = &bt;
        }
        const double inv = 1.0 / z;
        for (auto& t : template_) t.resize(bins);
        std::complex<double> a[9], rhs[3], fk[3];
        for (std::size_t k = 0; k < bins; ++k) {
            for (int i = 0; i < 9; ++i) a[i] = (*A)[k * 9 + i] * inv;
            for (int i = 0; i < 3; ++i) rhs[i] = (*b)[k * 3 + i] * inv;
            detail::solve3x3_hermitian(a, cfg_.mu, rhs, fk);
            template_[0][k] = std::conj(fk[0]);
            template_[1][k] = std::conj(fk[1]);
            template_[2][k] = std::conj(fk[2]);
        }
    }

    /// Correlation response of the current filter over one crop.
    ResponseMap respond(const Frame& frame, Vec2 center, double side) const {
        const int n = cfg_.resolution;
        ResponseMap rm;
        rm.size = n;
        rm.search_center = center;
        rm.region_side = side;
        rm.cell = side / n;
        rm.region = pipeline_.region_rect(center, side);

        const FeatureMap fm = pipeline_.features_at(frame, center, side);
        const Fft2D& fft = pipeline_.fft();
        const std::size_t bins = fft.spectrum_size();
        std::vector<std::complex<double>> zc(bins);
        std::vector<std::complex<double>> rhat(bins, std::complex<double>{});
        for (int c = 0; c < kFeatureChannels; ++c) {
            fft.forward(fm.ch[c].data(), zc.data());
            const auto& t = template_[c];
            for (std::size_t k = 0; k < bins; ++k) rhat[k] += zc[k] * t[k];
        }
        rm.scores = fft.inverse(rhat);

        int bx = 0, by = 0;
        double bv = -std::numeric_limits<double>::infinity();
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                if (rm.score_at(x, y) > bv) {
                    bv = rm.score_at(x, y);
                    bx = x;
                    by = y;
                }
        rm.peak.bin_x = bx;
        rm.peak.bin_y = by;
        rm.peak.value = bv;
        return rm;
    }

    /// Sub-cell peak refinement plus the distant second local maximum.
    void finalize_peaks(ResponseMap& rm, double target_diag_px) const {
        const int n = rm.size;
        const int bx = rm.peak.bin_x, by = rm.peak.bin_y;
        double dx = 0.0, dy = 0.0;
        if (bx > 0 && bx < n - 1) {
            const double l = rm.score_at(bx - 1, by), c = rm.score_at(bx, by),
                         r = rm.score_at(bx + 1, by);
            const double den = 2.0 * c - l - r;
            if (den > 1e-12) dx = std::clamp(0.5 * (r - l) / den, -0.5, 0.5);
        }
        if (by > 0 && by < n - 1) {
            const double t = rm.score_at(bx, by - 1), c = rm.score_at(bx, by),
                         b = rm.score_at(bx, by + 1);
            const double den = 2.0 * c - t - b;
            if (den > 1e-12) dy = std::clamp(0.5 * (b - t) / den, -0.5, 0.5);
        }
        const double half = n / 2;
        rm.peak.pos = {rm.search_center.x + (bx + dx - half) * rm.cell,
                       rm.search_center.y + (by + dy - half) * rm.cell};

        const double delta_px = cfg_.delta_peak_frac * target_diag_px;
        PeakInfo second;
        second.value = 0.0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double v = rm.score_at(x, y);
                if (v <= second.value || v > rm.peak.value) continue;
                const double dpx = std::hypot((x - bx) * rm.cell, (y - by) * rm.cell);
                if (dpx <= delta_px) continue;
                bool is_max = true;
                for (int oy = -1; oy <= 1 && is_max; ++oy)
                    for (int ox = -1; ox <= 1; ++ox) {
                        if (ox == 0 && oy == 0) continue;
                        const int nx = x + ox, ny = y + oy;
                        if (nx < 0 || ny < 0 || nx >= n || ny >= n) continue;
                        if (rm.score_at(nx, ny) > v) {
                            is_max = false;
                            break;
                        }
                    }
                if (!is_max) continue;
                second.value = v;
                second.bin_x = x;
                second.bin_y = y;
                second.pos = {rm.search_center.x + (x - half) * rm.cell,
                              rm.search_center.y + (y - half) * rm.cell};
            }
        }
        rm.second_peak = second;
    }

    TrackerConfig cfg_;
    FeaturePipeline pipeline_;
    std::vector<MemoryEntry> entries_;
    std::array<std::vector<std::complex<double>>, kFeatureChannels> template_;
    std::vector<std::complex<double>> A_;  // bins x 9, weighted sum of xhat xhat^H
    std::vector<std::complex<double>> b_;  // bins x 3, weighted sum of xhat conj(yhat)
    double target_w_ = 0.0;
    double target_h_ = 0.0;
    std::uint64_t next_id_ = 0;
    bool initialized_ = false;
};

}  // namespace ltrack

#endif  // LTRACK_DCF_TRACKER_HPP
