#ifndef LTRACK_FEATURES_HPP
#define LTRACK_FEATURES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "ltrack/fft.hpp"
#include "ltrack/geometry.hpp"
#include "ltrack/image.hpp"

namespace ltrack {

inline constexpr int kFeatureChannels = 3;  // intensity + x/y gradients

struct FeatureMap {
    int size = 0;  // square, size x size
    std::array<std::vector<double>, kFeatureChannels> ch;
};

/// Half-spectrum FFTs of the three feature channels.
struct Spectra3 {
    std::array<std::vector<std::complex<double>>, kFeatureChannels> ch;
};

/// A training sample handed to the localizer: feature patch, regression
/// label, relative weight and whether it may enter the sample memory.
struct AugSample {
    FeatureMap features;
    std::vector<double> label;
    double weight = 1.0;
    bool store_in_memory = false;
};

struct FeatureConfig {
    int resolution = 128;          // feature grid side, fixed per tracker
    double search_scale = 5.0;     // search-region side = search_scale * target diagonal
    double label_sigma_frac = 0.1; // label sigma = frac * target diagonal
    double window_taper = 0.3;     // Tukey taper fraction (0 = box, 1 = Hann)
    double norm_eps = 1e-6;        // stddev floor for patch normalization
    // Training samples are masked to the target and a small context ring so
    // the learned template matches the object, not the whole scene; radii
    // are in units of the target diagonal.
    double train_mask_flat = 0.5;
    double train_mask_zero = 0.95;
    // Channels are scaled by feature_gain / resolution. This puts the
    // per-bin spectral energy of a patch on the same scale as the ridge
    // regularizer, so mu actually damps weak, noise-dominated frequencies
    // instead of being rounding error against raw DFT magnitudes.
    double feature_gain = 0.5;
    // Relative channel weights (intensity, grad-x, grad-y). Smooth
    // background regions put nearly all of their normalized variance into
    // the intensity channel at low frequencies; keeping that channel light
    // makes the learned filter respond to texture rather than shading.
    double w_intensity = 0.10;
    double w_gradient = 1.0;
};

enum class FeatureKind { Search, Train };

/// Shared feature machinery: centered crops, z-scored intensity+gradient
/// channels under a Tukey window, the Gaussian regression label and FFTs.
class FeaturePipeline {
public:
    explicit FeaturePipeline(FeatureConfig cfg)
        : cfg_(cfg), fft_(std::make_shared<Fft2D>(cfg.resolution, cfg.resolution)) {
        build_window();
        build_train_mask();
        build_label();
    }

    const FeatureConfig& config() const { return cfg_; }
    int resolution() const { return cfg_.resolution; }
    const Fft2D& fft() const { return *fft_; }

    double region_side(double target_diag) const { return cfg_.search_scale * target_diag; }
    double cell_size(double region_side) const { return region_side / cfg_.resolution; }

    /// Crop rect placed so that feature bin (R/2, R/2) lands exactly on
    /// `center` (cell i is sampled at rect.x + (i+0.5)*cell).
    BBox region_rect(Vec2 center, double side) const {
        const double cell = cell_size(side);
        const double half = (cfg_.resolution / 2 + 0.5) * cell;
        return {center.x - half, center.y - half, side, side};
    }

    Image crop(const Image& frame, Vec2 center, double side,
               std::optional<double> fill = std::nullopt) const {
        return extract_patch(frame, region_rect(center, side), cfg_.resolution,
                             cfg_.resolution, fill);
    }

    /// Patch -> z-scored intensity, central-difference gradients, windowed.
    /// Search features carry the edge taper; training features are further
    /// masked down to the target region.
    FeatureMap features(const Image& patch, FeatureKind kind = FeatureKind::Search) const {
        const int n = cfg_.resolution;
        if (patch.width != n || patch.height != n)
            throw std::invalid_argument("features: patch size mismatch");
        FeatureMap fm;
        fm.size = n;
        for (auto& c : fm.ch) c.assign(static_cast<std::size_t>(n) * n, 0.0);

        double mean = 0.0;
        for (double v : patch.px) mean += v;
        mean /= static_cast<double>(patch.px.size());
        double var = 0.0;
        for (double v : patch.px) var += (v - mean) * (v - mean);
        var /= static_cast<double>(patch.px.size());
        const double sd = std::sqrt(var);
        if (sd < cfg_.norm_eps) return fm;  // featureless patch -> all zeros

        auto& inten = fm.ch[0];
        for (std::size_t i = 0; i < patch.px.size(); ++i) inten[i] = (patch.px[i] - mean) / sd;

        auto& gx = fm.ch[1];
        auto& gy = fm.ch[2];
        auto idx = [n](int x, int y) { return static_cast<std::size_t>(y) * n + x; };
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const int xp = std::min(x + 1, n - 1), xm = std::max(x - 1, 0);
                const int yp = std::min(y + 1, n - 1), ym = std::max(y - 1, 0);
                gx[idx(x, y)] = 0.5 * (inten[idx(xp, y)] - inten[idx(xm, y)]);
                gy[idx(x, y)] = 0.5 * (inten[idx(x, yp)] - inten[idx(x, ym)]);
            }
        }
        const auto& w = kind == FeatureKind::Train ? train_mask_ : window_;
        const double gain = cfg_.feature_gain / cfg_.resolution;
        const double cw[kFeatureChannels] = {cfg_.w_intensity, cfg_.w_gradient, cfg_.w_gradient};
        for (int ci = 0; ci < kFeatureChannels; ++ci) {
            auto& c = fm.ch[ci];
            const double g = gain * cw[ci];
            double csum = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                c[i] *= w[i] * g;
                csum += c[i];
            }
            // Channels are exactly zero-mean after windowing so the DC bin
            // carries nothing; otherwise a constant pedestal leaks into
            // every response and floors the scores on target-free regions.
            const double cmean = csum / static_cast<double>(c.size());
            for (auto& v : c) v -= cmean;
        }
        return fm;
    }

    FeatureMap features_at(const Image& frame, Vec2 center, double side,
                           FeatureKind kind = FeatureKind::Search,
                           std::optional<double> fill = std::nullopt) const {
        return features(crop(frame, center, side, fill), kind);
    }

    Spectra3 spectra(const FeatureMap& fm) const {
        Spectra3 s;
        for (int c = 0; c < kFeatureChannels; ++c) s.ch[c] = fft_->forward(fm.ch[c]);
        return s;
    }

    /// Gaussian regression label centered on bin (R/2, R/2); sigma is
    /// constant in feature cells because the crop side scales with the
    /// target diagonal.
    const std::vector<double>& label() const { return label_; }
    const std::vector<std::complex<double>>& label_spectrum_conj() const {
        return label_hat_conj_;
    }
    double label_sigma_cells() const {
        return cfg_.label_sigma_frac * cfg_.resolution / cfg_.search_scale;
    }

    const std::vector<double>& window() const { return window_; }
    const std::vector<double>& train_mask() const { return train_mask_; }

private:
    void build_train_mask() {
        const int n = cfg_.resolution;
        // Target diagonal in feature cells is resolution / search_scale.
        const double diag_cells = n / cfg_.search_scale;
        const double r_flat = cfg_.train_mask_flat * diag_cells;
        const double r_zero = cfg_.train_mask_zero * diag_cells;
        const double c = n / 2;
        train_mask_.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double r = std::hypot(x - c, y - c);
                double v = 0.0;
                if (r <= r_flat)
                    v = 1.0;
                else if (r < r_zero)
                    v = 0.5 * (1.0 + std::cos(3.141592653589793 * (r - r_flat) /
                                              (r_zero - r_flat)));
                train_mask_[static_cast<std::size_t>(y) * n + x] = v;
            }
        }
    }
    void build_window() {
        const int n = cfg_.resolution;
        std::vector<double> w1(n, 1.0);
        const double a = cfg_.window_taper;
        if (a > 0.0 && n > 1) {
            for (int i = 0; i < n; ++i) {
                const double u = static_cast<double>(i) / (n - 1);
                if (u < a / 2.0)
                    w1[i] = 0.5 * (1.0 + std::cos(3.141592653589793 * (2.0 * u / a - 1.0)));
                else if (u > 1.0 - a / 2.0)
                    w1[i] = 0.5 * (1.0 + std::cos(3.141592653589793 * (2.0 * u / a - 2.0 / a + 1.0)));
            }
        }
        window_.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                window_[static_cast<std::size_t>(y) * n + x] = w1[y] * w1[x];
    }

    void build_label() {
        const int n = cfg_.resolution;
        const double sigma = label_sigma_cells();
        const double c = n / 2;
        label_.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double d2 = (x - c) * (x - c) + (y - c) * (y - c);
                label_[static_cast<std::size_t>(y) * n + x] =
                    std::exp(-d2 / (2.0 * sigma * sigma));
            }
        }
        label_hat_conj_ = fft_->forward(label_);
        for (auto& v : label_hat_conj_) v = std::conj(v);
    }

    FeatureConfig cfg_;
    std::shared_ptr<Fft2D> fft_;
    std::vector<double> window_;
    std::vector<double> train_mask_;
    std::vector<double> label_;
    std::vector<std::complex<double>> label_hat_conj_;
};

}  // namespace ltrack

#endif  // LTRACK_FEATURES_HPP
