#ifndef LTRACK_TESTS_RIDGE_RESIDUAL_HPP
#define LTRACK_TESTS_RIDGE_RESIDUAL_HPP

#include <array>
#include <complex>
#include <vector>

#include "ltrack/ltrack.hpp"

namespace testutil {

using namespace ltrack;

/// Weighted ridge residual || (X^T W X + mu I) f - X^T W y || / || X^T W y ||
/// evaluated through forward + adjoint spatial correlations, independent of
/// the solver's per-frequency elimination.
inline double normal_equation_residual(
    const FeaturePipeline& pipe, const std::vector<FeatureMap>& samples,
    const std::vector<double>& weights,
    const std::array<std::vector<std::complex<double>>, kFeatureChannels>& fhat, double mu) {
    const Fft2D& fft = pipe.fft();
    const std::size_t bins = fft.spectrum_size();
    const std::size_t n = static_cast<std::size_t>(pipe.resolution()) * pipe.resolution();

    double wsum = 0.0;
    for (double w : weights) wsum += w;

    const auto yhat = fft.forward(pipe.label());

    std::array<std::vector<double>, kFeatureChannels> lhs, rhs;
    for (int c = 0; c < kFeatureChannels; ++c) {
        lhs[c].assign(n, 0.0);
        rhs[c].assign(n, 0.0);
    }

    std::vector<std::complex<double>> rh(bins), tmp(bins);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weights[i] / wsum;
        std::array<std::vector<std::complex<double>>, kFeatureChannels> xhs;
        std::fill(rh.begin(), rh.end(), std::complex<double>{});
        for (int c = 0; c < kFeatureChannels; ++c) {
            xhs[c].resize(bins);
            fft.forward(samples[i].ch[c].data(), xhs[c].data());
            for (std::size_t k = 0; k < bins; ++k) rh[k] += xhs[c][k] * std::conj(fhat[c][k]);
        }
        for (int c = 0; c < kFeatureChannels; ++c) {
            for (std::size_t k = 0; k < bins; ++k) tmp[k] = xhs[c][k] * std::conj(rh[k]);
            const auto a = fft.inverse(tmp);
            for (std::size_t j = 0; j < n; ++j) lhs[c][j] += w * a[j];
            for (std::size_t k = 0; k < bins; ++k) tmp[k] = xhs[c][k] * std::conj(yhat[k]);
            const auto by = fft.inverse(tmp);
            for (std::size_t j = 0; j < n; ++j) rhs[c][j] += w * by[j];
        }
    }

    double num = 0.0, den = 0.0;
    for (int c = 0; c < kFeatureChannels; ++c) {
        const auto f_spatial = fft.inverse(fhat[c]);
        for (std::size_t j = 0; j < n; ++j) {
            const double r = lhs[c][j] + mu * f_spatial[j] - rhs[c][j];
            num += r * r;
            den += rhs[c][j] * rhs[c][j];
        }
    }
    return std::sqrt(num) / std::sqrt(den);
}

}  // namespace testutil

#endif
