#ifndef LTRACK_FFT_HPP
#define LTRACK_FFT_HPP

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ltrack {

/// 2-D real<->complex FFT of a fixed size, backed by FFTW.
///
/// Plans are created once with FFTW_ESTIMATE | FFTW_UNALIGNED so the chosen
/// algorithm does not depend on runtime timing or buffer alignment, which
/// keeps results bit-reproducible. Execution uses the new-array interface and
/// is safe to call concurrently from const context; the FFTW planner itself
/// is serialized behind a global mutex.
class Fft2D {
public:
    Fft2D(int height, int width) : h_(height), w_(width) {
        if (height < 1 || width < 1) throw std::invalid_argument("Fft2D: bad size");
        std::vector<double> re(static_cast<std::size_t>(h_) * w_);
        std::vector<std::complex<double>> cx(spectrum_size());
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd_ = fftw_plan_dft_r2c_2d(h_, w_, re.data(),
                                    reinterpret_cast<fftw_complex*>(cx.data()),
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv_ = fftw_plan_dft_c2r_2d(h_, w_, reinterpret_cast<fftw_complex*>(cx.data()),
                                    re.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!fwd_ || !inv_) throw std::runtime_error("Fft2D: planning failed");
    }

    ~Fft2D() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd_) fftw_destroy_plan(fwd_);
        if (inv_) fftw_destroy_plan(inv_);
    }

    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    int height() const { return h_; }
    int width() const { return w_; }
    /// Number of complex bins per row in the half spectrum.
    int spec_width() const { return w_ / 2 + 1; }
    std::size_t spectrum_size() const { return static_cast<std::size_t>(h_) * spec_width(); }

    /// Unnormalized forward transform (h*w reals -> h*(w/2+1) bins).
    void forward(const double* in, std::complex<double>* out) const {
        fftw_execute_dft_r2c(fwd_, const_cast<double*>(in),
                             reinterpret_cast<fftw_complex*>(out));
    }

    std::vector<std::complex<double>> forward(const std::vector<double>& in) const {
        std::vector<std::complex<double>> out(spectrum_size());
        forward(in.data(), out.data());
        return out;
    }

    /// Inverse transform, normalized by 1/(h*w). The input spectrum is left
    /// untouched (FFTW's c2r would otherwise destroy it).
    void inverse(const std::complex<double>* in, double* out) const {
        std::vector<std::complex<double>> tmp(in, in + spectrum_size());
        fftw_execute_dft_c2r(inv_, reinterpret_cast<fftw_complex*>(tmp.data()), out);
        const double scale = 1.0 / (static_cast<double>(h_) * w_);
        const std::size_t n = static_cast<std::size_t>(h_) * w_;
        for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
    }

    std::vector<double> inverse(const std::vector<std::complex<double>>& in) const {
        std::vector<double> out(static_cast<std::size_t>(h_) * w_);
        inverse(in.data(), out.data());
        return out;
    }

private:
    static std::mutex& planner_mutex() {
        static std::mutex m;
        return m;
    }

    int h_;
    int w_;
    fftw_plan fwd_ = nullptr;
    fftw_plan inv_ = nullptr;
};

}  // namespace ltrack

#endif  // LTRACK_FFT_HPP
