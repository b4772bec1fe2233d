#include "nlrd/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace nlrd {

namespace {
// FFTW planning is not thread-safe; execution with distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

RealFft::RealFft(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    real_buf_ = fftw_alloc_real(n);
    cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
    plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_,
                                     static_cast<fftw_complex*>(cplx_buf_),
                                     FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(cplx_buf_),
                                     real_buf_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void RealFft::forward(std::span<const double> in, std::complex<double>* out) {
    std::memcpy(real_buf_, in.data(), sizeof(double) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out, cplx_buf_, sizeof(fftw_complex) * spectrum_size());
}

void RealFft::inverse(std::span<const std::complex<double>> in, double* out) {
    std::memcpy(cplx_buf_, in.data(), sizeof(fftw_complex) * spectrum_size());
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double scale = 1.0 / n_;
    for (int j = 0; j < n_; ++j) out[j] = real_buf_[j] * scale;
}

} // namespace nlrd
