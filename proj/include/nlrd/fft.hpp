#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nlrd {

/// Real-to-complex FFT of a fixed size, with owned buffers so execution
/// is safe from multiple threads as long as each thread uses its own
/// instance. Plan creation is serialized internally (FFTW requirement).
class RealFft {
  public:
    explicit RealFft(int n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int size() const { return n_; }
    int spectrum_size() const { return n_ / 2 + 1; }

    /// DFT of n reals into n/2+1 complex coefficients (unnormalized).
    void forward(std::span<const double> in, std::complex<double>* out);
    /// Inverse transform, scaled by 1/n so inverse(forward(u)) == u.
    void inverse(std::span<const std::complex<double>> in, double* out);

  private:
    int n_;
    void* plan_fwd_;
    void* plan_inv_;
    double* real_buf_;
    void* cplx_buf_;
};

} // namespace nlrd
