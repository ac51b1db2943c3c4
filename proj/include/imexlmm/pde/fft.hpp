#pragma once

// Thin RAII layer over FFTW's complex-to-complex transforms on a d-dimensional
// row-major grid. Real fields go in, Hermitian spectra come out; the inverse
// checks that the imaginary residue is at rounding level before dropping it.

#include "imexlmm/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <sstream>
#include <vector>

namespace imexlmm::pde {

using cplx = std::complex<double>;
using Field = std::vector<double>;
using Spectrum = std::vector<cplx>;

namespace fft_detail {
// planner calls are not thread-safe in FFTW
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace fft_detail

class FFT {
 public:
  /// Relative bound on the imaginary residue after an inverse transform.
  static constexpr double kImagResidue = 1e-12;

  explicit FFT(std::vector<int> dims) : dims_(std::move(dims)) {
    total_ = 1;
    for (int n : dims_) total_ *= static_cast<std::size_t>(n);
    in_ = fftw_alloc_complex(total_);
    out_ = fftw_alloc_complex(total_);
    std::lock_guard<std::mutex> lock(fft_detail::planner_mutex());
    fwd_ = fftw_plan_dft(static_cast<int>(dims_.size()), dims_.data(), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft(static_cast<int>(dims_.size()), dims_.data(), in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  FFT(const FFT&) = delete;
  FFT& operator=(const FFT&) = delete;

  ~FFT() {
    std::lock_guard<std::mutex> lock(fft_detail::planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }

  std::size_t size() const { return total_; }

  /// Unnormalized forward transform.
  Spectrum forward(const Field& u) const {
    for (std::size_t i = 0; i < total_; ++i) {
      in_[i][0] = u[i];
      in_[i][1] = 0.0;
    }
    fftw_execute(fwd_);
    Spectrum s(total_);
    for (std::size_t i = 0; i < total_; ++i) s[i] = {out_[i][0], out_[i][1]};
    return s;
  }

  /// Inverse transform including the 1/N factor. Throws InvariantViolation if
  /// the result is not real up to kImagResidue relative to its size.
  Field inverse(const Spectrum& s) const {
    for (std::size_t i = 0; i < total_; ++i) {
      in_[i][0] = s[i].real();
      in_[i][1] = s[i].imag();
    }
    fftw_execute(bwd_);
    const double scale = 1.0 / static_cast<double>(total_);
    Field u(total_);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < total_; ++i) {
      u[i] = out_[i][0] * scale;
      max_re = std::max(max_re, std::abs(u[i]));
      max_im = std::max(max_im, std::abs(out_[i][1] * scale));
    }
    if (max_im > kImagResidue * std::max(1.0, max_re)) {
      std::ostringstream os;
      os << "inverse FFT: imaginary residue " << max_im << " (max real part " << max_re << ")";
      throw InvariantViolation(os.str());
    }
    return u;
  }

 private:
  std::vector<int> dims_;
  std::size_t total_ = 0;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

}  // namespace imexlmm::pde
