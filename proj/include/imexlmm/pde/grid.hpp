#pragma once

// Periodic box [0, L_0) x ... x [0, L_{d-1}) with n_j points per axis, stored
// row-major (axis 0 slowest). Inner products are cell-volume weighted sums.

#include "imexlmm/pde/fft.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace imexlmm::pde {

class Grid {
 public:
  Grid(std::vector<int> n, std::vector<double> length) : n_(std::move(n)), length_(std::move(length)) {
    if (n_.empty() || n_.size() > 3 || n_.size() != length_.size())
      throw std::invalid_argument("Grid: need 1 to 3 axes with one length per axis");
    total_ = 1;
    cell_volume_ = 1.0;
    for (std::size_t a = 0; a < n_.size(); ++a) {
      if (n_[a] < 2 || n_[a] % 2 != 0) throw std::invalid_argument("Grid: points per axis must be even and >= 2");
      if (!(length_[a] > 0.0)) throw std::invalid_argument("Grid: side lengths must be positive");
      total_ *= static_cast<std::size_t>(n_[a]);
      cell_volume_ *= length_[a] / n_[a];
    }
    // |xi|^2 per mode and the per-axis integer wavenumbers
    xi2_.assign(total_, 0.0);
    for (std::size_t idx = 0; idx < total_; ++idx) {
      std::size_t rem = idx;
      double acc = 0.0;
      for (std::size_t a = n_.size(); a-- > 0;) {
        const int i = static_cast<int>(rem % static_cast<std::size_t>(n_[a]));
        rem /= static_cast<std::size_t>(n_[a]);
        const double xi = 2.0 * std::numbers::pi / length_[a] * wavenumber(i, n_[a]);
        acc += xi * xi;
      }
      xi2_[idx] = acc;
    }
    fft_ = std::make_shared<FFT>(n_);
  }

  static Grid square(int n, double length, int dim = 2) {
    return Grid(std::vector<int>(static_cast<std::size_t>(dim), n), std::vector<double>(static_cast<std::size_t>(dim), length));
  }

  /// Signed integer wavenumber of FFT index i (the Nyquist index maps to -n/2).
  static int wavenumber(int i, int n) { return i < n / 2 ? i : i - n; }

  std::size_t dim() const { return n_.size(); }
  const std::vector<int>& points() const { return n_; }
  const std::vector<double>& lengths() const { return length_; }
  std::size_t size() const { return total_; }
  double cell_volume() const { return cell_volume_; }
  double volume() const { return cell_volume_ * static_cast<double>(total_); }
  const std::vector<double>& xi2() const { return xi2_; }
  const FFT& fft() const { return *fft_; }

  /// Coordinates of grid point idx.
  std::vector<double> coords(std::size_t idx) const {
    std::vector<double> x(n_.size());
    for (std::size_t a = n_.size(); a-- > 0;) {
      const auto i = idx % static_cast<std::size_t>(n_[a]);
      idx /= static_cast<std::size_t>(n_[a]);
      x[a] = length_[a] * static_cast<double>(i) / n_[a];
    }
    return x;
  }

  /// Integer wavenumbers of mode idx.
  std::vector<int> mode(std::size_t idx) const {
    std::vector<int> k(n_.size());
    for (std::size_t a = n_.size(); a-- > 0;) {
      const auto i = static_cast<int>(idx % static_cast<std::size_t>(n_[a]));
      idx /= static_cast<std::size_t>(n_[a]);
      k[a] = wavenumber(i, n_[a]);
    }
    return k;
  }

  /// Physical inner product cell_volume * sum u v.
  double inner(const Field& u, const Field& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < total_; ++i) s += u[i] * v[i];
    return cell_volume_ * s;
  }

  /// Same inner product from spectra, with an optional real symbol weight:
  /// (cell_volume / N) * sum w(xi) Re(conj(a) b).
  template <class Weight>
  double inner_spectral(const Spectrum& a, const Spectrum& b, Weight&& w) const {
    double s = 0.0;
    for (std::size_t i = 0; i < total_; ++i) {
      const double wi = w(i);
      if (wi == 0.0) continue;
      s += wi * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    }
    return cell_volume_ / static_cast<double>(total_) * s;
  }

  double inner_spectral(const Spectrum& a, const Spectrum& b) const {
    return inner_spectral(a, b, [](std::size_t) { return 1.0; });
  }

  double mean(const Field& u) const {
    double s = 0.0;
    for (double x : u) s += x;
    return s / static_cast<double>(total_);
  }

 private:
  std::vector<int> n_;
  std::vector<double> length_;
  std::size_t total_ = 0;
  double cell_volume_ = 1.0;
  std::vector<double> xi2_;
  std::shared_ptr<FFT> fft_;
};

inline double max_abs(const Field& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace imexlmm::pde
