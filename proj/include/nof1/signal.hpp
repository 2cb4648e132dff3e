// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fixed-horizon real signals and the convolution algebra on them.
//
// Conventions, for signals u, v of common length T indexed from 0:
//   linear convolution   (u * v)_t  = sum_{s=0..t} u_s v_{t-s}
//   circular convolution (u (*) v)_t = sum_{s=0..T-1} u_s v_{(t-s) mod T}
// Both produce length-T outputs; the linear product is the usual one
// truncated to the horizon.
//
// The *_direct functions are the O(T^2) reference implementations. The
// unsuffixed functions switch to FFT-based products at larger horizons and
// agree with the reference to tight relative tolerance.

#ifndef NOF1_SIGNAL_HPP
#define NOF1_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace nof1 {

namespace fft {
class Plan;
}

inline constexpr std::size_t kDefaultDenseCap = 4096;

// Horizon below which the direct convolution path is used by default.
inline constexpr std::size_t kFftThreshold = 64;

// Immutable real vector of length >= 1 with finite entries.
class Signal {
 public:
  explicit Signal(std::vector<double> values);

  static Signal zeros(std::size_t n);
  static Signal ones(std::size_t n);
  static Signal constant(std::size_t n, double value);
  // Indicator of position k (0-based), the k-lag unit impulse.
  static Signal unit(std::size_t n, std::size_t k);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  const double* data() const { return values_.data(); }

 private:
  std::vector<double> values_;
};

// Square row-major matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  static DenseMatrix zeros(std::size_t n) {
    return DenseMatrix{n, std::vector<double>(n * n, 0.0)};
  }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

double dot(const Signal& a, const Signal& b);

Signal linear_convolve_direct(const Signal& u, const Signal& v);
Signal circular_convolve_direct(const Signal& u, const Signal& v);
Signal linear_convolve(const Signal& u, const Signal& v);
Signal circular_convolve(const Signal& u, const Signal& v);

// Lower-triangular Toeplitz matrix of u: entry (t, s) = u_{t-s} for t >= s.
DenseMatrix build_toeplitz(const Signal& u,
                           std::size_t cap = kDefaultDenseCap);

// Circulant matrix of u: entry (t, s) = u_{(t-s) mod T}.
DenseMatrix build_circulant(const Signal& u,
                            std::size_t cap = kDefaultDenseCap);

// Adjoint of the Toeplitz embedding: out_s = sum_{t>=s} M_{t,t-s}.
// Maps a T x T matrix back to a length-T signal.
Signal toeplitz_adjoint(const DenseMatrix& m);

// Repeated convolution against a fixed kernel; caches the kernel spectrum
// so each apply() costs one forward and one inverse transform.
class Convolver {
 public:
  enum class Mode { Linear, Circular };

  Convolver(const Signal& kernel, Mode mode);

  std::size_t horizon() const { return horizon_; }
  Signal apply(const Signal& x) const;
  void apply(const std::vector<double>& x, std::vector<double>& out) const;

 private:
  std::size_t horizon_;
  Mode mode_;
  bool direct_;
  std::size_t taps_ = 0;  // kernel support (last nonzero + 1), direct path
  std::vector<double> kernel_;
  std::size_t padded_ = 0;  // transform length, fft path
  std::shared_ptr<const fft::Plan> plan_;
  std::vector<std::complex<double>> spectrum_;
};

}  // namespace nof1

#endif  // NOF1_SIGNAL_HPP
