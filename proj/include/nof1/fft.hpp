// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Internal FFT used by the fast convolution paths. Not part of the public
// surface of the library; callers should go through the convolution
// functions in signal.hpp.
//
// Power-of-two lengths run an iterative radix-2 transform with precomputed
// twiddles. Other lengths run Bluestein's chirp-z reduction onto a
// power-of-two transform. Plans are cached per length and shared.

#ifndef NOF1_FFT_HPP
#define NOF1_FFT_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace nof1::fft {

using cdouble = std::complex<double>;

class Plan {
 public:
  explicit Plan(std::size_t n);

  std::size_t size() const { return n_; }

  // In-place DFT of length size(). data must hold size() elements.
  void forward(cdouble* data) const;
  // In-place inverse DFT including the 1/n scale.
  void inverse(cdouble* data) const;

 private:
  void pow2_forward(cdouble* data) const;
  void bluestein(cdouble* data) const;

  std::size_t n_;
  bool pow2_;
  // Radix-2 machinery (when pow2_, or as the inner transform for Bluestein).
  std::size_t m_ = 0;
  std::vector<std::size_t> bitrev_;
  std::vector<cdouble> twiddle_;
  // Bluestein chirp c_k = exp(-i pi k^2 / n) and the spectrum of its
  // zero-padded conjugate sequence.
  std::vector<cdouble> chirp_;
  std::vector<cdouble> chirp_spectrum_;
  std::unique_ptr<Plan> inner_;
};

// Shared plan cache, thread-safe.
std::shared_ptr<const Plan> plan_for(std::size_t n);

std::size_t next_pow2(std::size_t n);

// Out-of-place helpers on real data.
std::vector<cdouble> forward_real(const std::vector<double>& x);

}  // namespace nof1::fft

#endif  // NOF1_FFT_HPP
