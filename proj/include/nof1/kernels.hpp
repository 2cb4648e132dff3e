// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Arithmetic kernels behind the convolution and estimator inner loops.
// Every kernel has a portable scalar reference implementation and, on x86
// machines with AVX2+FMA, a vectorized variant. The active table is picked
// once at startup; NOF1_KERNELS=scalar forces the reference path.

#ifndef NOF1_KERNELS_HPP
#define NOF1_KERNELS_HPP

#include <cstddef>

namespace nof1::kernels {

struct Ops {
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // sum_i a[i]^2
  double (*sum_sq)(const double* a, std::size_t n);
  // Pointwise complex product of n (re, im) pairs: dst = a * b.
  // Arrays are interleaved doubles of length 2n; dst may alias a or b.
  void (*cmul)(double* dst, const double* a, const double* b, std::size_t n);
};

// Reference implementation, always available.
const Ops& scalar_ops();

// Vectorized implementation, or nullptr when the build or the CPU lacks it.
const Ops* avx2_ops();

// The table selected for this process.
const Ops& ops();

}  // namespace nof1::kernels

#endif  // NOF1_KERNELS_HPP
