// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "nof1/errors.hpp"
#include "nof1/kernels.hpp"

namespace nof1::fft {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void pointwise_mul(cdouble* dst, const cdouble* a, const cdouble* b,
                   std::size_t n) {
  kernels::ops().cmul(reinterpret_cast<double*>(dst),
                      reinterpret_cast<const double*>(a),
                      reinterpret_cast<const double*>(b), n);
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

Plan::Plan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw DimensionError("fft: length must be positive");
  if (!pow2_) {
    // Bluestein reduction onto an inner power-of-two transform of length
    // m >= 2n - 1, using jk = (j^2 + k^2 - (k-j)^2) / 2.
    m_ = next_pow2(2 * n - 1);
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      // k^2 mod 2n keeps the angle argument small and exact in doubles.
      const std::size_t ksq = (k * k) % (2 * n);
      const double angle =
          -kPi * static_cast<double>(ksq) / static_cast<double>(n);
      chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    inner_ = std::make_unique<Plan>(m_);
    std::vector<cdouble> b(m_, cdouble{0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      b[k] = std::conj(chirp_[k]);
      b[m_ - k] = std::conj(chirp_[k]);
    }
    inner_->forward(b.data());
    chirp_spectrum_ = std::move(b);
    return;
  }
  m_ = n;
  // Radix-2 tables: bit reversal, and per-stage twiddles packed into one
  // array (the stage with butterfly half-width L starts at offset L - 1).
  bitrev_.resize(m_);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < m_) ++log2n;
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t r = 0;
    for (std::size_t bit = 0; bit < log2n; ++bit) {
      r |= ((i >> bit) & 1) << (log2n - 1 - bit);
    }
    bitrev_[i] = r;
  }
  twiddle_.resize(m_ > 1 ? m_ - 1 : 1);
  for (std::size_t half = 1; half < m_; half <<= 1) {
    for (std::size_t j = 0; j < half; ++j) {
      const double angle =
          -kPi * static_cast<double>(j) / static_cast<double>(half);
      twiddle_[half - 1 + j] = {std::cos(angle), std::sin(angle)};
    }
  }
}

void Plan::pow2_forward(cdouble* data) const {
  const std::size_t n = m_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    const cdouble* w = &twiddle_[half - 1];
    for (std::size_t start = 0; start < n; start += 2 * half) {
      cdouble* lo = data + start;
      cdouble* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const cdouble t = hi[j] * w[j];
        hi[j] = lo[j] - t;
        lo[j] += t;
      }
    }
  }
}

// DFT of length n_ via chirp-z: X_k = c_k * (a (*) b)_k with a_j = x_j c_j,
// b_j = conj(c_|j|), both zero-padded to the inner length.
void Plan::bluestein(cdouble* data) const {
  std::vector<cdouble> a(m_, cdouble{0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
  inner_->forward(a.data());
  pointwise_mul(a.data(), a.data(), chirp_spectrum_.data(), m_);
  inner_->inverse(a.data());
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * chirp_[k];
}

void Plan::forward(cdouble* data) const {
  if (pow2_) {
    pow2_forward(data);
  } else {
    bluestein(data);
  }
}

void Plan::inverse(cdouble* data) const {
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
  if (pow2_) {
    pow2_forward(data);
  } else {
    bluestein(data);
  }
  for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]) * scale;
}

std::shared_ptr<const Plan> plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const Plan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const Plan>(n);
  cache.emplace(n, plan);
  return plan;
}

std::vector<cdouble> forward_real(const std::vector<double>& x) {
  std::vector<cdouble> data(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) data[i] = {x[i], 0.0};
  plan_for(x.size())->forward(data.data());
  return data;
}

}  // namespace nof1::fft
