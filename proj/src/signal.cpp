// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/signal.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nof1/errors.hpp"
#include "nof1/fft.hpp"
#include "nof1/kernels.hpp"

namespace nof1 {
namespace {

void check_same_length(const Signal& a, const Signal& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(op) + ": length mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

void check_cap(std::size_t n, std::size_t cap, const char* op) {
  if (n > cap) {
    throw DomainError(std::string(op) + ": horizon " + std::to_string(n) +
                      " exceeds dense cap " + std::to_string(cap));
  }
}

std::size_t support_length(const std::vector<double>& v) {
  std::size_t k = v.size();
  while (k > 0 && v[k - 1] == 0.0) --k;
  return k;
}

// out_t += sum_{s < taps} k_s x_{t-s}, truncated at the horizon.
void fir_linear(const double* k, std::size_t taps, const double* x,
                double* out, std::size_t n) {
  for (std::size_t s = 0; s < taps; ++s) {
    if (k[s] != 0.0) kernels::ops().axpy(k[s], x, out + s, n - s);
  }
}

// Same with wrap-around indexing.
void fir_circular(const double* k, std::size_t taps, const double* x,
                  double* out, std::size_t n) {
  for (std::size_t s = 0; s < taps; ++s) {
    if (k[s] == 0.0) continue;
    kernels::ops().axpy(k[s], x, out + s, n - s);
    if (s > 0) kernels::ops().axpy(k[s], x + (n - s), out, s);
  }
}

std::vector<double> convolve_fft_padded(const std::vector<double>& u,
                                        const std::vector<double>& v,
                                        std::size_t padded,
                                        std::size_t keep) {
  auto plan = fft::plan_for(padded);
  std::vector<fft::cdouble> a(padded, fft::cdouble{0.0, 0.0});
  std::vector<fft::cdouble> b(padded, fft::cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < u.size(); ++i) a[i] = {u[i], 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = {v[i], 0.0};
  plan->forward(a.data());
  plan->forward(b.data());
  kernels::ops().cmul(reinterpret_cast<double*>(a.data()),
                      reinterpret_cast<const double*>(a.data()),
                      reinterpret_cast<const double*>(b.data()), padded);
  plan->inverse(a.data());
  std::vector<double> out(keep, 0.0);
  for (std::size_t i = 0; i < keep; ++i) out[i] = a[i].real();
  return out;
}

}  // namespace

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw DimensionError("signal: length must be at least 1");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw DomainError("signal: entries must be finite");
    }
  }
}

Signal Signal::zeros(std::size_t n) {
  return Signal(std::vector<double>(n, 0.0));
}

Signal Signal::ones(std::size_t n) {
  return Signal(std::vector<double>(n, 1.0));
}

Signal Signal::constant(std::size_t n, double value) {
  return Signal(std::vector<double>(n, value));
}

Signal Signal::unit(std::size_t n, std::size_t k) {
  if (k >= n) throw DomainError("signal: impulse position past horizon");
  std::vector<double> v(n, 0.0);
  v[k] = 1.0;
  return Signal(std::move(v));
}

double dot(const Signal& a, const Signal& b) {
  check_same_length(a, b, "dot");
  return kernels::ops().dot(a.data(), b.data(), a.size());
}

Signal linear_convolve_direct(const Signal& u, const Signal& v) {
  check_same_length(u, v, "linear_convolve");
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  fir_linear(u.data(), support_length(u.values()), v.data(), out.data(), n);
  return Signal(std::move(out));
}

Signal circular_convolve_direct(const Signal& u, const Signal& v) {
  check_same_length(u, v, "circular_convolve");
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  fir_circular(u.data(), support_length(u.values()), v.data(), out.data(), n);
  return Signal(std::move(out));
}

Signal linear_convolve(const Signal& u, const Signal& v) {
  check_same_length(u, v, "linear_convolve");
  const std::size_t n = u.size();
  const std::size_t ku = support_length(u.values());
  const std::size_t kv = support_length(v.values());
  if (n < kFftThreshold || std::min(ku, kv) <= kFftThreshold) {
    return ku <= kv ? linear_convolve_direct(u, v)
                    : linear_convolve_direct(v, u);
  }
  const std::size_t padded = fft::next_pow2(2 * n - 1);
  return Signal(convolve_fft_padded(u.values(), v.values(), padded, n));
}

Signal circular_convolve(const Signal& u, const Signal& v) {
  check_same_length(u, v, "circular_convolve");
  const std::size_t n = u.size();
  const std::size_t ku = support_length(u.values());
  const std::size_t kv = support_length(v.values());
  if (n < kFftThreshold || std::min(ku, kv) <= kFftThreshold) {
    return ku <= kv ? circular_convolve_direct(u, v)
                    : circular_convolve_direct(v, u);
  }
  return Signal(convolve_fft_padded(u.values(), v.values(), n, n));
}

DenseMatrix build_toeplitz(const Signal& u, std::size_t cap) {
  check_cap(u.size(), cap, "build_toeplitz");
  const std::size_t n = u.size();
  DenseMatrix m = DenseMatrix::zeros(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s <= t; ++s) m.at(t, s) = u[t - s];
  }
  return m;
}

DenseMatrix build_circulant(const Signal& u, std::size_t cap) {
  check_cap(u.size(), cap, "build_circulant");
  const std::size_t n = u.size();
  DenseMatrix m = DenseMatrix::zeros(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s) {
      m.at(t, s) = u[(t + n - s) % n];
    }
  }
  return m;
}

Signal toeplitz_adjoint(const DenseMatrix& m) {
  if (m.n == 0) throw DimensionError("toeplitz_adjoint: empty matrix");
  if (m.a.size() != m.n * m.n) {
    throw DimensionError("toeplitz_adjoint: matrix is not square");
  }
  std::vector<double> out(m.n, 0.0);
  for (std::size_t s = 0; s < m.n; ++s) {
    double acc = 0.0;
    for (std::size_t t = s; t < m.n; ++t) acc += m.at(t, t - s);
    out[s] = acc;
  }
  return Signal(std::move(out));
}

Convolver::Convolver(const Signal& kernel, Mode mode)
    : horizon_(kernel.size()),
      mode_(mode),
      kernel_(kernel.values()) {
  taps_ = support_length(kernel_);
  direct_ = horizon_ < kFftThreshold || taps_ <= kFftThreshold;
  if (direct_) return;
  padded_ = mode_ == Mode::Linear ? fft::next_pow2(2 * horizon_ - 1)
                                  : horizon_;
  plan_ = fft::plan_for(padded_);
  std::vector<fft::cdouble> b(padded_, fft::cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < horizon_; ++i) b[i] = {kernel_[i], 0.0};
  plan_->forward(b.data());
  spectrum_ = std::move(b);
}

void Convolver::apply(const std::vector<double>& x,
                      std::vector<double>& out) const {
  if (x.size() != horizon_) {
    throw DimensionError("convolver: input length mismatch");
  }
  out.assign(horizon_, 0.0);
  if (direct_) {
    if (mode_ == Mode::Linear) {
      fir_linear(kernel_.data(), taps_, x.data(), out.data(), horizon_);
    } else {
      fir_circular(kernel_.data(), taps_, x.data(), out.data(), horizon_);
    }
    return;
  }
  std::vector<fft::cdouble> a(padded_, fft::cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < horizon_; ++i) a[i] = {x[i], 0.0};
  plan_->forward(a.data());
  kernels::ops().cmul(reinterpret_cast<double*>(a.data()),
                      reinterpret_cast<const double*>(a.data()),
                      reinterpret_cast<const double*>(spectrum_.data()),
                      padded_);
  plan_->inverse(a.data());
  for (std::size_t i = 0; i < horizon_; ++i) out[i] = a[i].real();
}

Signal Convolver::apply(const Signal& x) const {
  std::vector<double> out;
  apply(x.values(), out);
  return Signal(std::move(out));
}

}  // namespace nof1
