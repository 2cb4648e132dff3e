// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "nof1/errors.hpp"

namespace nof1 {
namespace {

using Int = Rational::Int;

Int iabs(Int v) { return v < 0 ? -v : v; }

Int igcd(Int a, Int b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Literal sum over 4-cycles; each unordered vertex set {i,j,k,l} carries
// three distinct cycles, one per omitted perfect matching.
template <typename Scalar, typename GetW>
Scalar cycle4_direct(std::size_t n, GetW w) {
  Scalar total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          const Scalar c1 = w(i, j) * w(j, k) * w(k, l) * w(l, i);
          const Scalar c2 = w(i, j) * w(j, l) * w(l, k) * w(k, i);
          const Scalar c3 = w(i, k) * w(k, j) * w(j, l) * w(l, i);
          total += c1 + c2 + c3;
        }
      }
    }
  }
  return Scalar(8) * total;
}

// tr(w^4) - 2 sum_i r_i^2 + sum_{i!=j} w_ij^4 via the square of w.
template <typename Scalar, typename GetW>
Scalar cycle4_trace(std::size_t n, GetW w) {
  std::vector<Scalar> sq(n * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += w(i, k) * w(k, j);
      sq[i * n + j] = acc;
    }
  }
  Scalar tr4 = 0;
  Scalar row_sq = 0;
  Scalar quartic = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tr4 += sq[i * n + j] * sq[i * n + j];
      if (i != j) {
        const Scalar w2 = w(i, j) * w(i, j);
        quartic += w2 * w2;
      }
    }
    row_sq += sq[i * n + i] * sq[i * n + i];
  }
  return tr4 - Scalar(2) * row_sq + quartic;
}

constexpr std::size_t kCycleDirectCap = 32;
constexpr std::size_t kCycleCrossCheckCap = 12;
constexpr double kExactEntryBound = 16.0;
constexpr std::size_t kDenseOracleCap = 256;

}  // namespace

Rational::Rational(Int num, Int den) {
  if (den == 0) throw DomainError("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int g = igcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::operator+(const Rational& o) const {
  const Int g = igcd(den_, o.den_);
  const Int scale = o.den_ / g;
  return Rational(num_ * scale + o.num_ * (den_ / g), den_ * scale);
}

Rational Rational::operator-(const Rational& o) const {
  return *this + (-o);
}

Rational Rational::operator*(const Rational& o) const {
  const Int g1 = igcd(num_, o.den_);
  const Int g2 = igcd(o.num_, den_);
  return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("rational: division by zero");
  return *this * Rational(o.den_, o.num_);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  auto digits = [](Int v) {
    unsigned __int128 u =
        v < 0 ? static_cast<unsigned __int128>(-(v + 1)) + 1
              : static_cast<unsigned __int128>(v);
    std::string s;
    do {
      s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    } while (u != 0);
    if (v < 0) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
  };
  if (den_ == 1) return digits(num_);
  return digits(num_) + "/" + digits(den_);
}

ChaosMoments chaos_moments(const DenseMatrix& w, Cycle4Path path) {
  const std::size_t n = w.n;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.at(i, i) != 0.0) {
      throw DomainError("chaos_moments: diagonal must be zero");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w.at(i, j) != w.at(j, i)) {
        throw DomainError("chaos_moments: matrix must be symmetric");
      }
    }
  }
  auto get = [&w](std::size_t i, std::size_t j) { return w.at(i, j); };

  double second = 0.0;
  double quartic = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w2 = w.at(i, j) * w.at(i, j);
      second += w2;
      quartic += 2.0 * w2 * w2;  // both (i,j) and (j,i)
    }
  }

  double c4 = 0.0;
  switch (path) {
    case Cycle4Path::Direct:
      if (n > kCycleDirectCap) {
        throw DomainError("chaos_moments: direct cycle path capped");
      }
      c4 = cycle4_direct<double>(n, get);
      break;
    case Cycle4Path::TraceIdentity:
      c4 = cycle4_trace<double>(n, get);
      break;
    case Cycle4Path::Auto: {
      c4 = cycle4_trace<double>(n, get);
      if (n <= kCycleCrossCheckCap) {
        const double direct = cycle4_direct<double>(n, get);
        const double tol = 1e-9 * std::max(1.0, std::fabs(c4));
        if (std::fabs(direct - c4) > tol) {
          throw DomainError("chaos_moments: cycle cross-check failed");
        }
      }
      break;
    }
  }

  ChaosMoments out;
  out.second = second;
  out.fourth = 3.0 * second * second - quartic + 3.0 * c4;
  return out;
}

ChaosMomentsExact chaos_moments_exact(
    const std::vector<std::vector<long long>>& w, Cycle4Path path) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].size() != n) {
      throw DimensionError("chaos_moments_exact: matrix not square");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i][i] != 0) {
      throw DomainError("chaos_moments_exact: diagonal must be zero");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i][j] != w[j][i]) {
        throw DomainError("chaos_moments_exact: matrix must be symmetric");
      }
    }
  }
  auto get = [&w](std::size_t i, std::size_t j) {
    return static_cast<Int>(w[i][j]);
  };

  Int second = 0;
  Int quartic = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int w2 = get(i, j) * get(i, j);
      second += w2;
      quartic += 2 * w2 * w2;
    }
  }

  Int c4 = 0;
  switch (path) {
    case Cycle4Path::Direct:
      if (n > kCycleDirectCap) {
        throw DomainError("chaos_moments_exact: direct cycle path capped");
      }
      c4 = cycle4_direct<Int>(n, get);
      break;
    case Cycle4Path::TraceIdentity:
      c4 = cycle4_trace<Int>(n, get);
      break;
    case Cycle4Path::Auto: {
      c4 = cycle4_trace<Int>(n, get);
      if (n <= kCycleCrossCheckCap && cycle4_direct<Int>(n, get) != c4) {
        throw DomainError("chaos_moments_exact: cycle cross-check failed");
      }
      break;
    }
  }

  ChaosMomentsExact out;
  out.second = Rational(second, 1);
  out.fourth = Rational(3 * second * second - quartic + 3 * c4, 1);
  return out;
}

QuadraticFormMoments quadratic_form_moments(const DenseMatrix& m) {
  const std::size_t n = m.n;
  QuadraticFormMoments out;
  double frob = 0.0;
  double tr_sq = 0.0;
  double diag_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.mean += m.at(i, i);
    diag_sq += m.at(i, i) * m.at(i, i);
    for (std::size_t j = 0; j < n; ++j) {
      frob += m.at(i, j) * m.at(i, j);
      tr_sq += m.at(i, j) * m.at(j, i);
    }
  }
  out.variance = frob + tr_sq - 2.0 * diag_sq;
  return out;
}

PathDistribution enumerate_estimator_distribution(const ImpulseResponse& g,
                                                  const ExogenousError& e,
                                                  const EstimandWeights& q,
                                                  ModelKind kind,
                                                  std::size_t cap) {
  const std::size_t T = g.horizon();
  if (q.horizon() != T || e.e.size() != T) {
    throw DimensionError("enumerate: length mismatch");
  }
  if (cap > kMaxEnumerationHorizon) cap = kMaxEnumerationHorizon;
  if (T > cap) {
    throw DomainError("enumerate: horizon exceeds enumeration cap");
  }
  const std::size_t n_paths = std::size_t{1} << T;

  auto integral = [](const Signal& s) {
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (std::rint(s[t]) != s[t] || std::fabs(s[t]) > kExactEntryBound) {
        return false;
      }
    }
    return true;
  };
  const bool exact =
      integral(g.g) && integral(e.e) && integral(q.q());

  PathDistribution out;
  out.horizon = T;
  out.estimates.resize(n_paths);
  out.integer_exact = exact;

  const bool circular = kind == ModelKind::Circular;
  std::vector<int> x(T), z(T);

  if (exact) {
    std::vector<std::int64_t> gi(T), ei(T), qi(T);
    for (std::size_t t = 0; t < T; ++t) {
      gi[t] = static_cast<std::int64_t>(std::llrint(g.g[t]));
      ei[t] = static_cast<std::int64_t>(std::llrint(e.e[t]));
      qi[t] = static_cast<std::int64_t>(std::llrint(q.q()[t]));
    }
    out.numerators.resize(n_paths);
    out.denominator = static_cast<std::int64_t>(T);
    Int s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (std::size_t idx = 0; idx < n_paths; ++idx) {
      for (std::size_t t = 0; t < T; ++t) {
        x[t] = static_cast<int>((idx >> (T - 1 - t)) & 1u);
        z[t] = 2 * x[t] - 1;
      }
      std::int64_t dot = 0;
      for (std::size_t t = 0; t < T; ++t) {
        std::int64_t zq = 0;
        std::int64_t y = ei[t];
        if (circular) {
          for (std::size_t s = 0; s < T; ++s) {
            const std::size_t u = (t + T - s) % T;
            zq += qi[s] * z[u];
            y += gi[s] * x[u];
          }
        } else {
          for (std::size_t s = 0; s <= t; ++s) {
            zq += qi[s] * z[t - s];
            y += gi[s] * x[t - s];
          }
        }
        dot += zq * y;
      }
      const std::int64_t num = 2 * dot;
      out.numerators[idx] = num;
      out.estimates[idx] = static_cast<double>(num) / static_cast<double>(T);
      const Int v = num;
      s1 += v;
      s2 += v * v;
      s3 += v * v * v;
      s4 += v * v * v * v;
    }
    const Rational n_r(static_cast<Int>(n_paths), 1);
    const Rational d1(static_cast<Int>(T), 1);
    const Rational m1 = Rational(s1, 1) / (n_r * d1);
    const Rational m2 = Rational(s2, 1) / (n_r * d1 * d1);
    const Rational m3 = Rational(s3, 1) / (n_r * d1 * d1 * d1);
    const Rational m4 = Rational(s4, 1) / (n_r * d1 * d1 * d1 * d1);
    out.mean_exact = m1;
    out.variance_exact = m2 - m1 * m1;
    const Rational m1_sq = m1 * m1;
    out.fourth_central_exact = m4 - Rational(4) * m1 * m3 +
                               Rational(6) * m1_sq * m2 -
                               Rational(3) * m1_sq * m1_sq;
  } else {
    std::vector<double> gv(T), ev(T), qv(T);
    for (std::size_t t = 0; t < T; ++t) {
      gv[t] = g.g[t];
      ev[t] = e.e[t];
      qv[t] = q.q()[t];
    }
    for (std::size_t idx = 0; idx < n_paths; ++idx) {
      for (std::size_t t = 0; t < T; ++t) {
        x[t] = static_cast<int>((idx >> (T - 1 - t)) & 1u);
        z[t] = 2 * x[t] - 1;
      }
      double dot = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        double zq = 0.0;
        double y = ev[t];
        if (circular) {
          for (std::size_t s = 0; s < T; ++s) {
            const std::size_t u = (t + T - s) % T;
            zq += qv[s] * z[u];
            y += gv[s] * x[u];
          }
        } else {
          for (std::size_t s = 0; s <= t; ++s) {
            zq += qv[s] * z[t - s];
            y += gv[s] * x[t - s];
          }
        }
        dot += zq * y;
      }
      out.estimates[idx] = 2.0 * dot / static_cast<double>(T);
    }
  }

  long double mean = 0.0L;
  for (const double v : out.estimates) mean += v;
  mean /= static_cast<long double>(n_paths);
  long double var = 0.0L, fourth = 0.0L;
  for (const double v : out.estimates) {
    const long double d = v - mean;
    var += d * d;
    fourth += d * d * d * d;
  }
  out.mean = static_cast<double>(mean);
  out.variance = static_cast<double>(var / static_cast<long double>(n_paths));
  out.fourth_central =
      static_cast<double>(fourth / static_cast<long double>(n_paths));
  return out;
}

ExactVariance exact_variance_matrix(const std::vector<long long>& g,
                                    const std::vector<long long>& q,
                                    const std::vector<long long>& e,
                                    ModelKind kind) {
  const std::size_t T = g.size();
  if (q.size() != T || e.size() != T) {
    throw DimensionError("exact_variance_matrix: length mismatch");
  }
  if (T == 0 || T > kDenseOracleCap) {
    throw DomainError("exact_variance_matrix: horizon out of range");
  }
  const bool circular = kind == ModelKind::Circular;

  std::vector<std::int64_t> h_mat(T * T, 0);
  std::vector<std::int64_t> l_vec(T, 0);
  if (circular) {
    for (std::size_t i = 0; i < T; ++i) {
      for (std::size_t j = 0; j < T; ++j) {
        std::int64_t acc = 0;
        for (std::size_t t = 0; t < T; ++t) {
          acc += q[(t + T - i) % T] * g[(t + T - j) % T];
        }
        h_mat[i * T + j] = acc;
      }
    }
    std::int64_t mass = 0;
    for (std::size_t t = 0; t < T; ++t) mass += g[t];
    for (std::size_t i = 0; i < T; ++i) {
      std::int64_t acc = 0;
      for (std::size_t t = 0; t < T; ++t) {
        acc += q[(t + T - i) % T] * (mass + 2 * e[t]);
      }
      l_vec[i] = acc;
    }
  } else {
    for (std::size_t i = 0; i < T; ++i) {
      for (std::size_t j = 0; j < T; ++j) {
        std::int64_t acc = 0;
        for (std::size_t t = std::max(i, j); t < T; ++t) {
          acc += q[t - i] * g[t - j];
        }
        h_mat[i * T + j] = acc;
      }
    }
    std::int64_t run = 0;
    std::vector<std::int64_t> w(T);
    for (std::size_t t = 0; t < T; ++t) {
      run += g[t];
      w[t] = run + 2 * e[t];
    }
    for (std::size_t i = 0; i < T; ++i) {
      std::int64_t acc = 0;
      for (std::size_t t = i; t < T; ++t) acc += q[t - i] * w[t];
      l_vec[i] = acc;
    }
  }

  Int quad = 0;
  for (std::size_t i = 0; i < T; ++i) {
    for (std::size_t j = 0; j < T; ++j) {
      if (i == j) continue;
      const Int hij = h_mat[i * T + j];
      const Int hji = h_mat[j * T + i];
      quad += hij * hij + hij * hji;
    }
  }
  Int lin = 0;
  for (std::size_t i = 0; i < T; ++i) {
    const Int li = l_vec[i];
    lin += li * li;
  }

  ExactVariance out;
  out.v_quadratic = Rational(quad, static_cast<Int>(T));
  out.v_linear = Rational(lin, static_cast<Int>(T));
  out.total = Rational(quad + lin, static_cast<Int>(T) * static_cast<Int>(T));
  return out;
}

}  // namespace nof1
