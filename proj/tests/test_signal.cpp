// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "nof1/errors.hpp"
#include "nof1/fft.hpp"
#include "nof1/rng.hpp"
#include "nof1/signal.hpp"

using nof1::Signal;

namespace {

Signal random_signal(nof1::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = 4.0 * rng.next_double() - 2.0;
  return Signal(std::move(v));
}

}  // namespace

TEST_CASE("signal constructors and validation") {
  CHECK_THROWS_AS(Signal(std::vector<double>{}), nof1::DimensionError);
  CHECK_THROWS_AS(Signal({1.0, std::nan("")}), nof1::DomainError);
  CHECK_THROWS_AS(Signal({1.0, INFINITY}), nof1::DomainError);

  const Signal u = Signal::unit(4, 2);
  CHECK(u[0] == 0.0);
  CHECK(u[2] == 1.0);
  CHECK(Signal::ones(3)[1] == 1.0);
  CHECK(Signal::constant(3, 2.5)[2] == 2.5);
}

TEST_CASE("convolutions on worked three-term examples") {
  const Signal u({1.0, 0.0, 1.0});
  const Signal v({1.0, 1.0, 0.0});

  // linear: (1,0,1)*(1,1,0) truncated to T=3 is (1,1,1)
  const Signal lin = nof1::linear_convolve_direct(u, v);
  CHECK(lin[0] == doctest::Approx(1.0));
  CHECK(lin[1] == doctest::Approx(1.0));
  CHECK(lin[2] == doctest::Approx(1.0));

  // circular: (1,1,0) (*) (1,0,1) wraps the discarded tail back in:
  // full product (1,1,1,1,0) folds to (1+1, 1+0, 1) = (2,1,1)
  const Signal circ = nof1::circular_convolve_direct(v, u);
  CHECK(circ[0] == doctest::Approx(2.0));
  CHECK(circ[1] == doctest::Approx(1.0));
  CHECK(circ[2] == doctest::Approx(1.0));

  // identity kernel
  const Signal d = Signal::unit(3, 0);
  const Signal lu = nof1::linear_convolve_direct(d, u);
  for (std::size_t i = 0; i < 3; ++i) CHECK(lu[i] == doctest::Approx(u[i]));
}

TEST_CASE("convolution properties on random inputs") {
  nof1::Rng rng(0x5151);
  for (std::size_t n : {1u, 2u, 5u, 17u}) {
    const Signal a = random_signal(rng, n);
    const Signal b = random_signal(rng, n);

    // commutativity
    const Signal ab = nof1::linear_convolve_direct(a, b);
    const Signal ba = nof1::linear_convolve_direct(b, a);
    const Signal cab = nof1::circular_convolve_direct(a, b);
    const Signal cba = nof1::circular_convolve_direct(b, a);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(ab[i] == doctest::Approx(ba[i]).epsilon(1e-12));
      CHECK(cab[i] == doctest::Approx(cba[i]).epsilon(1e-12));
    }

    // circular sum identity: sum(a (*) b) = sum(a) sum(b)
    double total = 0.0;
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += cab[i];
      sa += a[i];
      sb += b[i];
    }
    CHECK(total == doctest::Approx(sa * sb).epsilon(1e-10));
  }
}

TEST_CASE("fft paths agree with direct paths") {
  nof1::Rng rng(0xabba);
  // Straddle the dispatch threshold and hit non-power-of-two sizes.
  for (std::size_t n : {63u, 64u, 65u, 100u, 128u, 300u}) {
    const Signal a = random_signal(rng, n);
    const Signal b = random_signal(rng, n);
    const Signal l1 = nof1::linear_convolve(a, b);
    const Signal l2 = nof1::linear_convolve_direct(a, b);
    const Signal c1 = nof1::circular_convolve(a, b);
    const Signal c2 = nof1::circular_convolve_direct(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(l1[i] == doctest::Approx(l2[i]).epsilon(1e-9));
      CHECK(c1[i] == doctest::Approx(c2[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("dft diagonalizes the circular convolution") {
  nof1::Rng rng(0xd1a6);
  for (std::size_t n : {4u, 12u, 37u}) {
    const Signal a = random_signal(rng, n);
    const Signal b = random_signal(rng, n);
    const Signal c = nof1::circular_convolve_direct(a, b);

    std::vector<std::complex<double>> fa(n), fb(n), fc(n);
    for (std::size_t i = 0; i < n; ++i) {
      fa[i] = a[i];
      fb[i] = b[i];
      fc[i] = c[i];
    }
    auto plan = nof1::fft::plan_for(n);
    plan->forward(fa.data());
    plan->forward(fb.data());
    plan->forward(fc.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(fc[i] - fa[i] * fb[i]) < 1e-10 * (1.0 + std::abs(fc[i])));
    }
  }
}

TEST_CASE("fft inverts itself") {
  nof1::Rng rng(0x1f1f);
  for (std::size_t n : {1u, 2u, 8u, 15u, 31u, 128u}) {
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) {
      v = {4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0};
    }
    auto copy = x;
    auto plan = nof1::fft::plan_for(n);
    plan->forward(copy.data());
    plan->inverse(copy.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(copy[i] - x[i]) < 1e-10);
    }
  }
}

TEST_CASE("dense builders and the toeplitz adjoint") {
  const Signal u({1.0, 2.0, 3.0});

  const nof1::DenseMatrix t = nof1::build_toeplitz(u);
  CHECK(t.at(0, 0) == 1.0);
  CHECK(t.at(1, 0) == 2.0);
  CHECK(t.at(2, 0) == 3.0);
  CHECK(t.at(2, 1) == 2.0);
  CHECK(t.at(0, 1) == 0.0);
  CHECK(t.at(0, 2) == 0.0);

  const nof1::DenseMatrix c = nof1::build_circulant(u);
  CHECK(c.at(0, 1) == 3.0);  // (0-1) mod 3 = 2
  CHECK(c.at(0, 2) == 2.0);
  CHECK(c.at(1, 0) == 2.0);

  // adjoint recovers the generating signal from its own Toeplitz matrix,
  // scaled by the number of diagonal entries
  const Signal back = nof1::toeplitz_adjoint(t);
  CHECK(back[0] == doctest::Approx(3.0 * 1.0));
  CHECK(back[1] == doctest::Approx(2.0 * 2.0));
  CHECK(back[2] == doctest::Approx(1.0 * 3.0));

  CHECK_THROWS_AS(nof1::build_toeplitz(Signal::ones(10), 4),
                  nof1::DomainError);
  CHECK_THROWS_AS(nof1::build_circulant(Signal::ones(10), 4),
                  nof1::DomainError);
}

TEST_CASE("convolver matches the free functions") {
  nof1::Rng rng(0xc0ffee);
  for (std::size_t n : {5u, 64u, 200u}) {
    const Signal kernel = random_signal(rng, n);
    const Signal x = random_signal(rng, n);

    const nof1::Convolver lin(kernel, nof1::Convolver::Mode::Linear);
    const nof1::Convolver circ(kernel, nof1::Convolver::Mode::Circular);
    const Signal got_l = lin.apply(x);
    const Signal got_c = circ.apply(x);
    const Signal want_l = nof1::linear_convolve_direct(kernel, x);
    const Signal want_c = nof1::circular_convolve_direct(kernel, x);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(got_l[i] == doctest::Approx(want_l[i]).epsilon(1e-9));
      CHECK(got_c[i] == doctest::Approx(want_c[i]).epsilon(1e-9));
    }

    CHECK_THROWS_AS(lin.apply(Signal::ones(n + 1)), nof1::DimensionError);
  }
}
