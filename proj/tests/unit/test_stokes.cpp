#include <random>

#include "doctest.h"
#include "oscint/stokes.hpp"

using namespace oscint;

TEST_SUITE("stokes") {

TEST_CASE("contour family") {
  auto [w, wt] = gamma_point(0, 1, 2);
  CHECK(w == cplx(1, 2));
  CHECK(wt == cplx(1, -2));
  std::tie(w, wt) = gamma_point(1, 1, 2);
  CHECK(std::abs(w - cplx(3, 3)) < 1e-15);
  CHECK(std::abs(wt - cplx(-1, -1)) < 1e-15);
  std::tie(w, wt) = gamma_point(0.5, 1, 0);
  CHECK(std::abs(w - cplx(1, 0.5)) < 1e-15);
  CHECK(std::abs(wt - cplx(1, 0.5)) < 1e-15);
}

TEST_CASE("partner point") {
  const cplx z(0.3, -0.7);
  CHECK(zeta_tilde_theta(z, 0) == std::conj(z));
  CHECK(std::abs(zeta_tilde_theta(1.0, 0.5) - cplx(5.0 / 3, 4.0 / 3)) < 1e-15);
  CHECK_THROWS_AS(zeta_tilde_theta(z, 1.0), Error);
  // zeta = i, theta = 1/2: check membership through the pre-image
  const cplx zp = pole_preimage(kI, 0.5);
  auto [w, wt] = gamma_point(0.5, zp.real(), zp.imag());
  CHECK(std::abs(w - kI) < 1e-15);
  CHECK(std::abs(wt - zeta_tilde_theta(kI, 0.5)) < 1e-15);

  CHECK(zeta_tilde_t(z, 0) == std::conj(z));
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 100; ++i) {
    const cplx zz(u(rng), u(rng));
    const double t = 5 * std::abs(u(rng));
    const cplx sigma = zz / std::abs(zz);
    const double sp = s_plus(sigma), sm = s_minus(sigma);
    CHECK(std::abs(sp * sp + sm * sm - 1) < 1e-14);
    const cplx g1 = std::sqrt(1 + t * t) - t;
    const cplx alt = std::abs(zz) * (2 * sp * std::polar(1.0, kPi / 4) * t + std::conj(sigma) * g1);
    CHECK(std::abs(zeta_tilde_t(zz, t) - alt) < 1e-14 * (1 + t));
  }
  // sigma = e^{-i pi/4}: s+ = 1
  CHECK(s_plus(std::polar(1.0, -kPi / 4)) == doctest::Approx(1));
}

TEST_CASE("w coordinates") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-1, 1), th(0, 1);
  for (int i = 0; i < 50; ++i) {
    const double theta = th(rng);
    auto [w, wt] = gamma_point(theta, u(rng), u(rng));
    const WCoords c = to_w(theta, w, wt);
    CHECK(std::abs(c.wp.imag()) + std::abs(c.wm.imag()) < 1e-14);
    auto [w2, wt2] = from_w(theta, c);
    CHECK(std::abs(w2 - w) + std::abs(wt2 - wt) < 1e-14);
    if (theta < 0.99) {
      const WCoords c1 = to_w_from_omega(theta, w), c2 = to_w_from_omega_tilde(theta, wt);
      CHECK(std::abs(c1.wp - c.wp) + std::abs(c1.wm - c.wm) < 1e-12);
      CHECK(std::abs(c2.wp - c.wp) + std::abs(c2.wm - c.wm) < 1e-12);
    }
  }
  const WCoords c{0.7, -0.4};
  auto [w, wt] = from_w(1, c);
  CHECK(std::abs(w - std::polar(1.0, kPi / 4) * c.wm) < 1e-15);
  CHECK(std::abs(wt - std::polar(1.0, kPi / 4) * c.wp) < 1e-15);
}

TEST_CASE("positivity of Im phi on the contours") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1, 1), th(0, 1);
  const double l = 1.7, m = 0.6;
  const PhaseSpec q = PhaseSpec::quadratic(l, m, 0.9);
  for (int i = 0; i < 100; ++i) {
    const double theta = th(rng), t = u(rng), s = u(rng);
    auto [w, wt] = gamma_point(theta, t, s);
    CHECK(std::abs(q(w, wt).imag() - theta * (l * t * t + m * s * s)) < 1e-12);
  }
  // Gamma_1 with a cubic term: Im phi comparable to |w|^2 + |wt|^2 near 0
  const PhaseSpec cb(Poly2::from_coeffs({{{2, 0}, 0.25}, {{0, 2}, 0.25}, {{3, 0}, 0.05}, {{0, 3}, 0.05}}));
  double lo = 1e9, hi = 0;
  for (int i = 0; i < 200; ++i) {
    auto [w, wt] = gamma_point(1, 0.5 * u(rng), 0.5 * u(rng));
    const double r = std::norm(w) + std::norm(wt);
    if (r < 1e-6) continue;
    lo = std::min(lo, cb(w, wt).imag() / r);
    hi = std::max(hi, cb(w, wt).imag() / r);
  }
  CHECK(lo > 0.05);
  CHECK(hi < 1.0);
}

TEST_CASE("term II integrand at t = 0") {
  const PhaseSpec p = PhaseSpec::quadratic(1, 1, 0);
  const CutoffSpec chi;
  const cplx z = std::polar(0.3, -kPi / 8);
  const double h = 0.05;
  const cplx want = -kI * z * std::exp(kI * p(z, std::conj(z)) / h);
  CHECK(std::abs(term_II_integrand(AmplitudeSpec{}, p, chi, z, h, 0) - want) < 1e-14);
}

TEST_CASE("cone condition") {
  const PhaseSpec p = PhaseSpec::quadratic(1, 1, 0);
  CHECK_THROWS_AS(term_I_numeric(AmplitudeSpec{}, p, CutoffSpec{}, std::polar(0.3, kPi / 4), 0.1), Error);
  CHECK_THROWS_AS(term_II_numeric(AmplitudeSpec{}, p, CutoffSpec{}, std::polar(0.3, -3 * kPi / 4 + 0.01), 0.1), Error);
}

TEST_CASE("truncating II at h^{-delta}/eps costs almost nothing") {
  const PhaseSpec p = PhaseSpec::quadratic(1, 1, 0);
  const cplx z = std::polar(0.1, -kPi / 8);
  const double h = 0.01, eps = std::abs(z) / std::sqrt(h);
  StokesConfig cut;
  cut.t_max = std::pow(h, -0.1) / eps;
  auto full = term_II_numeric(AmplitudeSpec{}, p, CutoffSpec{}, z, h);
  auto part = term_II_numeric(AmplitudeSpec{}, p, CutoffSpec{}, z, h, cut);
  CHECK(std::abs(full.value - part.value) <= (1 / eps) * std::exp(-std::pow(h, -0.2) / 2) + full.err + part.err);
}

TEST_CASE("decomposition identity at a cheap point") {
  const auto d = decomposition_check(AmplitudeSpec{}, PhaseSpec::quadratic(2, 1, 1), CutoffSpec{},
                                     std::polar(0.3, -kPi / 8), 0.2);
  CHECK(d.defect <= 1e-5);
  CHECK(std::abs(d.III.value) > 0);
}

}
