// quadrature engine, jets, cutoff
#include "doctest.h"
#include "oscint/cutoff.hpp"
#include "oscint/jet.hpp"
#include "oscint/quadrature.hpp"

using namespace oscint;

TEST_SUITE("quadrature") {

TEST_CASE("1D rules") {
  auto g = [](double x) { return cplx(std::exp(-x * x / 2)); };
  auto r = integrate_1d(g, -12, 12);
  CHECK(r.ok());
  CHECK(std::abs(r.value - std::sqrt(2 * kPi)) < 1e-13);
  r = integrate_1d(g, -12, 12, QuadOptions{1e-12, 1e-15, 0, 4000, 15});
  CHECK(std::abs(r.value - std::sqrt(2 * kPi)) < 1e-12);
  // reversed limits
  CHECK(std::abs(integrate_1d(g, 12, -12).value + std::sqrt(2 * kPi)) < 1e-13);
  // kink handled by a breakpoint
  auto k = [](double x) { return cplx(std::abs(x - 0.3)); };
  r = integrate_1d(k, 0, 1, {}, {0.3});
  CHECK(std::abs(r.value - (0.045 + 0.245)) < 1e-15);
  CHECK(r.l1 == doctest::Approx(0.29));
}

TEST_CASE("contour integrals") {
  auto f = [](cplx w) { return std::exp(kI * w * w / 2.0); };
  auto r = contour_integral_1d(f, Path::line(0, std::polar(1.0, kPi / 4), 12));
  CHECK(std::abs(r.value - std::polar(std::sqrt(2 * kPi), kPi / 4)) < 1e-12);
  // G^r(0) = 1/2: the line passes above the pole
  auto g = [](cplx w) { return std::exp(-w * w / 2.0) / (0.0 - w) / (2 * kPi * kI); };
  r = contour_integral_1d(g, Path::line(cplx(0, 0.1), 1.0, 14));
  CHECK(std::abs(r.value - 0.5) < 1e-12);
  r = contour_integral_1d(g, Path::line(cplx(0, -0.1), 1.0, 14));
  CHECK(std::abs(r.value + 0.5) < 1e-12);
}

TEST_CASE("budget exhaustion is reported") {
  auto osc = [](double x) { return cplx(std::sin(1e4 * x * x)); };
  QuadOptions o;
  o.max_pieces = 20;
  auto r = integrate_1d(osc, 0, 3, o);
  CHECK(r.status == QuadStatus::ToleranceNotReached);
  auto r2 = integrate_2d([](double x, double y) { return cplx(std::sin(1e3 * x * y)); }, Rect{0, 3, 0, 3}, o);
  CHECK(r2.status == QuadStatus::OscillationLimit);
}

TEST_CASE("2D rule and determinism") {
  auto f = [](double x, double y) { return cplx(std::exp(-(x * x + y * y) / 2), x * y); };
  auto a = integrate_2d(f, Rect{-9, 9, -9, 9}, {}, 3, 3);
  CHECK(std::abs(a.value - 2 * kPi) < 1e-10);
  auto b = integrate_2d(f, Rect{-9, 9, -9, 9}, {}, 3, 3);
  CHECK(a.value == b.value);
}

}

TEST_SUITE("jet") {

TEST_CASE("Taylor coefficients") {
  using J = Jet<cplx>;
  const J x = J::variable(8, 0.3);
  const J e = exp(x);
  double fact = 1;
  for (int k = 0; k < 8; ++k) {
    if (k) fact *= k;
    CHECK(std::abs(e[k] - std::exp(0.3) / fact) < 1e-14);
  }
  const J s = sqrt(1.0 + x * x);  // sqrt(1 + t^2) around 0.3
  CHECK(std::abs(s[0] - std::sqrt(1.09)) < 1e-15);
  CHECK(std::abs(s[1] - 0.3 / std::sqrt(1.09)) < 1e-15);
  CHECK(std::abs(s[2] - 0.5 * std::pow(1.09, -1.5)) < 1e-14);
  const J q = 1.0 / (1.0 - x);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(q[k] - std::pow(0.7, -k - 1)) < 1e-12);
  const J d = derivative(e);
  CHECK(std::abs(d[0] - std::exp(0.3)) < 1e-14);
  CHECK(std::abs(d[2] - std::exp(0.3) / 2) < 1e-14);
}

}

TEST_SUITE("cutoff") {

TEST_CASE("smooth step and the real-plane cutoff") {
  CHECK(smooth_step(-1) == 1);
  CHECK(smooth_step(0) == 1);
  CHECK(smooth_step(1) == 0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(smooth_step(0.3) + smooth_step(0.7) == doctest::Approx(1));
  const CutoffSpec c;
  CHECK(chi_real(c, c.flat_radius() * 0.999) == 1);
  CHECK(chi_real(c, c.support_radius() * 1.001) == 0);
  // exp(-1/x) underflows near the ends, so the flat disk reaches a little past r_in
  CHECK(c.flat_radius() >= 1.5 / std::sqrt(2.0));
  CHECK(c.flat_radius() < 1.02 * 1.5 / std::sqrt(2.0));
  CutoffSpec bad;
  bad.r_out = 1;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("almost-holomorphic extension") {
  const CutoffSpec c;
  const double X1 = 1.2, X2 = 0.5;
  const ChiExt e0 = chi_extended(c, X1, X2, 0, 0);
  CHECK(std::abs(e0.value - chi_real(c, cplx(X1, X2))) < 1e-14);
  CHECK(std::abs(e0.dbar_xi) + std::abs(e0.dbar_eta) < 1e-14);
  // d-bar decays like |Y|^M
  const double a = std::abs(chi_extended(c, X1, X2, 1e-2, 0.5e-2).dbar_xi);
  const double b = std::abs(chi_extended(c, X1, X2, 0.5e-2, 0.25e-2).dbar_xi);
  CHECK(a / b == doctest::Approx(std::pow(2.0, c.ah_order)).epsilon(0.05));
  // matches the real cutoff with zero imaginary parts in (w, wt) form
  const cplx w(0.9, 0.4);
  CHECK(std::abs(chi_extended_w(c, w, std::conj(w)).value - chi_real(c, w)) < 1e-14);
}

}
