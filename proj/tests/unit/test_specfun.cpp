#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "oscint/specfun.hpp"

using namespace oscint;

TEST_SUITE("specfun") {

TEST_CASE("dawson against the defining integral") {
  CHECK(dawson(0) == 0);
  CHECK(std::abs(dawson(1e-6) / 1e-6 - 1) < 1e-10);
  for (double x : {-9.0, -3.7, -1.1, 0.3, 0.9241, 2.0, 3.99, 4.01, 6.4, 6.6, 8.0, 15.0}) {
    CAPTURE(x);
    CHECK(std::abs(dawson(x) - ref::dawson(x)) < 1e-12);
  }
  // derivative identity D' = 1 - 2 x D
  for (double x : {0.4, 2.5, 7.0}) {
    const double e = 1e-4, num = (dawson(x + e) - dawson(x - e)) / (2 * e);
    CHECK(std::abs(num - (1 - 2 * x * dawson(x))) < 1e-8);
  }
}

TEST_CASE("dawson maximum") {
  // golden-section search on the reference
  double a = 0.5, b = 1.5;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < 80; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (ref::dawson(c) > ref::dawson(d))
      b = d;
    else
      a = c;
  }
  const double xm = 0.5 * (a + b);
  CHECK(std::abs(xm - 0.9241) < 1e-4);
  CHECK(std::abs(dawson(xm) - 0.5410) < 1e-4);
  CHECK(std::abs(dawson(xm) - ref::dawson(xm)) < 1e-13);
}

TEST_CASE("faddeeva in the upper half plane") {
  // w(z) = (i/pi) \int e^{-t^2}/(z - t) dt for Im z > 0
  for (cplx z : {cplx(0.5, 0.5), cplx(-2, 1), cplx(3, 0.2), cplx(0.1, 4)}) {
    cplx s{};
    const int n = 40000;
    const double L = 9, dt = 2 * L / n;
    for (int i = 0; i <= n; ++i) {
      const double t = -L + i * dt;
      s += (i == 0 || i == n ? 0.5 : 1.0) * std::exp(-t * t) / (z - t);
    }
    const cplx w = kI / kPi * s * dt;
    CAPTURE(z);
    CHECK(std::abs(faddeeva_w(z) - w) < 1e-9 * std::max(1.0, std::abs(w)));
  }
}

TEST_CASE("G at the origin and identities") {
  CHECK(std::abs(g_gauss(0, Side::Right) - 0.5) < 1e-12);
  CHECK(std::abs(g_gauss(0, Side::Left) + 0.5) < 1e-12);
  for (cplx z : {cplx(1), cplx(0, 1), cplx(2, -1), cplx(-0.3, 2.2)})
    CHECK(std::abs(g_gauss(z, Side::Left) - g_gauss(z, Side::Right) + std::exp(-z * z / 2.0)) < 1e-12);
  for (double x : {0.5, 1.3}) {
    auto s = [](double v) { return g_gauss(v, Side::Left) + g_gauss(v, Side::Right); };
    CHECK(std::abs(s(x) + s(-x)) < 1e-12);
  }
}

TEST_CASE("g_gauss and g_general against line quadrature") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 12; ++i) {
    const cplx z = 3.0 * std::sqrt(std::abs(u(rng))) * std::polar(1.0, kPi * u(rng));
    for (bool left : {true, false}) {
      const Side sd = left ? Side::Left : Side::Right;
      CAPTURE(z);
      CHECK(std::abs(g_gauss(z, sd) - ref::g_ref(-1.0, z, left)) < 1e-9);
      const cplx r = std::polar(0.5 + std::abs(u(rng)), kPi + 0.6 * kPi * u(rng));
      CAPTURE(r);
      CHECK(std::abs(g_general(r, z, sd) - ref::g_ref(r, z, left)) < 1e-9 * std::max(1.0, std::abs(std::exp(r * z * z / 2.0))));
    }
  }
}

TEST_CASE("g_general residue identity and the i psi2 specialization") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 50; ++i) {
    const cplx r = std::polar(0.3 + 2 * std::abs(u(rng)), kPi + 0.9 * kPi * u(rng));
    const cplx z(2 * u(rng), 2 * u(rng));
    const cplx d = g_general(r, z, Side::Left) - g_general(r, z, Side::Right);
    CHECK(std::abs(d + std::exp(r * z * z / 2.0)) < 1e-10 * std::max(1.0, std::abs(d)));
  }
  // lambda = mu = 1, rho = 0: f = 1/2, zhat = (i/f)^{1/2} zeta with the root in the first quadrant
  const cplx f = 0.5, k = std::sqrt(kI / f);
  CHECK(k.real() > 0);
  CHECK(k.imag() > 0);
  for (cplx z : {cplx(0.3, -0.2), cplx(-1, 0.4)}) {
    const cplx zh = k * z;
    for (Side sd : {Side::Left, Side::Right}) CHECK(std::abs(g_general(kI * f, zh, sd) - g_gauss(z, sd)) < 1e-13);
    const cplx jump = g_general(kI * f, zh, Side::Right) - g_general(kI * f, zh, Side::Left);
    CHECK(std::abs(jump - std::exp(kI * f * zh * zh / 2.0)) < 1e-10);
  }
  CHECK(std::abs(g_general(-1.0, cplx(0.2, 0.7), Side::Left) - g_gauss(cplx(0.2, 0.7), Side::Left)) < 1e-15);
}

TEST_CASE("g_gauss is entire") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20; ++i) {
    const cplx z(u(rng), u(rng));
    for (Side sd : {Side::Left, Side::Right}) {
      auto d = [&](cplx dir) {
        const double e = 1e-3;
        return (8.0 * (g_gauss(z + e * dir, sd) - g_gauss(z - e * dir, sd)) - g_gauss(z + 2 * e * dir, sd) +
                g_gauss(z - 2 * e * dir, sd)) / (12 * e);
      };
      CHECK(std::abs(0.5 * (d(1.0) + kI * d(kI))) < 1e-8);
    }
  }
  // large arguments stay finite and keep the residue identity
  const cplx z(15, 12);
  CHECK(std::isfinite(std::abs(g_gauss(z, Side::Left))));
  CHECK(std::abs(g_gauss(cplx(18, 0), Side::Right) - g_gauss(cplx(18, 0), Side::Left)) < 1e-12);
}

TEST_CASE("branch_select and guards") {
  CHECK(branch_select(kI) == Side::Left);
  CHECK(branch_select(1.0) == Side::Right);
  CHECK_THROWS_AS(branch_select(std::polar(1.0, kPi / 4)), Error);
  CHECK_THROWS_AS(g_general(0.0, 1.0, Side::Left), Error);
  CHECK_THROWS_AS(g_general(-1.0, cplx(40, 0), Side::Left), Error);  // OverflowRisk
  try {
    g_general(-1.0, cplx(40, 0), Side::Left);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OverflowRisk);
  }
}

}
