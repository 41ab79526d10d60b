#include "doctest.h"
#include "oracles.hpp"
#include "oscint/dsii.hpp"

using namespace oscint;

TEST_SUITE("dsii") {

TEST_CASE("Born reflection of the disk") {
  CHECK(std::abs(reflection_disk_born(1e-4) - 2.0) < 1e-7);
  CHECK(std::abs(reflection_disk_born(1e-4, -1) + 2.0) < 1e-7);
  for (double m : {0.3, 1.0, 4.0, 17.5, 60.0, 150.0}) {
    CAPTURE(m);
    const double want = ref::disk_born(m);
    CHECK(std::abs(reflection_disk_born(m) - want) < 1e-11 * (1 + std::abs(want)) + 1e-14);
    // depends on |k| only
    CHECK(std::abs(reflection_disk_born(std::polar(m, 2.1)) - want) < 1e-11 + 1e-11 * std::abs(want));
  }
  for (cplx k : {cplx(1, 0), cplx(2, -3), cplx(0, 7)})
    CHECK(std::abs(reflection_disk_born_2d(k) - reflection_disk_born(k)) < 1e-8);
  CHECK_THROWS_AS(reflection_disk_born(0.0), Error);
}

TEST_CASE("large-|k| forms") {
  const double m = 30;
  const double a = 2 * m - kPi / 4, env = reflection_envelope(m);
  CHECK(env == doctest::Approx(2 / std::sqrt(kPi * m * m * m)));
  CHECK(std::abs(reflection_disk_asym(m, 1, AsymCorrection::Bessel) - env * (std::sin(a) + 3 / (16 * m) * std::cos(a))) <
        1e-16);
  // the two corrections differ by (1/(2|k|)) cos(2|k| - pi/4) in envelope units
  const cplx d = reflection_disk_asym(m) - reflection_disk_asym(m, 1, AsymCorrection::Bessel);
  CHECK(std::abs(d + env * std::cos(a) / (2 * m)) < 1e-16);
  CHECK_THROWS_AS(reflection_disk_asym(4.0), Error);

  // error of the Bessel form decays like |k|^{-2} in envelope units, the stated one like |k|^{-1}
  std::vector<double> ks, eb, es;
  for (double K : {10.0, 20.0, 40.0, 80.0}) {
    double mb = 0, ms = 0;
    for (int j = 0; j < 16; ++j) {
      const double k = K + j * kPi / 32;
      const double born = ref::disk_born(k), e = reflection_envelope(k);
      mb = std::max(mb, std::abs(reflection_disk_asym(k, 1, AsymCorrection::Bessel) - born) / e);
      ms = std::max(ms, std::abs(reflection_disk_asym(k) - born) / e);
    }
    ks.push_back(K);
    eb.push_back(mb);
    es.push_back(ms);
  }
  CHECK(ref::fit_order(ks, eb) == doctest::Approx(-2).epsilon(0.1));
  CHECK(ref::fit_order(ks, es) == doctest::Approx(-1).epsilon(0.1));
}

TEST_CASE("time evolution") {
  const cplx R0(0.3, -0.2);
  CHECK(reflection_evolve(R0, cplx(1, 1), 5.0) == R0);  // Re k^2 = 0
  CHECK(reflection_evolve(R0, 2.0, 0.0) == R0);
  CHECK(std::abs(reflection_evolve(R0, 2.0, 0.3)) == doctest::Approx(std::abs(R0)));
  CHECK(std::abs(reflection_evolve(R0, 2.0, 0.3) - R0 * std::exp(kI * 4.8)) < 1e-15);
}

TEST_CASE("integrands") {
  const cplx k(1.5, -0.5);
  const double t = 0.4;
  const DSIntegrand p = dsii_integrand(1, k, t), m = dsii_integrand(-1, k, t);
  for (cplx w : {cplx(0.3, 0.2), cplx(-1.1, 0.7), cplx(2, -2)}) {
    const cplx wb = std::conj(w);
    const double r = std::abs(w);
    CHECK(std::abs(p.amp(w, wb, 0.1) * m.amp(w, wb, 0.1) + 1 / (kPi * r * r * r)) < 1e-13);
    CHECK(std::abs(p.phase(w, wb).imag()) < 1e-13);
    CHECK(std::abs(m.phase(w, wb).imag()) < 1e-13);
    const double want = 4 * t * (w * w).real() + 2 * (k * w).imag() + 2 * r;
    CHECK(p.phase(w, wb).real() == doctest::Approx(want).epsilon(1e-13));
    // closure gradient against differences
    const double e = 1e-6;
    const cplx dw = (p.phase(w + e, wb) - p.phase(w - e, wb)) / (2 * e);
    CHECK(std::abs(p.phase.grad(w, wb)[0] - dw) < 1e-7);
  }
  CHECK_THROWS_AS(p.phase(0.01, 0.01), Error);
  CHECK_THROWS_AS(p.amp(0.0, 0.0, 0.1), Error);
  CHECK_THROWS_AS(dsii_integrand(0, k, t), Error);

  for (int br : {1, -1}) {
    const auto sp = dsii_stationary_points(br, k, t, -4, 4, -4, 4);
    for (const auto& s : sp) {
      CHECK(std::abs(s.point) > 0.05);
      const auto g = dsii_integrand(br, k, t).phase.grad(s.point, std::conj(s.point));
      CHECK(std::abs(g[0]) + std::abs(g[1]) < 1e-8);
    }
  }
}

}
