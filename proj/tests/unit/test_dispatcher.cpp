#include <cstdlib>

#include "doctest.h"
#include "oscint/dispatcher.hpp"

using namespace oscint;

TEST_SUITE("dispatcher") {

TEST_CASE("classification") {
  CHECK(classify_regime(0.5, 0.01) == Regime::Far);
  CHECK(classify_regime(0.005, 0.01) == Regime::Near);
  CHECK(classify_regime(0.1, 0.01) == Regime::Intermediate);
  // h = 1/4, delta = 1/2: eps = 2|zeta|, h^{-delta} = 2; equality stays Intermediate
  CHECK(classify_regime(1.0, 0.25, 0.5) == Regime::Intermediate);
  CHECK(classify_regime(0.25, 0.25, 0.5) == Regime::Intermediate);
  CHECK_THROWS_AS(classify_regime(0.1, 0.0), Error);
  CHECK(parse_method("stokes") == Method::Stokes);
  CHECK_THROWS_AS(parse_method("magic"), Error);
}

TEST_CASE("oracle and stokes routes agree") {
  EvalRequest req;
  req.zeta = std::polar(0.3, -kPi / 8);
  req.h = 0.1;
  req.method = Method::Oracle;
  const EvalResult o = evaluate(req);
  CHECK_FALSE(o.decomposition);
  req.method = Method::Stokes;
  const EvalResult s = evaluate(req);
  REQUIRE(s.decomposition);
  CHECK(std::abs(o.value - s.value) < 1e-5);
  cplx sum{};
  for (const auto& t : *s.decomposition) {
    sum += t.value;
    CHECK(t.err >= 0);
  }
  CHECK(std::abs(sum - s.value) < 1e-15);
  CHECK(s.route == "stokes");
  CHECK(o.err_est >= 0);
}

TEST_CASE("auto route at a far point") {
  EvalRequest req;
  req.zeta = std::polar(0.5, -kPi / 8);
  req.h = 0.05;
  const EvalResult a = evaluate(req);
  CHECK(a.regime == Regime::Far);
  req.method = Method::Oracle;
  const EvalResult o = evaluate(req);
  CHECK(std::abs(a.value - o.value) <= a.err_est + o.err_est);
  CHECK(a.err_est > 0);
}

TEST_CASE("rotation failures surface") {
  EvalRequest req;
  req.zeta = std::polar(0.3, kPi / 4);
  req.rp.cone_half_width = 1.0;
  req.method = Method::Stokes;
  CHECK_THROWS_AS(evaluate(req), Error);
  try {
    evaluate(req);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoAdmissibleRotation);
  }
}

TEST_CASE("scan") {
  EvalRequest base;
  base.method = Method::Auto;
  const std::vector<double> hs{0.02, 0.01};
  const auto a = scan(base, 0.2, 0.6, 3, -0.3, -0.1, 2, hs, 1);
  const auto b = scan(base, 0.2, 0.6, 3, -0.3, -0.1, 2, hs, 3);
  REQUIRE(a.size() == 12);
  CHECK(scan_csv(a) == scan_csv(b));
  // re outer, im inner, h innermost
  CHECK(a[0].zeta == cplx(0.2, -0.3));
  CHECK(a[1].h == 0.01);
  CHECK(a[2].zeta == cplx(0.2, -0.1));
  CHECK(a[4].zeta.real() == doctest::Approx(0.4));
  for (const auto& p : a) CHECK(p.result.has_value() != !p.error.empty());

  // a point with no admissible rotation becomes an error row instead of aborting the scan
  EvalRequest wide = base;
  wide.rp.cone_half_width = 1.0;
  const auto c = scan(wide, 0.2, 0.2, 1, 0.2, 0.2, 1, {0.01}, 1);
  REQUIRE(c.size() == 1);
  CHECK_FALSE(c[0].error.empty());
  CHECK(scan_csv(c).find("error") != std::string::npos);

  CHECK_THROWS_AS(scan(base, 0, 1, 0, 0, 1, 1, hs), Error);
  setenv("OSCINT_THREADS", "2", 1);
  CHECK(worker_count(8) <= 2);
  unsetenv("OSCINT_THREADS");
  CHECK(worker_count(3) == 3);
}

}
