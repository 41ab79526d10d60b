#include "doctest.h"
#include "oracles.hpp"
#include "oscint/asymptotics.hpp"
#include "oscint/specfun.hpp"

using namespace oscint;

namespace {
const PhaseSpec P2 = PhaseSpec::quadratic(1, 1, 0);
RegimeParams loose() {
  RegimeParams r;
  r.enforce = false;
  return r;
}
}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("regime parameters") {
  RegimeParams rp;
  CHECK_NOTHROW(rp.validate());
  rp.delta = 0.2;
  CHECK_THROWS_AS(rp.validate(), Error);
  rp.delta = 0.1;
  CHECK(rp.eps_near(0.01) < rp.eps_far(0.01));
  CHECK(RegimeParams::eps(0.5, 0.01) == doctest::Approx(5));
}

TEST_CASE("far field closed form") {
  // b1 = 4, c1(0.5) = -4i for phi2, a = 1
  for (double h : {0.1, 0.01}) {
    const auto f = far_field(AmplitudeSpec{}, P2, 0.5, h);
    const cplx want = h * (-4.0 * kI * std::exp(kI * 0.125 / h) + 4.0);
    CHECK(std::abs(f.value - want) < 1e-14);
    CHECK(f.order_claim == 2);
    CHECK(f.next_correction > 0);
  }
  CHECK_THROWS_AS(far_field(AmplitudeSpec{}, P2, 0.05, 0.01), Error);  // eps = 0.5
}

TEST_CASE("rescaled far field agrees with the direct form") {
  const cplx z = std::polar(0.2, -kPi / 8);
  const double h = 0.01;
  const auto a = far_field(AmplitudeSpec{}, P2, z, h, loose());
  const auto b = far_field_rescaled(AmplitudeSpec{}, P2, z, h, loose());
  CHECK(std::abs(a.value - b.value) < 1e-3 * h);
  // non-trivial symbol: a = 1 + 0.3 w wt + h (0.5 + 0.2 i w)
  const AmplitudeSpec s = parse_amplitude("amp j=0\n0 0 1 0\n1 1 0.3 0\namp j=1\n0 0 0.5 0\n1 0 0 0.2\n");
  const auto c = far_field(s, P2, z, h, loose());
  const auto d = far_field_rescaled(s, P2, z, h, loose());
  CHECK(std::abs(c.value - d.value) < 0.1 * h);
}

TEST_CASE("near-field term I") {
  const double h = 0.01;
  const cplx z = std::polar(0.05, -kPi / 8);
  const auto r = near_field_term_I(AmplitudeSpec{}, P2, z, h);
  // prefactor 2 sqrt(pi) e^{i pi/4} h^{1/2}; zeta_dagger = zeta / (h^{1/2} (1+i))
  const cplx zd = z / (std::sqrt(h) * cplx(1, 1));
  const Side sd = branch_select(z / std::sqrt(h));
  const cplx want = 2 * std::sqrt(kPi) * std::polar(1.0, kPi / 4) * std::sqrt(h) * g_gauss(zd, sd);
  CHECK(std::abs(r.value - want) < 1e-14);
  CHECK_THROWS_AS(near_field_term_I(AmplitudeSpec{}, P2, 0.5, h), Error);  // beyond h^{1/2-delta}
  CHECK_THROWS_AS(near_field_term_I(AmplitudeSpec{}, P2, std::polar(0.05, kPi / 4), h), Error);

  // continuous inside a half-plane, mirror image across e^{i pi/4} R switches the branch
  cplx prev = near_field_term_I(AmplitudeSpec{}, P2, std::polar(0.05, -kPi / 2), h).value;
  for (int i = 1; i <= 40; ++i) {
    const cplx zz = std::polar(0.05, -kPi / 2 + i * (kPi / 2 - 0.3) / 40);
    const cplx v = near_field_term_I(AmplitudeSpec{}, P2, zz, h).value;
    CHECK(std::abs(v - prev) < 0.05 * std::abs(v));
    prev = v;
  }
  const cplx mirror = std::polar(1.0, kPi / 2) * std::conj(z);
  CHECK(branch_select(mirror) != branch_select(z));
}

TEST_CASE("near-field term II and totals") {
  const double h = 0.01;
  const cplx z = std::polar(0.005, -kPi / 8);
  const auto r = near_field_term_II(AmplitudeSpec{}, P2, z, h);
  const cplx lit = std::sqrt(h) * std::sqrt(2 * kPi) * std::polar(1.0, -kPi / 4) / std::sqrt(2.0);  // s+ > 0
  CHECK(std::abs(near_field_term_II_uncalibrated(AmplitudeSpec{}, P2, z, h) - lit) < 1e-15);
  CHECK(std::abs(r.value - (-kI * lit)) < 1e-15);
  CHECK(std::abs(near_field_term_II(AmplitudeSpec{}, P2, -z, h).value + r.value) < 1e-15);

  const auto c = near_field_total(AmplitudeSpec{}, P2, z, h, NearForm::Coarse);
  CHECK(std::abs(c.value - std::sqrt(2 * kPi) * std::sqrt(h)) < 1e-14);
  // one-sided limits of the coarse form across the cone line differ by 2 |lead|
  const double a = kPi / 4;  // Re(e^{i pi/4} zeta) = 0 on this ray, inside the excluded cone
  const auto up = near_field_total(AmplitudeSpec{}, P2, std::polar(0.005, a - 0.3), h, NearForm::Coarse, loose());
  const auto dn = near_field_total(AmplitudeSpec{}, P2, std::polar(0.005, a + 0.3), h, NearForm::Coarse, loose());
  CHECK(std::abs(up.value - dn.value) == doctest::Approx(2 * std::sqrt(2 * kPi) * std::sqrt(h)));

  // fine form tends to 0 with zeta for an even phase and is bounded by the lead
  const auto f = near_field_total(AmplitudeSpec{}, P2, z, h, NearForm::Fine);
  CHECK(std::abs(f.value) < std::abs(c.value));
  CHECK(near_field_total(AmplitudeSpec{}, P2, 0.0, h, NearForm::Fine).value == cplx(0));
  CHECK(f.next_correction > 0);
}

TEST_CASE("tail expansion") {
  const double h = 0.01, T = 10;
  const cplx z = std::polar(0.15, -kPi / 8);
  const auto t0 = tail_expansion(AmplitudeSpec{}, P2, z, T, 0, h);
  // c0 = h b / phi' with phi(t) = i phi(zeta, zeta~(t)) and b = -i a conj(zeta~)/sqrt(1+t^2)
  auto ph = [&](double t) {
    const cplx zt = zeta_tilde_t(z, t);
    return kI * P2(z, zt);
  };
  const double e = 1e-5;
  const cplx dphi = (ph(T + e) - ph(T - e)) / (2 * e);
  const cplx b = -kI * std::conj(zeta_tilde_t(z, T)) / std::sqrt(1 + T * T);
  CHECK(std::abs(t0.c[0] - h * b / dphi) < 1e-8 * std::abs(t0.c[0]));
  // |d_t phi| grows like |zeta|^2 t
  for (double t : {8.0, 16.0}) {
    const double g = std::abs((ph(t + e) - ph(t - e)) / (2 * e)) / (std::norm(z) * t);
    CHECK(g > 0.3);
    CHECK(g < 3);
  }
  // converges towards the direct quadrature, the first steps by large factors
  const auto d = tail_direct(AmplitudeSpec{}, P2, z, T, h);
  const double e0 = std::abs(t0.value - d.value);
  const double e1 = std::abs(tail_expansion(AmplitudeSpec{}, P2, z, T, 1, h).value - d.value);
  CHECK(e1 < e0 / 50);
  CHECK(e0 <= 10 * t0.bound);
  CHECK_THROWS_AS(tail_expansion(AmplitudeSpec{}, P2, z, 0.5, 1, h), Error);  // T eps < 10
}

TEST_CASE("hybrid II") {
  const double h = 0.01;
  const cplx z = std::polar(0.1, -kPi / 8);  // eps = 1
  const auto full = term_II_numeric(AmplitudeSpec{}, P2, CutoffSpec{}, z, h);
  const auto hy10 = hybrid_II(AmplitudeSpec{}, P2, CutoffSpec{}, z, h, 10, 2);
  const auto hy20 = hybrid_II(AmplitudeSpec{}, P2, CutoffSpec{}, z, h, 20, 2);
  CHECK(std::abs(hy10.value - full.value) <= hy10.err + full.err + 1e-12);
  CHECK(std::abs(hy10.value - hy20.value) <= hy10.err + hy20.err + 1e-12);
}

TEST_CASE("gaussian moments") {
  const double sq = std::sqrt(kPi / 2);
  const double want[8] = {sq, 1, sq, 2, 3 * sq, 8, 15 * sq, 48};
  for (int k = 0; k <= 7; ++k) CHECK(gaussian_moment_coeff(k) == doctest::Approx(want[k]).epsilon(1e-15));
  CHECK(gaussian_moment_coeff(-1) == doctest::Approx(1));
  CHECK(gaussian_moment_coeff(-3) == doctest::Approx(-0.5));
  CHECK(gaussian_moment_coeff(-5) == doctest::Approx(0.125));
  const MomentCutoff chi;
  for (int k : {-9, -6, -3, -1, 0, 2, 5}) {
    const double eps = 0.2;
    const double r = ref::simpson(
        [&](double t) { return t <= 0 ? 0.0 : std::exp(-eps * eps * t * t / 2) * std::pow(t, k) * chi(t); }, 0.0, 60.0,
        400000);
    const auto m = gaussian_moment(k, eps);
    CAPTURE(k);
    CHECK(m.value == doctest::Approx(r).epsilon(1e-8));
    CHECK(m.value == doctest::Approx(m.singular + m.an).epsilon(1e-14));
    CHECK(m.kind == (k >= 0 ? MomentKind::Power : (k % 2 ? MomentKind::Log : MomentKind::Analytic)));
  }
}

}
