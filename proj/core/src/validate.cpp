#include "oscint/validate.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "oscint/dispatcher.hpp"
#include "oscint/specfun.hpp"

namespace oscint {

namespace {

struct Sink {
  std::string suite;
  std::vector<Check>& out;
  void add(const std::string& name, double value, double limit, std::string note = {}) {
    out.push_back({suite, name, value, limit, value <= limit, std::move(note)});
  }
};

// (1/2 pi i) \int e^{-w^2/2}/(zeta-w) dw along Im w = const, leaving the pole on the requested side
cplx g_by_line(cplx zeta, Side side) {
  const double y = zeta.imag() + (side == Side::Left ? -1.0 : 1.0);
  auto f = [&](cplx w) { return std::exp(-w * w / 2.0) / (zeta - w) / (2 * kPi * kI); };
  return contour_integral_1d(f, Path::line(cplx(zeta.real(), y), 1.0, 14.0), QuadOptions{1e-13, 1e-16}).value;
}

void specfun_suite(std::vector<Check>& out) {
  Sink s{"specfun", out};
  s.add("G^r(0) = 1/2", std::abs(g_gauss(0, Side::Right) - 0.5), 1e-12);
  s.add("G^l(0) = -1/2", std::abs(g_gauss(0, Side::Left) + 0.5), 1e-12);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  double res = 0, odd = 0, line = 0, cr = 0;
  for (int i = 0; i < 20; ++i) {
    const cplx z(u(rng), u(rng));
    res = std::max(res, std::abs(g_gauss(z, Side::Left) - g_gauss(z, Side::Right) + std::exp(-z * z / 2.0)));
    for (Side sd : {Side::Left, Side::Right}) {
      // fourth-order central differences along x and y
      auto d = [&](cplx dir) {
        const double e = 1e-3;
        return (8.0 * (g_gauss(z + e * dir, sd) - g_gauss(z - e * dir, sd)) - g_gauss(z + 2 * e * dir, sd) +
                g_gauss(z - 2 * e * dir, sd)) / (12 * e);
      };
      cr = std::max(cr, std::abs(0.5 * (d(1.0) + kI * d(kI))));
    }
  }
  s.add("residue identity, 20 points", res, 1e-10);
  s.add("Cauchy-Riemann defect, 20 points", cr, 1e-8);
  for (double x : {0.5, 1.3, 2.7}) {
    auto sum = [](double v) { return g_gauss(v, Side::Left) + g_gauss(v, Side::Right); };
    odd = std::max(odd, std::abs(sum(x) + sum(-x)));
  }
  s.add("G^l + G^r odd on R", odd, 1e-10);
  for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 0.8), cplx(2, -1.5), cplx(0, -2.5)})
    for (Side sd : {Side::Left, Side::Right}) line = std::max(line, std::abs(g_gauss(z, sd) - g_by_line(z, sd)));
  s.add("g_gauss vs line integral", line, 1e-9);
  double gen = 0;
  for (cplx z : {cplx(0.3, 0.4), cplx(-1, 1)})
    for (Side sd : {Side::Left, Side::Right}) gen = std::max(gen, std::abs(g_general(-1.0, z, sd) - g_gauss(z, sd)));
  s.add("g_general(r=-1) = g_gauss", gen, 1e-13);

  s.add("D(0) = 0", std::abs(dawson(0)), 1e-15);
  s.add("D'(0) = 1", std::abs(dawson(1e-6) / 1e-6 - 1), 1e-10);
  s.add("D(0.9241) ~ 0.5410", std::abs(dawson(0.9241) - 0.5410), 5e-5);
}

void stokes_suite(std::vector<Check>& out) {
  Sink s{"stokes", out};
  auto [w1, wt1] = gamma_point(1, 1, 2);
  s.add("Gamma_1 point", std::abs(w1 - cplx(3, 3)) + std::abs(wt1 - cplx(-1, -1)), 1e-15);
  s.add("zeta~(1/2) at zeta = 1", std::abs(zeta_tilde_theta(1.0, 0.5) - cplx(5.0 / 3, 4.0 / 3)), 1e-15);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1), th(0, 0.99);
  const PhaseSpec q = PhaseSpec::quadratic(2, 1, 0.5);
  double rt = 0, pos = 0, mem = 0;
  for (int i = 0; i < 50; ++i) {
    const double theta = th(rng), t = u(rng), sv = u(rng);
    auto [w, wt] = gamma_point(theta, t, sv);
    auto [w2, wt2] = from_w(theta, to_w(theta, w, wt));
    rt = std::max(rt, std::abs(w2 - w) + std::abs(wt2 - wt));
    pos = std::max(pos, std::abs(q(w, wt).imag() - theta * (2 * t * t + 1 * sv * sv)));
    const cplx z(u(rng), u(rng));
    const cplx zp = pole_preimage(z, theta);
    auto [pw, pwt] = gamma_point(theta, zp.real(), zp.imag());
    mem = std::max(mem, std::abs(pw - z) + std::abs(pwt - zeta_tilde_theta(z, theta)));
  }
  s.add("w-coordinate round trip", rt, 1e-13);
  s.add("Im phi2 = theta (lambda t^2 + mu s^2) on Gamma_theta", pos, 1e-12);
  s.add("(zeta, zeta~) on Gamma_theta", mem, 1e-12);

  const Decomposition d = decomposition_check(AmplitudeSpec{}, PhaseSpec::quadratic(1, 1, 0), CutoffSpec{},
                                              std::polar(0.3, -kPi / 8), 0.1);
  char buf[160];
  std::snprintf(buf, sizeof buf, "|I| %.3e |II| %.3e |III| %.3e", std::abs(d.I.value), std::abs(d.II.value),
                std::abs(d.III.value));
  s.add("oracle = I + II + III at h = 0.1", d.defect, 1e-5, buf);
}

void regimes_suite(std::vector<Check>& out) {
  Sink s{"regimes", out};
  struct Row {
    double h, r;
    Regime want;
  };
  int bad = 0;
  for (const Row& row : {Row{0.01, 0.5, Regime::Far}, Row{0.01, 0.005, Regime::Near},
                         Row{0.01, 0.1, Regime::Intermediate}})
    bad += classify_regime(row.r, row.h) != row.want;
  s.add("classify_regime examples (mismatches)", bad, 0);

  // fixed zeta, decreasing h: eps grows faster than h^{-delta}, so Near -> Intermediate -> Far
  int inversions = 0, prev = -1;
  for (double h = 0.5; h > 1e-6; h *= 0.7) {
    const int rank = 2 - int(classify_regime(0.05, h));  // Near 0, Intermediate 1, Far 2
    if (rank < prev) ++inversions;
    prev = rank;
  }
  s.add("monotone handoff as h decreases (inversions)", inversions, 0);

  EvalRequest req;
  for (auto [z, h] : {std::pair<cplx, double>{std::polar(0.5, -kPi / 8), 0.05},
                      {std::polar(0.1, -kPi / 8), 0.02},
                      {std::polar(0.004, 3 * kPi / 5), 0.02}}) {
    req.zeta = z;
    req.h = h;
    const EvalResult r = evaluate(req);
    const QuadResult o = solid_cauchy(req.amp, req.phase, req.chi, z, h, req.stokes.quad);
    char name[96];
    std::snprintf(name, sizeof name, "auto within err_est of oracle (%s, h = %g)", to_string(r.regime), h);
    s.add(name, std::abs(r.value - o.value), r.err_est + o.err, r.route);
  }
}

}  // namespace

std::vector<Check> run_validation(const std::string& suite) {
  std::vector<Check> out;
  const bool all = suite == "all";
  if (!all && suite != "specfun" && suite != "stokes" && suite != "regimes")
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  if (all || suite == "specfun") specfun_suite(out);
  if (all || suite == "stokes") stokes_suite(out);
  if (all || suite == "regimes") regimes_suite(out);
  return out;
}

std::string format_check(const Check& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "[%s] %-8s %-55s %.3e <= %.3e%s%s", c.pass ? "PASS" : "FAIL", c.suite.c_str(),
                c.name.c_str(), c.value, c.limit, c.note.empty() ? "" : "  ", c.note.c_str());
  return buf;
}

}  // namespace oscint
