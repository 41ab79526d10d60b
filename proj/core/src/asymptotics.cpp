#include "oscint/asymptotics.hpp"

#include <cmath>

#include "oscint/jet.hpp"
#include "oscint/specfun.hpp"

namespace oscint {

namespace {

const double kSqrt2Pi = std::sqrt(2 * kPi);

void check_zeta(cplx zeta, double h, double hw) {
  if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
  if (zeta == 0.0) throw Error(ErrorKind::EvaluationAtOrigin, "zeta = 0");
  if (cone_distance(zeta) < hw)
    throw Error(ErrorKind::ConeViolation, "arg zeta within the cone around e^{i pi/4} R");
}

// d/d wt of a_j at (w, wt); closures by a holomorphic central difference
cplx amp_dwt(const AmplitudeSpec& a, int j, cplx w, cplx wt) {
  if (a.is_polynomial()) {
    cplx s = 0;
    for (const auto& [p, poly] : a.terms())
      if (p == j) s += poly.d_wt()(w, wt);
    return s;
  }
  if (j != 0) return 0.0;
  const double d = 1e-5;
  return (a.a0(w, wt + d) - a.a0(w, wt - d)) / (2 * d);
}

cplx amp_j(const AmplitudeSpec& a, int j, cplx w, cplx wt) {
  if (a.is_polynomial()) {
    cplx s = 0;
    for (const auto& [p, poly] : a.terms())
      if (p == j) s += poly(w, wt);
    return s;
  }
  if (j == 0) return a.a0(w, wt);
  const double d = 1e-6;
  return (a(w, wt, d) - a.a0(w, wt)) / d;  // first order only
}

// a(s w, s wt; h) written as a symbol in h' = h / s^2
AmplitudeSpec rescale_amp(const AmplitudeSpec& a, double s) {
  if (!a.is_polynomial()) {
    AmplitudeSpec sa = a.scaled(s);
    return AmplitudeSpec::from_closure([sa, s](cplx w, cplx wt, double hp) { return sa(w, wt, hp * s * s); },
                                       a.a00());
  }
  auto t = a.terms();
  for (auto& [j, p] : t) p = p.scaled(s) * std::pow(s, 2 * j);
  return AmplitudeSpec::from_terms(t);
}

struct NearData {
  QuadraticData q;
  cplx sqrt_c;  // Re > 0
  cplx k;       // (i/f)^{1/2}, first quadrant
  cplx P;       // h^{1/2} b0
};

NearData near_data(const AmplitudeSpec& a, const PhaseSpec& phase, double h) {
  NearData d;
  d.q = taylor_quadratic(phase);
  d.sqrt_c = std::sqrt(d.q.c());
  d.k = std::sqrt(kI / d.q.f);
  d.P = std::sqrt(h) * 2.0 * kSqrt2Pi * std::polar(1.0, kPi / 4) * a.a00() / d.sqrt_c;
  return d;
}

void near_regime(cplx zeta, double h, const RegimeParams& rp) {
  if (rp.enforce && std::abs(zeta) > std::pow(h, 0.5 - rp.delta))
    throw Error(ErrorKind::RegimeViolation, "|zeta| > h^{1/2-delta}");
}

}  // namespace

void RegimeParams::validate() const {
  if (!(delta > 0 && delta < 1.0 / 6))
    throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1/6)");
  if (N < 0 || T0 <= 0) throw Error(ErrorKind::InvalidArgument, "bad tail parameters");
}

// ------------------------------------------------------------------ far field

AsymResult far_field(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                     const RegimeParams& rp) {
  rp.validate();
  if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
  if (zeta == 0.0) throw Error(ErrorKind::EvaluationAtOrigin, "far field at zeta = 0");
  const double eps = RegimeParams::eps(zeta, h);
  if (rp.enforce && eps < rp.eps_far(h) && std::abs(zeta) < rp.far_abs_min)
    throw Error(ErrorKind::RegimeViolation, "far field needs eps >= h^{-delta} or |zeta| >= " +
                                                std::to_string(rp.far_abs_min));
  const QuadraticData q = taylor_quadratic(phase);
  // real Hessian [[lambda, rho], [rho, -mu]] in (xi, eta)
  const double det = q.det2, tr = q.lambda - q.mu;
  const int sig = det < 0 ? 0 : (tr > 0 ? 2 : -2);
  const cplx b1 = 2.0 / zeta * a.a00() * std::polar(1.0, kPi * sig / 4) / std::sqrt(std::abs(det));

  const cplx zb = std::conj(zeta);
  const auto g = phase.grad(zeta, zb);
  const cplx dwt = g[1];
  if (std::abs(dwt) < 1e-300) throw Error(ErrorKind::Degenerate, "d_wt phi vanishes at zeta");
  const cplx a0 = a.a0(zeta, zb);
  const cplx c1 = a0 / (kI * dwt);

  AsymResult r;
  r.form = "far";
  r.value = h * (c1 * std::exp(kI * phase(zeta, zb) / h) + b1);
  // next terms: transport c2 and the h^2 stationary-phase term of b (trace of H^{-1} on 1/(w-zeta) is 1/f)
  const cplx dww = phase.hess(zeta, zb)[2];
  const cplx dc1 = (amp_dwt(a, 0, zeta, zb) * dwt - a0 * dww) / (kI * dwt * dwt);
  const cplx c2 = (amp_j(a, 1, zeta, zb) - dc1) / (kI * dwt);
  r.next_correction = h * h * (std::abs(c2) + std::abs(b1) / (std::abs(q.f) * std::norm(zeta)));
  r.order_claim = 2;
  return r;
}

AsymResult far_field_rescaled(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                              const RegimeParams& rp) {
  rp.validate();
  if (zeta == 0.0) throw Error(ErrorKind::EvaluationAtOrigin, "far field at zeta = 0");
  const double eps = RegimeParams::eps(zeta, h);
  if (rp.enforce && eps < rp.eps_far(h)) throw Error(ErrorKind::RegimeViolation, "eps < h^{-delta}");
  const double L = rp.lambda_scale > 0 ? rp.lambda_scale : std::abs(zeta);
  RegimeParams inner = rp;
  inner.enforce = false;
  AsymResult r = far_field(rescale_amp(a, L), phase.scaled(L), zeta / L, h / (L * L), inner);
  r.value *= L;
  r.next_correction *= L;
  r.form = "far-rescaled";
  return r;
}

// ----------------------------------------------------------------- near field

AsymResult near_field_term_I(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                             const RegimeParams& rp) {
  rp.validate();
  check_zeta(zeta, h, rp.cone_half_width);
  near_regime(zeta, h, rp);
  const NearData d = near_data(a, phase, h);
  const cplx zd = zeta / (std::sqrt(h) * d.k);
  AsymResult r;
  r.form = "near-I";
  r.value = d.P * g_gauss(zd, branch_select(zeta));
  r.next_correction = std::abs(d.P) * (std::sqrt(h) + std::abs(zeta));
  r.order_claim = 1 - rp.delta;
  return r;
}

cplx near_field_term_II_uncalibrated(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h) {
  const QuadraticData q = taylor_quadratic(phase);
  const double sp = s_plus(zeta);
  const double sg = sp > 0 ? 1.0 : (sp < 0 ? -1.0 : 0.0);
  return std::sqrt(h) * sg * kSqrt2Pi * a.a00() * std::polar(1.0, -kPi / 4) / std::sqrt(q.c());
}

AsymResult near_field_term_II(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                              const RegimeParams& rp) {
  rp.validate();
  check_zeta(zeta, h, rp.cone_half_width);
  const double eps = RegimeParams::eps(zeta, h);
  if (rp.enforce && eps > rp.eps_near(h)) throw Error(ErrorKind::RegimeViolation, "eps > h^{delta}");
  AsymResult r;
  r.form = "near-II";
  r.value = -kI * near_field_term_II_uncalibrated(a, phase, zeta, h);
  r.next_correction = std::abs(r.value) * (std::sqrt(h) * eps + h + eps * eps);
  r.order_claim = 0.5 + 2 * rp.delta;
  return r;
}

AsymResult near_field_total(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                            NearForm form, const RegimeParams& rp) {
  rp.validate();
  AsymResult r;
  if (zeta == 0.0 && form == NearForm::Fine) {
    // both one-sided limits vanish
    r.form = "near-fine";
    r.order_claim = 0.5 + rp.delta;
    r.next_correction = std::abs(near_data(a, phase, h).P) * (std::sqrt(h) + h);
    return r;
  }
  check_zeta(zeta, h, rp.cone_half_width);
  near_regime(zeta, h, rp);
  const NearData d = near_data(a, phase, h);
  const double eps = RegimeParams::eps(zeta, h);
  if (form == NearForm::Coarse) {
    r.form = "near-coarse";
    const double sg = s_plus(zeta) > 0 ? 1.0 : -1.0;
    r.value = std::sqrt(h) * 2.0 * std::sqrt(kPi) * a.a00() / d.sqrt_c * sg;
    r.order_claim = 0.5 + 2 * rp.delta;
    r.next_correction = std::abs(r.value) * std::pow(h, 2 * rp.delta);
    return r;
  }
  const cplx zd = zeta / (std::sqrt(h) * d.k);
  const Side side = branch_select(zeta);
  const cplx G = g_gauss(zd, side);
  r.form = "near-fine";
  r.value = d.P * (side == Side::Left ? G + 0.5 : G - 0.5);
  const double lead_II = 0.5 * std::abs(d.P);
  r.next_correction = std::abs(d.P) * (std::sqrt(h) + std::abs(zeta)) + lead_II * (std::sqrt(h) * eps + h + eps * eps);
  r.order_claim = 0.5 + rp.delta;
  return r;
}

// ----------------------------------------------------------------------- tail

namespace {

cplx tail_integrand(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h, double t) {
  const double sq = std::sqrt(1 + t * t);
  const cplx zt = kI * t * zeta + sq * std::conj(zeta);
  return -kI * a(zeta, zt, h) * std::conj(zt) / sq * std::exp(kI * phase(zeta, zt) / h);
}

}  // namespace

TailExpansion tail_expansion(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double T, int N,
                             double h, bool enforce) {
  if (!(h > 0) || N < 0) throw Error(ErrorKind::InvalidArgument, "tail_expansion: h > 0, N >= 0");
  if (zeta == 0.0) throw Error(ErrorKind::EvaluationAtOrigin, "tail at zeta = 0");
  const double eps = RegimeParams::eps(zeta, h);
  if (enforce && T * eps < 10)
    throw Error(ErrorKind::RegimeViolation, "T eps = " + std::to_string(T * eps) + " < 10");
  if (!phase.is_polynomial() || !a.is_polynomial())
    throw Error(ErrorKind::DerivativeUnavailable, "tail expansion needs polynomial phase and amplitude");

  const int L = N + 2;
  CJet t = CJet::variable(L, T);
  CJet sq = sqrt(1.0 + t * t);
  CJet zt = kI * zeta * t + std::conj(zeta) * sq;
  CJet ztc(L);
  for (int k = 0; k < L; ++k) ztc[k] = std::conj(zt[k]);  // t, sq have real coefficients
  const CJet w(L, zeta);
  CJet ph = kI * phase.eval(w, zt);
  CJet b = -kI * a.eval(w, zt, h) * ztc / sq;

  CJet dph = derivative(ph);  // length N+1
  CJet g = h * resized(b, N + 1) / dph;
  TailExpansion r;
  r.T = T;
  r.N = N;
  cplx sum = 0;
  for (int k = 0; k <= N; ++k) {
    r.c.push_back(g[0]);
    sum += g[0];
    if (k == N) break;
    CJet dg = derivative(g);
    g = -h * dg / resized(dph, dg.n);
  }
  const cplx e = std::exp(ph[0] / h);
  r.value = -e * sum;
  r.bound = std::abs(e * r.c[0]) * std::pow(h / std::norm(T * zeta), N + 1);
  return r;
}

QuadResult tail_direct(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double T, double h,
                       double rel_tol) {
  auto f = [&](double t) { return tail_integrand(a, phase, zeta, h, t); };
  const double f0 = std::abs(f(T));
  // walk out until the Gaussian has killed the integrand
  double step = std::max(std::sqrt(h) / std::abs(zeta), 1e-3 * T);
  std::vector<double> br;
  double te = T;
  for (int i = 0; i < 200; ++i) {
    te += step;
    br.push_back(te);
    const double v = std::abs(f(te));
    if (v < 1e-40 * f0 || v == 0.0) break;
    step *= 1.5;
  }
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 0;
  opt.max_pieces = 4000;
  return integrate_1d(f, T, te, opt, br);
}

HybridResult hybrid_II(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                       double h, double T, int N, const StokesConfig& cfg) {
  const double eps = RegimeParams::eps(zeta, h);
  const double Te = std::max(T, 10.0 / eps);
  HybridResult r;
  r.tail = tail_expansion(a, phase, zeta, Te, N, h);
  StokesConfig c = cfg;
  c.t_max = Te;
  r.head = term_II_numeric(a, phase, chi, zeta, h, c);
  r.value = r.head.value + r.tail.value;
  r.err = r.head.err + r.tail.bound;
  return r;
}

// --------------------------------------------------------------------- moments

double MomentCutoff::operator()(double t) const { return 1.0 - smooth_step((t - t0) / (t1 - t0)); }

double gaussian_moment_coeff(int k) {
  if (k >= 0) {
    const int m = k / 2;
    if (k % 2 == 0) {
      double c = std::sqrt(kPi / 2);
      for (int j = 1; j <= m; ++j) c *= 2 * j - 1;  // (2m)!/(2^m m!) = (2m-1)!!
      return c;
    }
    double c = 1;
    for (int j = 1; j <= m; ++j) c *= 2 * j;  // 2^m m!
    return c;
  }
  if (-k % 2 == 0) return 0;
  const int m = (-k - 1) / 2;
  double c = 1;
  for (int j = 1; j <= m; ++j) c *= -0.5 / j;
  return c;
}

MomentResult gaussian_moment(int k, double eps, const MomentCutoff& chi) {
  if (k < -9) throw Error(ErrorKind::InvalidArgument, "gaussian_moment: k >= -9");
  if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "gaussian_moment: eps > 0");
  if (!(chi.t0 > 0 && chi.t1 > chi.t0)) throw Error(ErrorKind::InvalidArgument, "bad moment cutoff");
  MomentResult r;
  r.k = k;
  r.singular_coeff = gaussian_moment_coeff(k);
  QuadOptions opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-300;
  auto g = [&](double t) { return std::pow(t, k) * std::exp(-0.5 * eps * eps * t * t); };
  if (k >= 0) {
    r.kind = MomentKind::Power;
    r.singular = r.singular_coeff * std::pow(eps, -1 - k);
    auto f = [&](double t) -> cplx { return -(1.0 - chi(t)) * g(t); };
    QuadResult q = integrate_1d(f, 0.0, chi.t1, opt, {chi.t0});
    r.an = q.value.real();
    r.err = q.err;
    r.value = r.singular + r.an;
    return r;
  }
  // chi t^k e^{...} on [t0, inf): geometric panels out to well past 1/eps
  const double te = chi.t1 + 40.0 / eps;
  std::vector<double> br{chi.t1};
  for (double x = 2 * chi.t1; x < te; x *= 2) br.push_back(x);
  auto f = [&](double t) -> cplx { return chi(t) * g(t); };
  QuadResult q = integrate_1d(f, chi.t0, te, opt, br);
  r.value = q.value.real();
  r.err = q.err;
  if (-k % 2 == 0) {
    r.kind = MomentKind::Analytic;
    r.an = r.value;
  } else {
    r.kind = MomentKind::Log;
    r.singular = r.singular_coeff * std::pow(eps, -1 - k) * std::log(1 / eps);
    r.an = r.value - r.singular;
  }
  return r;
}

}  // namespace oscint
