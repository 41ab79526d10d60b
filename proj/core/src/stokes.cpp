#include "oscint/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

namespace oscint {

std::pair<cplx, cplx> gamma_point(double theta, double t, double s) {
  const cplx z(t, s), zb(t, -s);
  return {z + kI * theta * zb, zb + kI * theta * z};
}

cplx zeta_tilde_theta(cplx zeta, double theta) {
  if (!(theta >= 0 && theta < 1)) throw Error(ErrorKind::InvalidArgument, "zeta_tilde_theta needs 0 <= theta < 1");
  return (2.0 * kI * theta * zeta + (1 + theta * theta) * std::conj(zeta)) / (1 - theta * theta);
}

cplx zeta_tilde_t(cplx zeta, double t) { return kI * t * zeta + std::sqrt(1 + t * t) * std::conj(zeta); }

cplx pole_preimage(cplx zeta, double theta) {
  return (zeta - kI * theta * std::conj(zeta)) / (1 - theta * theta);
}

std::pair<std::array<cplx, 2>, std::array<cplx, 2>> w_basis(double theta) {
  const double n = std::sqrt(2 * (1 + theta * theta));
  const cplx ep = std::polar(1.0, kPi / 4), em = std::conj(ep);
  return {{(1 - theta) * em / n, (1 + theta) * ep / n}, {(1 + theta) * ep / n, (1 - theta) * em / n}};
}

WCoords to_w(double theta, cplx w, cplx wt) {
  const auto [p, m] = w_basis(theta);
  return {w * std::conj(p[0]) + wt * std::conj(p[1]), w * std::conj(m[0]) + wt * std::conj(m[1])};
}

std::pair<cplx, cplx> from_w(double theta, const WCoords& c) {
  const auto [p, m] = w_basis(theta);
  return {c.wp * p[0] + c.wm * m[0], c.wp * p[1] + c.wm * m[1]};
}

WCoords to_w_from_omega(double theta, cplx w) {
  const double n = std::sqrt(2 * (1 + theta * theta));
  const cplx ep = std::polar(1.0, kPi / 4);
  return {n / (1 - theta) * (w * ep).real(), n / (1 + theta) * (w * std::conj(ep)).real()};
}

WCoords to_w_from_omega_tilde(double theta, cplx wt) {
  const double n = std::sqrt(2 * (1 + theta * theta));
  const cplx ep = std::polar(1.0, kPi / 4);
  return {n / (1 + theta) * (wt * std::conj(ep)).real(), n / (1 - theta) * (wt * ep).real()};
}

namespace {

void check_cone(cplx zeta, const StokesConfig& cfg, const char* who) {
  if (zeta == 0.0) throw Error(ErrorKind::EvaluationAtOrigin, std::string(who) + ": zeta = 0");
  if (cone_distance(zeta) < cfg.cone_half_width)
    throw Error(ErrorKind::ConeViolation, std::string(who) + ": zeta inside the cone around e^{i pi/4}R");
}

// min over theta in [0,1] of |1 - i theta conj(sigma)^2|
double pole_speed(cplx zeta) {
  const cplx sb = std::conj(zeta / std::abs(zeta));
  const cplx q = kI * sb * sb;
  const double th = std::clamp(q.real(), 0.0, 1.0);
  return std::abs(1.0 - th * q);
}

}  // namespace

QuadResult term_I_numeric(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                          double h, const StokesConfig& cfg) {
  chi.validate();
  check_cone(zeta, cfg, "term_I");
  const cplx one_i(1, 1);
  const double R = std::sqrt(2.0) * chi.support_radius();  // u^2 + v^2 <= R^2 on the support
  const double ih = 1.0 / h;
  const double scale = std::abs(a.a00()) * std::sqrt(h) + 1e-300;

  // Gamma_1 = {w = (1+i)u, wt = (1+i)v}: w- = sqrt(2) u, w+ = sqrt(2) v
  auto F = [&](double u, double v) -> cplx {
    const auto [w, wt] = from_w(1.0, WCoords{std::sqrt(2.0) * v, std::sqrt(2.0) * u});
    const cplx c = chi_extended_w(chi, w, wt, false).value;
    if (c == 0.0) return 0.0;
    return a(w, wt, h) * c * std::exp(kI * (phase(w, wt) * ih));
  };
  QuadOptions in;
  in.rel_tol = 0.1 * cfg.rel_tol;
  in.abs_tol = 1e-3 * cfg.rel_tol * scale;
  in.max_pieces = 2000;
  QuadResult inner_stats;
  auto outer = [&](double u) -> cplx {
    const double V = std::sqrt(std::max(0.0, R * R - u * u));
    if (V == 0) return 0.0;
    auto g = [&](double v) { return F(u, v); };
    const double sh = std::sqrt(h);
    QuadResult r = integrate_1d(g, -V, V, in, {-2 * sh, 0.0, 2 * sh});
    inner_stats += QuadResult{0.0, 0.0, 0.0, r.evals, r.pieces, r.status};
    return r.value / (one_i * u - zeta);
  };
  QuadOptions out;
  out.rel_tol = cfg.rel_tol;
  out.abs_tol = 1e-2 * cfg.rel_tol * scale;
  out.max_pieces = 2000;
  const double us = (zeta * std::conj(one_i)).real() / 2;  // closest approach of the pole
  const double sh = std::sqrt(h);
  QuadResult r = integrate_1d(outer, -R, R, out, {us, -2 * sh, 0.0, 2 * sh});
  r.evals += inner_stats.evals;
  if (!inner_stats.ok() && r.ok()) r.status = inner_stats.status;
  r.value *= -1.0 / kPi;
  r.err /= kPi;
  r.l1 /= kPi;
  return r;
}

cplx term_II_integrand(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                       double h, double t) {
  const cplx zt = zeta_tilde_t(zeta, t);
  const cplx c = chi_extended_w(chi, zeta, zt, false).value;
  if (c == 0.0) return 0.0;
  return -kI * std::conj(zt) / std::sqrt(1 + t * t) * a(zeta, zt, h) * c * std::exp(kI * (phase(zeta, zt) / h));
}

double term_II_support_end(const CutoffSpec& chi, cplx zeta) {
  return 2 * chi.support_radius() / (std::abs(zeta) * std::max(pole_speed(zeta), 1e-12));
}

QuadResult term_II_numeric(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                           double h, const StokesConfig& cfg, std::vector<std::pair<double, QuadResult>>* panels) {
  chi.validate();
  check_cone(zeta, cfg, "term_II");
  double T = term_II_support_end(chi, zeta);
  if (cfg.t_max > 0) T = std::min(T, cfg.t_max);
  const double L = std::sqrt(h) / std::abs(zeta);  // 1/eps: width of the Gaussian decay
  std::vector<double> br;
  for (double t = std::min(L, 1.0) / 8; t < T; t *= 2) br.push_back(t);
  if (L * L < T) br.push_back(L * L);
  std::sort(br.begin(), br.end());
  auto f = [&](double t) { return term_II_integrand(a, phase, chi, zeta, h, t); };
  QuadOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.quad.abs_tol;
  opt.max_pieces = 4000;
  QuadResult r = integrate_1d(f, 0.0, T, opt, br);
  if (panels) {
    panels->clear();
    std::vector<double> pts{0.0};
    for (double b : br)
      if (b > 0 && b < T) pts.push_back(b);
    pts.push_back(T);
    QuadOptions po = opt;
    po.abs_tol = std::max(opt.abs_tol, r.err / pts.size());
    for (size_t i = 0; i + 1 < pts.size(); ++i) panels->push_back({pts[i], integrate_1d(f, pts[i], pts[i + 1], po)});
  }
  return r;
}

namespace {

// Fixed polar grid on the annulus: composite K15/G7 in r, periodic trapezoid in the
// angle (M nodes, M/2 as the comparison). On Gamma_theta the d-bar data of chi~ is
// theta^M times its value at theta = 1, so it is tabulated once per grid.
struct PolarGrid {
  int P = 0, M = 0;
  std::vector<double> r, wk, wg;  // P*15 radial nodes, Kronrod / Gauss weights
  std::vector<double> ct, st;
  std::vector<std::array<cplx, 2>> dbar;  // [ir * M + j]: (d/d conj w, d/d conj wt) at theta = 1
  std::vector<char> live;                 // radial rows with nonzero data
};

PolarGrid make_grid(const CutoffSpec& chi, int P, int M) {
  PolarGrid g;
  g.P = P;
  g.M = M;
  const auto& k = gk::rule15;
  const double r0 = chi.flat_radius(), r1 = chi.support_radius(), dr = (r1 - r0) / P;
  for (int p = 0; p < P; ++p)
    for (int i = 0; i < 15; ++i) {
      g.r.push_back(r0 + (p + 0.5) * dr + 0.5 * dr * k.x[i]);
      g.wk.push_back(0.5 * dr * k.wk[i]);
      g.wg.push_back(0.5 * dr * k.wg[i]);
    }
  for (int j = 0; j < M; ++j) {
    g.ct.push_back(std::cos(2 * kPi * j / M));
    g.st.push_back(std::sin(2 * kPi * j / M));
  }
  g.dbar.resize(g.r.size() * M);
  g.live.assign(g.r.size(), 0);
  for (size_t i = 0; i < g.r.size(); ++i)
    for (int j = 0; j < M; ++j) {
      const double t = g.r[i] * g.ct[j], s = g.r[i] * g.st[j];
      const ChiExt c = chi_extended(chi, t, s, t, -s, true);
      g.dbar[i * M + j] = {c.dbar_w(), c.dbar_wt()};
      if (c.dbar_xi != 0.0 || c.dbar_eta != 0.0) g.live[i] = 1;
    }
  return g;
}

struct IIIContext {
  const AmplitudeSpec& a;
  const PhaseSpec& phase;
  const CutoffSpec& chi;
  cplx zeta;
  double h;
  const StokesConfig& cfg;
  std::map<std::pair<int, int>, std::shared_ptr<PolarGrid>> grids;
  const PolarGrid& grid(int P, int M) {
    auto& g = grids[{P, M}];
    if (!g) g = std::make_shared<PolarGrid>(make_grid(chi, P, M));
    return *g;
  }
};

// k(theta) with an absolute target
QuadResult density(IIIContext& X, double theta, double abs_tol) {
  const double th = theta;
  const double r_lo = X.chi.flat_radius(), r_hi = X.chi.support_radius();
  const double ih = 1.0 / X.h;
  // pulled-back one-forms (dt, ds) coefficients and the constant wedges
  const cplx dw[2] = {1.0 + kI * th, kI + th};
  const cplx dwt[2] = {1.0 + kI * th, -kI - th};
  const cplx dwb[2] = {1.0 - kI * th, -kI + th};
  const cplx dwtb[2] = {1.0 - kI * th, kI - th};
  auto wedge = [](const cplx* p, const cplx* q) { return p[0] * q[1] - p[1] * q[0]; };
  const cplx W_wt_w = wedge(dwt, dw);
  const cplx W_wb_w = wedge(dwb, dw), W_wtb_w = wedge(dwtb, dw);
  const cplx W_wb_wt = wedge(dwb, dwt), W_wtb_wt = wedge(dwtb, dwt);

  // a e^{i phi/h} times the contraction of dbar(chi~) ^ dwt ^ dw with the deformation field
  auto contract = [&](double t, double s, cplx A, cplx At) -> cplx {
    const cplx z(t, s), zb(t, -s);
    const cplx Vw = kI * zb, Vwt = kI * z, Vwb = -kI * z, Vwtb = -kI * zb;
    const cplx C = (A * Vwb + At * Vwtb) * W_wt_w - Vwt * (A * W_wb_w + At * W_wtb_w) +
                   Vw * (A * W_wb_wt + At * W_wtb_wt);
    const auto [w, wt] = gamma_point(th, t, s);
    return X.a(w, wt, X.h) * std::exp(kI * (X.phase(w, wt) * ih)) * C;
  };
  auto core = [&](double t, double s) -> cplx {
    const ChiExt c = chi_extended(X.chi, t, s, th * t, -th * s, true);
    if (c.dbar_xi == 0.0 && c.dbar_eta == 0.0) return 0.0;
    return contract(t, s, c.dbar_w(), c.dbar_wt());
  };

  const cplx zp = pole_preimage(X.zeta, th);
  const double dp = std::max({r_lo - std::abs(zp), std::abs(zp) - r_hi, 0.0});
  const double rho = X.cfg.theta_patch;

  // phase rates on the outer circle, for the grid sizes: G radial / (t, s), K angular
  double G = 0, K = 0;
  for (int j = 0; j < 64; ++j) {
    const double c = std::cos(2 * kPi * j / 64), sn = std::sin(2 * kPi * j / 64);
    const auto [w, wt] = gamma_point(th, r_hi * c, r_hi * sn);
    const auto gr = X.phase.grad(w, wt);
    const cplx pt = gr[0] * dw[0] + gr[1] * dwt[0], ps = gr[0] * dw[1] + gr[1] * dwt[1];
    G = std::max(G, std::abs(pt) + std::abs(ps));
    K = std::max(K, r_hi * std::abs(-sn * pt + c * ps));
  }
  G = G * ih + 1.0;
  K = K * ih + 1.0;

  const cplx fac = 1.0 / (2 * kPi * kI);
  const bool patch = dp < rho;
  const double guard = X.cfg.quad.oscillation_guard;
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = abs_tol / std::abs(fac);
  opt.l1_tol = 1e-10;
  opt.max_pieces = X.cfg.quad.max_subdivisions;

  // the pole patch: w - zeta = r (e^{i t} + i theta e^{-i t}) for z - zp = r e^{i t}
  auto patch_part = [&]() {
    auto pf = [&](double r, double t) -> cplx {
      const cplx e = std::polar(1.0, t);
      const cplx z = zp + r * e;
      const cplx v = core(z.real(), z.imag());
      if (v == 0.0) return 0.0;
      return v * patch_bump(r / rho) / (e + kI * th * std::conj(e));
    };
    const int np = std::max(4, int(std::ceil(2 * kPi * rho * G / guard)));
    const int nr = std::max(1, int(std::ceil(rho * G / guard)));
    return integrate_2d(pf, Rect{0.0, rho, 0.0, 2 * kPi}, opt, nr, np);
  };
  auto finish = [&](QuadResult q) {
    if (patch) q += patch_part();
    q.value *= fac;
    q.err *= std::abs(fac);
    q.l1 *= std::abs(fac);
    return q;
  };

  {
    // with a patch the bump has to be resolved as well
    const double Mmin = patch ? 2 * kPi * r_hi * 16 / rho : 0.0;
    int M = 64 * int(std::ceil(std::max(2 * (K + 32), Mmin) / 64));
    int P = 8 * int(std::ceil(std::max(24.0, G * (r_hi - r_lo) / 4) / 8));
    const double thM = std::pow(th, X.chi.ah_order);
    bool screened = false;
    // refine the grid where the error sits (radial K15-G7 vs angular halving), a few times
    for (int pass = 0; pass < 4 && long(P) * 15 * M <= (1L << 22); ++pass) {
      const PolarGrid& g = X.grid(P, M);
      auto node = [&](size_t i, int j) -> cplx {
        const auto& d = g.dbar[i * M + j];
        if (d[0] == 0.0 && d[1] == 0.0) return 0.0;
        const double r = g.r[i], t = r * g.ct[j], s = r * g.st[j];
        const double b = patch ? patch_bump(std::abs(cplx(t, s) - zp) / rho) : 0.0;
        if (b == 1.0) return 0.0;
        const auto [w, wt] = gamma_point(th, t, s);
        return contract(t, s, thM * d[0], thM * d[1]) * ((1 - b) * r) / (w - X.zeta);
      };
      const double dt = 2 * kPi / M;
      if (!screened && !patch) {
        // cheap screen: an L1 estimate on every 8th angle; negligible slices stop here
        screened = true;
        cplx v8{};
        double l8 = 0;
        for (size_t i = 0; i < g.r.size(); ++i) {
          if (!g.live[i]) continue;
          for (int j = 0; j < M; j += 8) {
            const cplx v = node(i, j);
            v8 += g.wk[i] * v;
            l8 += g.wk[i] * std::abs(v);
          }
        }
        if (4 * l8 * 8 * dt < opt.abs_tol) {
          QuadResult q;
          q.value = v8 * 8.0 * dt;
          q.err = 2 * l8 * 8 * dt;
          q.l1 = l8 * 8 * dt;
          q.evals = long(g.r.size()) * M / 8;
          return finish(q);
        }
      }
      cplx kf{}, gf{}, kc{};
      double l1 = 0;
      for (size_t i = 0; i < g.r.size(); ++i) {
        if (!g.live[i]) continue;
        cplx sf{}, sc{};
        double sa = 0;
        for (int j = 0; j < M; ++j) {
          const cplx v = node(i, j);
          sf += v;
          sa += std::abs(v);
          if (j % 2 == 0) sc += v;
        }
        kf += g.wk[i] * sf;
        gf += g.wg[i] * sf;
        kc += g.wk[i] * sc;
        l1 += g.wk[i] * sa;
      }
      const double er = std::abs(kf - gf) * dt, ea = std::abs(kf - 2.0 * kc) * dt;
      QuadResult q;
      q.value = kf * dt;
      q.err = er + ea;
      q.l1 = l1 * dt;
      q.evals = long(g.r.size()) * M;
      q.pieces = P;
      if (q.err <= std::max(opt.abs_tol, 1e-9 * q.l1)) return finish(q);
      (er > ea ? P : M) *= 2;
    }
  }

  // adaptive fallback
  auto ann = [&](double r, double t) -> cplx {
    const double ct = std::cos(t), st = std::sin(t);
    const cplx z(r * ct, r * st);
    const double b = patch ? patch_bump(std::abs(z - zp) / rho) : 0.0;
    if (b == 1.0) return 0.0;
    const cplx v = core(z.real(), z.imag());
    if (v == 0.0) return 0.0;
    const auto [w, wt] = gamma_point(th, z.real(), z.imag());
    return v * (1 - b) * r / (w - X.zeta);
  };
  const int nt = std::max(4, int(std::ceil(2 * kPi * r_hi * G / guard)));
  const int nr = std::max(1, int(std::ceil((r_hi - r_lo) * G / guard)));
  return finish(integrate_2d(ann, Rect{r_lo, r_hi, 0.0, 2 * kPi}, opt, nr, nt));
}

}  // namespace

QuadResult term_III_density(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                            double h, double theta, const StokesConfig& cfg) {
  chi.validate();
  IIIContext X{a, phase, chi, zeta, h, cfg, {}};
  return density(X, theta, cfg.quad.abs_tol);
}

double term_III_estimate(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta, double h,
                         const StokesConfig& cfg) {
  chi.validate();
  check_cone(zeta, cfg, "term_III_estimate");
  const QuadraticData q = taylor_quadratic(phase);
  const int M = chi.ah_order;
  const double r = chi.flat_radius();
  const double kappa = std::min(q.lambda, q.mu) * r * r / h;
  const double th = std::min(M / kappa, 0.5);
  IIIContext X{a, phase, chi, zeta, h, cfg, {}};
  const QuadResult d = density(X, th, std::numeric_limits<double>::max());
  // k(theta) modelled as k(th) (theta/th)^M e^{-kappa (theta - th)}
  return std::max(std::abs(d.value), d.l1) * std::tgamma(M + 1.0) / std::pow(kappa, M + 1) /
         (std::pow(th, M) * std::exp(-kappa * th));
}

QuadResult term_III_numeric(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                            double h, const StokesConfig& cfg, std::vector<std::pair<double, QuadResult>>* panels) {
  chi.validate();
  check_cone(zeta, cfg, "term_III");
  IIIContext X{a, phase, chi, zeta, h, cfg, {}};
  const double top = 1.0 - cfg.delta_stop;

  // scale of k(theta) near its maximum (theta ~ M h)
  double S = 0;
  for (double m : {1.0, 2.0, 4.0, 8.0}) {
    const double th = std::min(m * h, 0.5);
    S = std::max(S, std::abs(density(X, th, std::numeric_limits<double>::max()).value));
  }
  S = std::max(S, 1e-300);
  const double inner_tol = cfg.rel_tol_iii * S;

  std::vector<double> br;
  for (double t = 2 * h; t < top; t *= 4) br.push_back(t);
  // where the pole enters / leaves the neighbourhood of the annulus
  const double r_lo = chi.flat_radius() - cfg.theta_patch, r_hi = chi.support_radius() + cfg.theta_patch;
  auto rp = [&](double th) { return std::abs(pole_preimage(zeta, th)); };
  const int ns = 256;
  for (double edge : {r_lo, r_hi, chi.flat_radius(), chi.support_radius()}) {
    for (int i = 0; i < ns; ++i) {
      double x0 = top * i / ns, x1 = top * (i + 1) / ns;
      if ((rp(x0) - edge) * (rp(x1) - edge) > 0) continue;
      for (int k = 0; k < 60; ++k) {
        const double m = 0.5 * (x0 + x1);
        ((rp(x0) - edge) * (rp(m) - edge) <= 0 ? x1 : x0) = m;
      }
      br.push_back(0.5 * (x0 + x1));
    }
  }
  std::sort(br.begin(), br.end());

  auto k = [&](double th) { return density(X, th, inner_tol).value; };
  QuadOptions opt;
  opt.rel_tol = cfg.rel_tol_iii;
  opt.abs_tol = 1e-3 * cfg.rel_tol_iii * S * h;
  opt.max_pieces = 400;
  opt.kronrod = 15;
  std::vector<double> pts{0.0};
  for (double b : br)
    if (b > 0 && b < top) pts.push_back(b);
  pts.push_back(top);
  if (panels) panels->clear();
  QuadResult r;
  if (!panels) {
    r = integrate_1d(k, 0.0, top, opt, br);
  } else {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      QuadResult q = integrate_1d(k, pts[i], pts[i + 1], opt);
      panels->push_back({pts[i], q});
      r += q;
    }
  }
  return r;
}

Decomposition decomposition_check(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi,
                                  cplx zeta, double h, const StokesConfig& cfg) {
  Decomposition d;
  d.oracle = solid_cauchy(a, phase, chi, zeta, h, cfg.quad);
  d.I = term_I_numeric(a, phase, chi, zeta, h, cfg);
  d.II = term_II_numeric(a, phase, chi, zeta, h, cfg);
  d.III = term_III_numeric(a, phase, chi, zeta, h, cfg);
  d.defect = std::abs(d.oracle.value - (d.I.value + d.II.value + d.III.value));
  d.err_budget = d.oracle.err + d.I.err + d.II.err + d.III.err;
  return d;
}

}  // namespace oscint
