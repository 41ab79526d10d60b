#include "oscint/oracle.hpp"

#include <cmath>

namespace oscint {

double max_phase_gradient(const PhaseSpec& phase, double R) {
  double g = 0;
  const int n = 48;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < 4 * n; ++j) {
      const cplx w = std::polar(R * i / n, 2 * kPi * j / (4 * n));
      // |grad phi| = 2 |d_w phi(w, conj w)| for real phi
      g = std::max(g, 2.0 * std::abs(phase.grad(w, std::conj(w))[0]));
    }
  return g;
}

QuadResult solid_cauchy(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                        double h, const QuadratureConfig& cfg) {
  chi.validate();
  if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
  if (h < cfg.h_floor) throw Error(ErrorKind::OscillationLimit, "h below the oracle floor");
  const double R = chi.support_radius();
  const double rho = cfg.polar_patch_radius > 0 ? cfg.polar_patch_radius : 0.1 * chi.r_in;
  const double G = max_phase_gradient(phase, R) * 1.05 + 1e-12;
  const double ih = 1.0 / h;

  auto F = [&](cplx w) -> cplx {
    const double c = chi_real(chi, w);
    if (c == 0.0) return 0.0;
    const cplx wt = std::conj(w);
    return a(w, wt, h) * c * std::exp(kI * (phase(w, wt) * ih));
  };

  QuadOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = 0.5 * cfg.abs_tol;
  opt.max_pieces = cfg.max_subdivisions;

  // polar patch: (w - zeta) = r e^{it}; the Jacobian r cancels the kernel
  auto patch = [&](double r, double t) -> cplx {
    const cplx e = std::polar(1.0, t);
    return F(zeta + r * e) * patch_bump(r / rho) * std::conj(e);
  };
  const int nt = std::max(4, int(std::ceil(2 * kPi * rho * G * ih / cfg.oscillation_guard)));
  QuadResult res = integrate_2d(patch, Rect{0.0, rho, 0.0, 2 * kPi}, opt, 1, nt);

  auto rest = [&](double x, double y) -> cplx {
    const cplx w(x, y), d = w - zeta;
    const double b = patch_bump(std::abs(d) / rho);
    if (b == 1.0) return 0.0;
    return F(w) * (1.0 - b) / d;
  };
  // oscillation guard: the phase changes by at most the guard across each initial cell
  const double side = cfg.oscillation_guard * h / (std::sqrt(2.0) * G);
  const int n = std::max(2, int(std::ceil(2 * R / side)));
  if (long(n) * n > cfg.max_subdivisions)
    throw Error(ErrorKind::OscillationLimit, "oscillation guard needs " + std::to_string(long(n) * n) + " cells");
  res += integrate_2d(rest, Rect{-R, R, -R, R}, opt, n, n);

  res.value *= -1.0 / kPi;
  res.err /= kPi;
  res.l1 /= kPi;
  if (cfg.throw_on_failure && !res.ok())
    throw Error(res.status == QuadStatus::OscillationLimit ? ErrorKind::OscillationLimit
                                                           : ErrorKind::ToleranceNotReached,
                "solid_cauchy: err " + std::to_string(res.err));
  return res;
}

double dbar_residual(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                     double h, double step, const QuadratureConfig& cfg) {
  auto I = [&](cplx z) { return solid_cauchy(a, phase, chi, z, h, cfg).value; };
  const cplx dx = (I(zeta + step) - I(zeta - step)) / (2 * step);
  const cplx dy = (I(zeta + kI * step) - I(zeta - kI * step)) / (2 * step);
  const cplx dbar = 0.5 * (dx + kI * dy);
  const cplx target = a(zeta, std::conj(zeta), h) * chi_real(chi, zeta) *
                      std::exp(kI * (phase(zeta, std::conj(zeta)) / h));
  return std::abs(dbar - target) / std::abs(target);
}

}  // namespace oscint
