#include "oscint/dsii.hpp"

#include <cmath>
#include <limits>

namespace oscint {

namespace {

void check_k(cplx k, double kmax) {
  if (!(std::abs(k) > 0)) throw Error(ErrorKind::InvalidArgument, "|k| must be positive");
  if (std::abs(k) > kmax) throw Error(ErrorKind::InvalidArgument, "|k| beyond quadrature range");
}

QuadOptions tight() {
  QuadOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-15;
  return o;
}

}  // namespace

cplx reflection_disk_born(cplx k, int sigma) {
  check_k(k, 200);
  const double x = 2 * std::abs(k);
  auto f = [x](double r) -> cplx { return std::cyl_bessel_j(0.0, x * r) * r; };
  // one panel per half period of J0
  std::vector<double> br;
  const int n = int(std::ceil(x / kPi));
  for (int i = 1; i < n; ++i) br.push_back(double(i) / n);
  return 4.0 * sigma * integrate_1d(f, 0.0, 1.0, tight(), br).value;
}

cplx reflection_disk_born_2d(cplx k, int sigma) {
  check_k(k, 200);
  // k z - conj(k z) = 2 i Im(k z)
  auto f = [k](double r, double th) -> cplx {
    return std::exp(2.0 * kI * (k * std::polar(r, th)).imag()) * r;
  };
  const int n = std::max(2, int(std::ceil(std::abs(k) / 2)));
  QuadOptions o = tight();
  o.rel_tol = 1e-11;
  o.max_pieces = 200000;
  return 2.0 * sigma / kPi * integrate_2d(f, Rect{0.0, 1.0, 0.0, 2 * kPi}, o, n, 4 * n).value;
}

cplx reflection_disk_asym(cplx k, int sigma, AsymCorrection corr) {
  const double m = std::abs(k);
  if (m < 5) throw Error(ErrorKind::RegimeViolation, "reflection_disk_asym needs |k| >= 5");
  const double c = corr == AsymCorrection::Stated ? -5.0 / 16 : 3.0 / 16;
  const double a = 2 * m - kPi / 4;
  return sigma * reflection_envelope(k) * (std::sin(a) + c / m * std::cos(a));
}

cplx reflection_evolve(cplx R0, cplx k, double t) { return R0 * std::exp(4.0 * kI * t * (k * k).real()); }

DSIntegrand dsii_integrand(int branch, cplx k, double t, double r0) {
  if (branch != 1 && branch != -1) throw Error(ErrorKind::InvalidArgument, "branch must be +1 or -1");
  const double s = branch;
  const double r02 = r0 * r0;
  auto guard = [r02](cplx w, cplx wt) {
    if (std::abs(w * wt) < r02) throw Error(ErrorKind::EvaluationAtOrigin, "inside the DS exclusion disk");
  };
  PhaseClosure c;
  c.f = [=](cplx w, cplx wt) {
    guard(w, wt);
    return 2 * t * (w * w + wt * wt) + (k * w - std::conj(k) * wt) / kI + 2 * s * std::sqrt(w * wt);
  };
  c.grad = [=](cplx w, cplx wt) -> std::array<cplx, 2> {
    guard(w, wt);
    const cplx q = 1.0 / std::sqrt(w * wt);
    return {4 * t * w + k / kI + s * wt * q, 4 * t * wt - std::conj(k) / kI + s * w * q};
  };
  c.hess = [=](cplx w, cplx wt) -> std::array<cplx, 3> {
    guard(w, wt);
    const cplx q = 1.0 / std::sqrt(w * wt), q3 = q * q * q;
    return {4 * t - 0.5 * s * wt * wt * q3, 0.5 * s * q, 4 * t - 0.5 * s * w * w * q3};
  };
  DSIntegrand d;
  d.phase = PhaseSpec::from_closure(c);
  d.amp = AmplitudeSpec::from_closure(
      [=](cplx w, cplx wt, double) {
        guard(w, wt);
        return s / std::sqrt(kPi) * std::pow(w * wt, -0.75);
      },
      std::numeric_limits<double>::quiet_NaN());
  d.exclusion_radius = r0;
  return d;
}

std::vector<StationaryPoint> dsii_stationary_points(int branch, cplx k, double t, double x0, double x1, double y0,
                                                    double y1, double r0) {
  const DSIntegrand d = dsii_integrand(branch, k, t, r0);
  // Newton iterates which wander into the disk are dropped (NaN) rather than thrown
  const double nan = std::numeric_limits<double>::quiet_NaN();
  PhaseClosure c;
  const PhaseSpec p = d.phase;
  const double r02 = r0 * r0;
  c.f = [p](cplx w, cplx wt) { return p(w, wt); };
  c.grad = [p, r02, nan](cplx w, cplx wt) -> std::array<cplx, 2> {
    if (std::abs(w * wt) < r02) return {cplx(nan), cplx(nan)};
    return p.grad(w, wt);
  };
  c.hess = [p, r02, nan](cplx w, cplx wt) -> std::array<cplx, 3> {
    if (std::abs(w * wt) < r02) return {cplx(nan), cplx(nan), cplx(nan)};
    return p.hess(w, wt);
  };
  return stationary_points(PhaseSpec::from_closure(c), x0, x1, y0, y1);
}

}  // namespace oscint
