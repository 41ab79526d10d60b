#include "oscint/specfun.hpp"

#include <cmath>

namespace oscint {

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {
constexpr double kSqrtPi = 1.77245385090551602729816748334;

// Maclaurin series of w: sum (iz)^n / Gamma(n/2+1); used for |z| <= 2
cplx w_series(cplx z) {
  const cplx iz = kI * z;
  // even and odd chains: Gamma(n/2+1) via recurrences Gamma(x+1) = x Gamma(x)
  cplx pe = 1.0, po = iz / (kSqrtPi / 2.0);  // n=0: 1/Gamma(1), n=1: iz/Gamma(3/2)
  cplx sum = pe + po;
  const cplx iz2 = iz * iz;
  for (int m = 1; m < 80; ++m) {
    pe *= iz2 / double(m);          // (iz)^{2m}/m!
    po *= iz2 / (m + 0.5);          // (iz)^{2m+1}/Gamma(m+3/2)
    sum += pe + po;
    if (std::abs(pe) + std::abs(po) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Laplace continued fraction, fine for Im z >= 1.5 or |z| >= 7
cplx w_cf(cplx z) {
  cplx f = z;
  for (int k = 60; k >= 1; --k) f = z - (0.5 * k) / f;
  return kI / (kSqrtPi * f);
}

// near the real axis: w = exp(-z^2) + (2i/sqrt(pi)) D(z), D expanded about Re z
cplx w_axis(cplx z) {
  const double x0 = z.real();
  const cplx dy = kI * z.imag();
  double c_prev = dawson(x0);
  double c = 1.0 - 2.0 * x0 * c_prev;
  cplx sum = c_prev, p = dy;
  sum += c * p;
  for (int n = 1; n < 70; ++n) {
    const double cn = (-2.0 * x0 * c - 2.0 * c_prev) / (n + 1);
    c_prev = c;
    c = cn;
    p *= dy;
    sum += c * p;
  }
  return std::exp(-z * z) + (2.0 * kI / kSqrtPi) * sum;
}

cplx w_upper(cplx z) {
  if (std::abs(z) <= 2.0) return w_series(z);
  if (z.imag() >= 1.5 || std::abs(z) >= 7.0) return w_cf(z);
  return w_axis(z);
}
}  // namespace

double dawson(double x) {
  const double ax = std::abs(x);
  if (ax < 6.5) {
    const double x2 = ax * ax;
    double t = ax, s = ax;
    for (int n = 1; n < 400; ++n) {
      t *= x2 / n;
      const double term = t / (2 * n + 1);
      s += term;
      if (term < 1e-17 * s) break;
    }
    const double v = s * std::exp(-x2);
    return x < 0 ? -v : v;
  }
  // asymptotic 1/(2x) sum (2k-1)!!/(2x^2)^k, stopped at the smallest term
  const double inv = 1.0 / (2.0 * x * x);
  double s = 1.0, t = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double nt = t * (2 * k - 1) * inv;
    if (nt >= t) break;
    t = nt;
    s += t;
    if (t < 1e-17 * s) break;
  }
  return s / (2.0 * x);
}

cplx faddeeva_w(cplx z) {
  if (z.imag() >= 0) return w_upper(z);
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

cplx g_gauss(cplx zeta, Side side) {
  const double s2 = std::sqrt(2.0);
  if (side == Side::Left) {
    if (zeta.imag() >= 0) return -0.5 * w_upper(zeta / s2);
    return 0.5 * w_upper(-zeta / s2) - std::exp(-0.5 * zeta * zeta);
  }
  if (zeta.imag() <= 0) return 0.5 * w_upper(-zeta / s2);
  return -0.5 * w_upper(zeta / s2) + std::exp(-0.5 * zeta * zeta);
}

cplx g_general(cplx r, cplx zeta, Side side) {
  if (r == 0.0) throw Error(ErrorKind::InvalidArgument, "g_general: r = 0");
  const cplx m = -1.0 / r;
  if (std::abs(std::arg(m)) > kPi - 1e-12)
    throw Error(ErrorKind::BranchAmbiguity, "g_general: r on the positive real axis");
  const cplx e = 0.5 * r * zeta * zeta;
  if (std::abs(e.real()) > 700.0) throw Error(ErrorKind::OverflowRisk, "g_general: |Re(r zeta^2/2)| > 700");
  const cplx k = std::sqrt(m);
  return g_gauss(zeta / k, side);
}

Side branch_select(cplx zh) {
  const double im = (std::exp(-kI * (kPi / 4)) * zh).imag();
  if (std::abs(im) < 1e-14 * std::abs(zh) || zh == 0.0)
    throw Error(ErrorKind::OnCriticalLine, "branch_select: zeta on e^{i pi/4} R");
  return im > 0 ? Side::Left : Side::Right;
}

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Signature: return "SignatureError";
    case ErrorKind::Degenerate: return "DegenerateError";
    case ErrorKind::NoAdmissibleRotation: return "NoAdmissibleRotation";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateCriticalPoint: return "DegenerateCriticalPoint";
    case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorKind::OscillationLimit: return "OscillationLimit";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::OnCriticalLine: return "OnCriticalLine";
    case ErrorKind::OverflowRisk: return "OverflowRisk";
    case ErrorKind::ConeViolation: return "ConeViolation";
    case ErrorKind::RegimeViolation: return "RegimeViolation";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::EvaluationAtOrigin: return "EvaluationAtOrigin";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace oscint
