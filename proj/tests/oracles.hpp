#pragma once
// Reference values computed independently of the library's own algorithms:
// long-double Simpson / trapezoid rules, std:: special functions, closed forms.
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace ref {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// composite Simpson, long double accumulation
template <class F>
auto simpson(F&& f, double a, double b, int n) {
  using R = decltype(f(a));
  if (n % 2) ++n;
  const long double hs = (long double)(b - a) / n;
  R s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + double(i * hs)) * double(i % 2 ? 4 : 2);
  return s * double(hs / 3);
}

// D(x) = exp(-x^2) \int_0^x exp(t^2) dt; written as \int_0^x exp(t^2 - x^2) dt to stay bounded
inline double dawson(double x) {
  return simpson([x](double t) { return std::exp((t - x) * (t + x)); }, 0.0, x, 20000 * (1 + int(std::abs(x))));
}

// (1/2 pi i) \int_line e^{r w^2/2} / (zeta - w) dw by the trapezoid rule (spectrally
// accurate for analytic, fast-decaying integrands); line = base + dir * s, |s| <= L
inline cplx cauchy_line(cplx r, cplx zeta, cplx base, cplx dir, double L = 14, int n = 6000) {
  dir /= std::abs(dir);
  const double ds = 2 * L / n;
  cplx s{};
  for (int i = 0; i <= n; ++i) {
    const cplx w = base + dir * (-L + i * ds);
    s += (i == 0 || i == n ? 0.5 : 1.0) * std::exp(r * w * w / 2.0) / (zeta - w);
  }
  return s * dir * ds / (2 * pi * cplx(0, 1));
}

// G^{l/r} for rho = r w^2/2 along k R, k = sqrt(-1/r); pole on the left (Left) or right of the line
inline cplx g_ref(cplx r, cplx zeta, bool left) {
  const cplx k = std::sqrt(-1.0 / r);
  const cplx d = k / std::abs(k);
  // the pole is left of base + d s iff Im(conj(d)(zeta - base)) > 0; shift the line by one unit
  const cplx base = zeta + (left ? -1.0 : 1.0) * cplx(0, 1) * d;
  return cauchy_line(r, zeta, base, d);
}

// solid Cauchy transform of a radial chi with a = 1 and phi = 0:
// -(1/pi) \int chi/(w - zeta) = (2/zeta) \int_0^{|zeta|} chi(r) r dr
inline cplx radial_transform(const std::function<double(double)>& chi, cplx zeta) {
  const double R = std::abs(zeta);
  return 2.0 / zeta * simpson([&](double r) { return chi(r) * r; }, 0.0, R, 4000);
}

// Born reflection of the unit disk: 4 sigma \int_0^1 J0(2|k|r) r dr = 2 sigma J1(2|k|)/|k|
inline double disk_born(double kmod, int sigma = 1) {
  return 2.0 * sigma * std::cyl_bessel_j(1.0, 2 * kmod) / kmod;
}

// least-squares slope of log(err) against log(h)
inline double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
  Eigen::MatrixXd A(h.size(), 2);
  Eigen::VectorXd y(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    A(i, 0) = 1;
    A(i, 1) = std::log(h[i]);
    y(i) = std::log(err[i]);
  }
  return A.colPivHouseholderQr().solve(y)(1);
}

// small linear least squares: min |A x - y|
inline Eigen::VectorXd lsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) { return A.colPivHouseholderQr().solve(y); }

}  // namespace ref
