#include "oscint/cutoff.hpp"

#include <cmath>

#include "oscint/jet.hpp"

namespace oscint {

namespace {
constexpr double kEdge = 0.01;  // psi(x) below this is < e^-100: treated as 0

inline double psi1(double x) { return x <= kEdge ? 0.0 : std::exp(-1.0 / x); }

inline double val(double x) { return x; }
inline double val(const Dual2& d) { return d.v; }

template <class T>
Jet<T> psi_jet(const Jet<T>& x) {
  if (val(x[0]) <= kEdge) return Jet<T>(x.n);
  return exp(-(T{1.0} / x));
}

// Taylor jet in tau of S(v(X + tau Y)); returns false when X lies in a flat zone
// (then the jet is the constant `flat`)
template <class T>
bool step_jet(const CutoffSpec& c, T X1, T X2, double Y1, double Y2, int n, Jet<T>& out) {
  const double d = c.r_out - c.r_in;
  const double v0 = (std::sqrt(2.0) * std::hypot(val(X1), val(X2)) - c.r_in) / d;
  if (v0 <= kEdge) {
    out = Jet<T>(n, T{1.0});
    return false;
  }
  if (v0 >= 1.0 - kEdge) {
    out = Jet<T>(n);
    return false;
  }
  const auto x1 = Jet<T>::variable(n, X1, T{Y1});
  const auto x2 = Jet<T>::variable(n, X2, T{Y2});
  const Jet<T> v = (sqrt(x1 * x1 + x2 * x2) * T{std::sqrt(2.0)} - T{c.r_in}) * T{1.0 / d};
  const Jet<T> a = psi_jet(v), b = psi_jet(T{1.0} - v);
  out = b / (a + b);
  return true;
}

inline cplx ipow(int m) {
  static const cplx t[4] = {1.0, kI, -1.0, -kI};
  return t[m & 3];
}
}  // namespace

void CutoffSpec::validate() const {
  if (!(r_in > 0 && r_in < r_out)) throw Error(ErrorKind::InvalidArgument, "cutoff needs 0 < r_in < r_out");
  if (ah_order < 1 || ah_order > 14) throw Error(ErrorKind::InvalidArgument, "ah_order must be in 1..14");
}

double CutoffSpec::flat_radius() const { return (r_in + kEdge * (r_out - r_in)) / std::sqrt(2.0); }
double CutoffSpec::support_radius() const { return (r_out - kEdge * (r_out - r_in)) / std::sqrt(2.0); }

double smooth_step(double v) {
  if (v <= kEdge) return 1.0;
  if (v >= 1.0 - kEdge) return 0.0;
  const double a = psi1(v), b = psi1(1.0 - v);
  return b / (a + b);
}

ChiExt chi_extended(const CutoffSpec& c, double X1, double X2, double Y1, double Y2, bool with_dbar) {
  const int M = c.ah_order, n = M + 1;
  ChiExt r{0.0, 0.0, 0.0};
  if (!with_dbar) {
    Jet<double> j;
    step_jet<double>(c, X1, X2, Y1, Y2, n, j);
    for (int m = 0; m <= M; ++m) r.value += ipow(m) * j[m];
    return r;
  }
  DJet j;
  if (!step_jet<Dual2>(c, Dual2(X1, 1, 0), Dual2(X2, 0, 1), Y1, Y2, n, j)) {
    r.value = j[0].v;
    return r;
  }
  for (int m = 0; m <= M; ++m) r.value += ipow(m) * j[m].v;
  const cplx k = 0.5 * ipow(M);
  r.dbar_xi = k * j[M].d0;
  r.dbar_eta = k * j[M].d1;
  return r;
}

ChiExt chi_extended_w(const CutoffSpec& c, cplx w, cplx wt, bool with_dbar) {
  const cplx xi = 0.5 * (w + wt), eta = (w - wt) / (2.0 * kI);
  return chi_extended(c, xi.real(), eta.real(), xi.imag(), eta.imag(), with_dbar);
}

double chi_real(const CutoffSpec& c, cplx w) {
  return smooth_step((std::sqrt(2.0) * std::abs(w) - c.r_in) / (c.r_out - c.r_in));
}
}  // namespace oscint
