#pragma once
// Radial cutoff chi(xi, eta) = S((sqrt(2(xi^2+eta^2)) - r_in)/(r_out - r_in)) on the
// real plane (sqrt(2)|w| equals (|w|^2+|wt|^2)^{1/2} on the anti-diagonal) and its
// order-M almost-holomorphic extension to complex (xi, eta).
#include "oscint/types.hpp"

namespace oscint {

struct CutoffSpec {
  double r_in = 1.5;
  double r_out = 3.0;
  int ah_order = 4;

  void validate() const;
  // same radii in |w| units on the real plane
  double flat_radius() const;     // chi == 1 inside
  double support_radius() const;  // chi == 0 outside
};

// C-infinity step: 1 for v <= 0, 0 for v >= 1, psi(1-v)/(psi(v)+psi(1-v)), psi(x)=exp(-1/x)
double smooth_step(double v);

double chi_real(const CutoffSpec& c, cplx w);

struct ChiExt {
  cplx value;     // chi~
  cplx dbar_xi;   // d chi~ / d conj(xi)
  cplx dbar_eta;  // d chi~ / d conj(eta)
  // d/d conj(w) and d/d conj(wt), using xi = (w+wt)/2, eta = (w-wt)/(2i)
  cplx dbar_w() const { return 0.5 * dbar_xi + 0.5 * kI * dbar_eta; }
  cplx dbar_wt() const { return 0.5 * dbar_xi - 0.5 * kI * dbar_eta; }
};

// extension evaluated at real part X = (X1, X2), imaginary part Y = (Y1, Y2) of (xi, eta)
ChiExt chi_extended(const CutoffSpec& c, double X1, double X2, double Y1, double Y2, bool with_dbar = true);
// same at a point of C^2 given in (w, wt)
ChiExt chi_extended_w(const CutoffSpec& c, cplx w, cplx wt, bool with_dbar = true);

}  // namespace oscint
