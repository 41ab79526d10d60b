#pragma once
// Brute-force reference: the solid Cauchy transform
//   I(zeta) = -(1/pi) \int a chi e^{i phi/h} / (w - zeta) dA(w)
// by a smooth partition of unity: polar patch around zeta, tensor cells elsewhere.
#include "oscint/cutoff.hpp"
#include "oscint/phase.hpp"
#include "oscint/quadrature.hpp"

namespace oscint {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_subdivisions = 400000;
  double polar_patch_radius = 0;  // 0: 0.1 * r_in
  double oscillation_guard = 4 * kPi;
  double h_floor = 1e-3;
  bool throw_on_failure = false;
};

QuadResult solid_cauchy(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                        double h, const QuadratureConfig& cfg = {});

// |central-difference d/d conj(zeta) of I - a e^{i phi/h}| / |a e^{i phi/h}| at zeta
double dbar_residual(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                     double h, double step, const QuadratureConfig& cfg = {});

// bump used for partitions of unity: 1 on [0, 1/2], 0 beyond 1
inline double patch_bump(double x) { return smooth_step(2.0 * x - 1.0); }

// max of |grad phi| over the real disk of radius R (sampled)
double max_phase_gradient(const PhaseSpec& phase, double R);

}  // namespace oscint
