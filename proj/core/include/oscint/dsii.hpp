#pragma once
// Davey-Stewartson II demo: Born reflection coefficient of the unit disk potential
//   conj R(k) = (2 sigma/pi) \int_{|z|<=1} e^{k z - conj(k z)} dA(z)
// its large-|k| form, the time evolution, and the a_pm / phi_pm integrands.
#include <vector>

#include "oscint/phase.hpp"
#include "oscint/quadrature.hpp"

namespace oscint {

// radial reduction 4 sigma \int_0^1 J0(2|k| r) r dr by 1D quadrature
cplx reflection_disk_born(cplx k, int sigma = 1);
// the same from the 2D polar integral (independent path)
cplx reflection_disk_born_2d(cplx k, int sigma = 1);

enum class AsymCorrection {
  Stated,  // -(5/(16|k|)) cos(2|k| - pi/4)
  Bessel,  // +(3/(16|k|)) cos(2|k| - pi/4), from the J1 expansion
};
// 2 sigma/sqrt(pi |k|^3) (sin(2|k| - pi/4) + c/|k| cos(2|k| - pi/4)); |k| >= 5
cplx reflection_disk_asym(cplx k, int sigma = 1, AsymCorrection corr = AsymCorrection::Stated);
inline double reflection_envelope(cplx k) { return 2.0 / std::sqrt(kPi * std::pow(std::abs(k), 3)); }

// R0 e^{4 i t Re(k^2)}
cplx reflection_evolve(cplx R0, cplx k, double t);

struct DSIntegrand {
  AmplitudeSpec amp;        // +-1/sqrt(pi |w|^3), written (w wt)^{-3/4}
  PhaseSpec phase;          // 2t(w^2+wt^2) + (k w - conj(k) wt)/i +- 2 sqrt(w wt)
  double exclusion_radius;  // |w| below this throws EvaluationAtOrigin
};
DSIntegrand dsii_integrand(int branch, cplx k, double t, double exclusion_radius = 0.05);
// real critical points of phi_pm in the box, the exclusion disk left out
std::vector<StationaryPoint> dsii_stationary_points(int branch, cplx k, double t, double x0, double x1, double y0,
                                                    double y1, double exclusion_radius = 0.05);

}  // namespace oscint
