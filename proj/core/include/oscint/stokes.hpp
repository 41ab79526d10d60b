#pragma once
// Contour family Gamma_theta in C^2 and the three terms of the split
//   oracle = I(zeta,1) + II(zeta) + III(zeta)
// Gamma_theta: w = z + i theta conj(z), wt = conj(z) + i theta z, z = t + i s.
#include <array>
#include <utility>
#include <vector>

#include "oscint/oracle.hpp"

namespace oscint {

std::pair<cplx, cplx> gamma_point(double theta, double t, double s);
// partner point: (zeta, zeta_tilde) in Gamma_theta
cplx zeta_tilde_theta(cplx zeta, double theta);
// the same curve reparametrized by t = 2 theta / (1 - theta^2)
cplx zeta_tilde_t(cplx zeta, double t);
// the (t, s) pre-image z of the pole (w = zeta) on Gamma_theta
cplx pole_preimage(cplx zeta, double theta);

// coordinates w+, w- w.r.t. the orthonormal basis e+, e- of C^2 adapted to Gamma_theta;
// real exactly on Gamma_theta. On Gamma_1: w = e^{i pi/4} w-, wt = e^{i pi/4} w+.
struct WCoords {
  cplx wp, wm;
};
std::pair<std::array<cplx, 2>, std::array<cplx, 2>> w_basis(double theta);  // (e+, e-)
WCoords to_w(double theta, cplx w, cplx wt);
std::pair<cplx, cplx> from_w(double theta, const WCoords& c);
// the same coordinates from the w (resp. wt) component alone; Gamma_theta points only
WCoords to_w_from_omega(double theta, cplx w);
WCoords to_w_from_omega_tilde(double theta, cplx wt);

inline double s_plus(cplx sigma) { return (std::polar(1.0, kPi / 4) * sigma).real(); }
inline double s_minus(cplx sigma) { return (std::polar(1.0, kPi / 4) * sigma).imag(); }

struct StokesConfig {
  QuadratureConfig quad;
  double rel_tol = 1e-10;     // terms I, II
  double rel_tol_iii = 1e-5;  // theta integral of III (III itself is O(h^{M+1}))
  double delta_stop = 1e-3;
  double t_max = 0;           // 0: integrate II over the full cutoff support
  double theta_patch = 0.35;  // pole patch radius inside III
  double cone_half_width = kDefaultConeHalfWidth;
};

QuadResult term_I_numeric(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                          double h, const StokesConfig& cfg = {});

// integrand of II in t (including the -i and the weight conj(zeta~)/sqrt(1+t^2))
cplx term_II_integrand(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                       double h, double t);
// t beyond which the pole has left the cutoff support
double term_II_support_end(const CutoffSpec& chi, cplx zeta);
QuadResult term_II_numeric(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                           double h, const StokesConfig& cfg = {},
                           std::vector<std::pair<double, QuadResult>>* panels = nullptr);

// k(theta): the d-bar(chi~) density of III integrated over Gamma_theta
QuadResult term_III_density(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                            double h, double theta, const StokesConfig& cfg = {});
// size estimate of III from k at its expected peak theta = M h / (min(lambda,mu) r_flat^2)
double term_III_estimate(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta, double h,
                         const StokesConfig& cfg = {});
QuadResult term_III_numeric(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                            double h, const StokesConfig& cfg = {},
                            std::vector<std::pair<double, QuadResult>>* panels = nullptr);

struct Decomposition {
  QuadResult oracle, I, II, III;
  double defect = 0;
  double err_budget = 0;  // sum of the error estimates
};

Decomposition decomposition_check(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi,
                                  cplx zeta, double h, const StokesConfig& cfg = {});

}  // namespace oscint
