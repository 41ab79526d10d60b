#pragma once
// Closed-form evaluators per regime of eps = |zeta|/sqrt(h):
//   far      eps > h^{-delta}:  h (c1 e^{i phi/h} + b1)
//   near     eps < h^{delta}:   leading constants of I and II
//   between:                    numeric II on [0,T] + integration-by-parts tail
#include <string>
#include <vector>

#include "oscint/stokes.hpp"

namespace oscint {

struct RegimeParams {
  double delta = 0.1;
  double T0 = 8;
  int N = 2;
  double lambda_scale = 0;      // far-field rescaling; 0 means |zeta|
  double far_abs_min = 0.25;    // unrescaled far field allowed for |zeta| >= this
  bool enforce = true;          // throw RegimeViolation outside the stated regime
  double cone_half_width = kDefaultConeHalfWidth;

  static double eps(cplx zeta, double h) { return std::abs(zeta) / std::sqrt(h); }
  double eps_near(double h) const { return std::pow(h, delta); }
  double eps_far(double h) const { return std::pow(h, -delta); }
  void validate() const;
};

struct AsymResult {
  cplx value{};
  double order_claim = 0;      // error exponent in h claimed for the formula
  double next_correction = 0;  // size estimate of the first neglected term
  std::string form;
};

// two-term expansion h (c1(zeta) e^{i phi(zeta, conj zeta)/h} + b1(zeta))
AsymResult far_field(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                     const RegimeParams& rp = {});
// same through the scaling w -> lambda w (h -> h / lambda^2)
AsymResult far_field_rescaled(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                              const RegimeParams& rp = {});

// h^{1/2} b0 G^{side}(zeta / (h i/f)^{1/2}),  b0 = 2 sqrt(2 pi) e^{i pi/4} a(0,0) / (lambda+mu+2i rho)^{1/2}
AsymResult near_field_term_I(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                             const RegimeParams& rp = {});
// -i h^{1/2} sgn(s+) sqrt(2 pi) a(0,0) e^{-i pi/4} / (lambda+mu+2i rho)^{1/2}
AsymResult near_field_term_II(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                              const RegimeParams& rp = {});

enum class NearForm { Fine, Coarse };
// Fine: I + II leading terms = h^{1/2} b0 (G^l + 1/2) or (G^r - 1/2).
// Coarse: h^{1/2} 2 sqrt(pi) a(0,0) / (lambda+mu+2i rho)^{1/2} sgn(Re(e^{i pi/4} zeta)).
AsymResult near_field_total(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h,
                            NearForm form = NearForm::Fine, const RegimeParams& rp = {});

// leading constant of II without the -i factor; kept for checking the sign convention
cplx near_field_term_II_uncalibrated(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double h);

// \int_T^inf b e^{phi/h} dt for the cutoff-free II integrand
//   b(t) = -i a(zeta, zt(t)) conj(zt(t)) / sqrt(1+t^2),  phi(t) = i phi(zeta, zt(t))
// by N+1 integrations by parts: c = sum_{k<=N} (-L)^k c0, c0 = h b / phi', L g = h g' / phi'.
struct TailExpansion {
  double T = 0;
  int N = 0;
  std::vector<cplx> c;  // c[k] = ((-L)^k c0)(T)
  cplx value{};         // -e^{phi(T)/h} sum c[k]
  double bound = 0;     // |e^{phi(T)/h} c0(T)| (h/(T|zeta|)^2)^{N+1}
};
TailExpansion tail_expansion(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double T, int N,
                             double h, bool enforce = true);
// the same integrand by direct quadrature over [T, inf)
QuadResult tail_direct(const AmplitudeSpec& a, const PhaseSpec& phase, cplx zeta, double T, double h,
                       double rel_tol = 1e-12);

// numeric II on [0,T] plus the tail from T; T is raised to 10/eps when needed
struct HybridResult {
  QuadResult head;
  TailExpansion tail;
  cplx value{};
  double err = 0;
};
HybridResult hybrid_II(const AmplitudeSpec& a, const PhaseSpec& phase, const CutoffSpec& chi, cplx zeta,
                       double h, double T, int N, const StokesConfig& cfg = {});

// \int_0^inf e^{-eps^2 t^2/2} t^k chi(t) dt with chi = 0 on [0,t0], 1 beyond t1
struct MomentCutoff {
  double t0 = 0.5, t1 = 1.0;
  double operator()(double t) const;
};
enum class MomentKind { Power, Analytic, Log };
struct MomentResult {
  int k = 0;
  MomentKind kind = MomentKind::Analytic;
  double singular_coeff = 0;  // c_k of c_k eps^{-1-k} or of c_k eps^{-1-k} ln(1/eps)
  double singular = 0;        // the singular term itself
  double an = 0;              // the rest; analytic in eps
  double value = 0;
  double err = 0;
};
// exact singular coefficient: (2m)!/(2^m m!) sqrt(pi/2), 2^m m!, or (-1/2)^m/m! for k = -2m-1
double gaussian_moment_coeff(int k);
MomentResult gaussian_moment(int k, double eps, const MomentCutoff& chi = {});

}  // namespace oscint
