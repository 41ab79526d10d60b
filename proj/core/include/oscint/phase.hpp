#pragma once
// Phases and amplitudes as polynomials in the polarized variables (w, wt),
// wt standing for conj(w) on the real plane.
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "oscint/types.hpp"

namespace oscint {

inline constexpr int kMaxDegree = 12;

class Poly2 {
 public:
  Poly2() : Poly2(0) {}
  explicit Poly2(int degree);
  static Poly2 from_coeffs(const std::map<std::pair<int, int>, cplx>& c);

  int degree() const { return deg_; }
  cplx coeff(int j, int k) const;
  void set(int j, int k, cplx v);
  void add(int j, int k, cplx v) { set(j, k, coeff(j, k) + v); }
  std::map<std::pair<int, int>, cplx> nonzero() const;

  template <class T>
  T eval(const T& w, const T& wt) const {
    const int n = deg_ + 1;
    T acc = w * cplx(0.0);
    for (int j = deg_; j >= 0; --j) {
      T inner = wt * cplx(0.0);
      for (int k = deg_; k >= 0; --k) {
        inner = inner * wt;
        inner += c_[j * n + k];
      }
      acc = acc * w;
      acc += inner;
    }
    return acc;
  }
  cplx operator()(cplx w, cplx wt) const;

  Poly2 d_w() const;
  Poly2 d_wt() const;
  // p(e^{i a} w, e^{-i a} wt)
  Poly2 rotated(double alpha) const;
  // p(s w, s wt)
  Poly2 scaled(double s) const;
  Poly2 operator+(const Poly2& o) const;
  Poly2 operator*(cplx s) const;
  // c_{jk} == conj(c_{kj}) within tol
  double reality_defect() const;

 private:
  int deg_;
  std::vector<cplx> c_;
};

// Optional non-polynomial description; gradient / Hessian are needed by the
// operations that differentiate (stationary points, quadratic data).
struct PhaseClosure {
  std::function<cplx(cplx, cplx)> f;
  std::function<std::array<cplx, 2>(cplx, cplx)> grad;  // (d_w, d_wt)
  std::function<std::array<cplx, 3>(cplx, cplx)> hess;  // (ww, w wt, wt wt)
};

class PhaseSpec {
 public:
  PhaseSpec() = default;
  // throws Parse/InvalidArgument on reality or normalization violations when check is set
  explicit PhaseSpec(Poly2 p, bool check = true);
  static PhaseSpec from_closure(PhaseClosure c);
  // lambda/2 xi^2 - mu/2 eta^2 + rho xi eta
  static PhaseSpec quadratic(double lambda, double mu, double rho);

  bool is_polynomial() const { return !closure_; }
  const Poly2& poly() const { return p_; }

  cplx operator()(cplx w, cplx wt) const;
  std::array<cplx, 2> grad(cplx w, cplx wt) const;
  std::array<cplx, 3> hess(cplx w, cplx wt) const;
  // jet evaluation; polynomial phases only
  template <class T>
  T eval(const T& w, const T& wt) const {
    if (closure_) throw Error(ErrorKind::DerivativeUnavailable, "jet evaluation of a closure phase");
    return p_.eval(w, wt);
  }

  PhaseSpec rotated(double alpha) const;
  PhaseSpec scaled(double s) const;  // phi(s w, s wt) / s^2

 private:
  void cache();
  Poly2 p_, dw_, dwt_, dww_, dwwt_, dwtwt_;
  std::shared_ptr<const PhaseClosure> closure_;
};

class AmplitudeSpec {
 public:
  AmplitudeSpec();  // a = 1
  static AmplitudeSpec constant(cplx a);
  static AmplitudeSpec from_terms(std::vector<std::pair<int, Poly2>> terms);
  static AmplitudeSpec from_closure(std::function<cplx(cplx, cplx, double)> f, cplx a00);

  bool is_polynomial() const { return !closure_; }
  const std::vector<std::pair<int, Poly2>>& terms() const { return terms_; }

  cplx operator()(cplx w, cplx wt, double h) const;
  template <class T>
  T eval(const T& w, const T& wt, double h) const {
    if (closure_) throw Error(ErrorKind::DerivativeUnavailable, "jet evaluation of a closure amplitude");
    T acc = w * cplx(0.0);
    for (const auto& [j, p] : terms_) acc += p.eval(w, wt) * cplx(std::pow(h, j));
    return acc;
  }
  // leading symbol a_0
  cplx a0(cplx w, cplx wt) const;
  cplx a00() const { return a00_; }

  AmplitudeSpec rotated(double alpha) const;
  AmplitudeSpec scaled(double s) const;  // a(s w, s wt)

 private:
  std::vector<std::pair<int, Poly2>> terms_;
  std::function<cplx(cplx, cplx, double)> closure_;
  cplx a00_{};
};

struct QuadraticData {
  double lambda = 0, mu = 0, rho = 0;
  cplx f{};
  double det2 = 0;
  double alpha = 0;
  // lambda + mu + 2 i rho
  cplx c() const { return {lambda + mu, 2 * rho}; }
};

// second-order coefficients (c20, c11, c02) of phi at the origin
std::array<cplx, 3> quadratic_coeffs(const PhaseSpec& phase);
QuadraticData taylor_quadratic(const PhaseSpec& phase);

struct RotationResult {
  PhaseSpec phase;
  cplx zeta;
  double alpha = 0;
  double j_lo = 0, j_hi = 0;  // admissible interval J (mod pi)
};

inline constexpr double kDefaultConeHalfWidth = kPi / 12;

// distance of arg(zeta) from the line e^{i pi/4} R, in [0, pi/2]
double cone_distance(cplx zeta);
// open interval of rotations alpha (mod pi) with lambda, mu > 0 after rotation
std::pair<double, double> admissible_interval(const PhaseSpec& phase);
RotationResult normalize_rotation(const PhaseSpec& phase, cplx zeta,
                                  double cone_half_width = kDefaultConeHalfWidth);

cplx critical_manifold(const PhaseSpec& phase, cplx w, double tol = 1e-12, int max_iter = 50);
cplx psi(const PhaseSpec& phase, cplx w);

struct StationaryPoint {
  cplx point;             // xi + i eta
  double hess[2][2];      // real Hessian in (xi, eta)
  double det;
  int signature;          // #positive - #negative eigenvalues
};
std::vector<StationaryPoint> stationary_points(const PhaseSpec& phase, double x0, double x1, double y0,
                                               double y1, int grid = 9, double det_tol = 1e-10);

double antidiagonal_reality_check(const PhaseSpec& phase, int n_samples, double radius = 1.0,
                                  unsigned seed = 7);

// text formats: "phase d=<deg>" then "<j> <k> <re> <im>" lines;
// amplitudes: one or more "amp j=<hpower>" sections with the same lines
PhaseSpec parse_phase(const std::string& text, bool reality_check = true);
AmplitudeSpec parse_amplitude(const std::string& text);
std::string format_phase(const PhaseSpec& p);
PhaseSpec load_phase(const std::string& path, bool reality_check = true);
AmplitudeSpec load_amplitude(const std::string& path);

}  // namespace oscint
