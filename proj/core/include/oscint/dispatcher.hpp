#pragma once
// Regime routing and parameter scans over the three evaluation routes.
#include <optional>
#include <string>
#include <vector>

#include "oscint/asymptotics.hpp"

namespace oscint {

enum class Regime { Far, Intermediate, Near };
enum class Method { Auto, Oracle, Stokes, Asym };
const char* to_string(Regime r);
const char* to_string(Method m);
Method parse_method(const std::string& s);

// Far if eps > h^{-delta}, Near if eps < h^{delta}; ties go to Intermediate
Regime classify_regime(cplx zeta, double h, double delta = 0.1);

struct EvalRequest {
  PhaseSpec phase = PhaseSpec::quadratic(1, 1, 0);
  AmplitudeSpec amp;
  CutoffSpec chi;
  cplx zeta{};
  double h = 0.1;
  Method method = Method::Auto;
  std::optional<Regime> regime;  // override of the classification
  RegimeParams rp;
  StokesConfig stokes;  // tolerances; stokes.quad drives the oracle
};

struct EvalResult {
  cplx value{};
  Regime regime = Regime::Intermediate;
  std::optional<std::array<QuadResult, 3>> decomposition;  // I, II, III (original frame)
  double err_est = 0;
  std::string route;
  double eps = 0;
  double alpha = 0;  // rotation applied
  double seconds = 0;
};

EvalResult evaluate(const EvalRequest& req);

struct ScanPoint {
  cplx zeta;
  double h;
  std::optional<EvalResult> result;
  std::string error;
};
// zeta grid (re outer, im inner) x h list (innermost); results in input order;
// workers capped by OSCINT_THREADS when set
std::vector<ScanPoint> scan(const EvalRequest& base, double re0, double re1, int nre, double im0, double im1, int nim,
                            const std::vector<double>& hs, int threads = 0);
int worker_count(int requested = 0);
// zeta_re,zeta_im,h,eps,regime,route,value_re,value_im,err_est
std::string scan_csv(const std::vector<ScanPoint>& pts);

}  // namespace oscint
