#include "oscint/dispatcher.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace oscint {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Far: return "Far";
    case Regime::Intermediate: return "Intermediate";
    case Regime::Near: return "Near";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Oracle: return "oracle";
    case Method::Stokes: return "stokes";
    case Method::Asym: return "asym";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "auto") return Method::Auto;
  if (s == "oracle") return Method::Oracle;
  if (s == "stokes") return Method::Stokes;
  if (s == "asym") return Method::Asym;
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + s + "'");
}

Regime classify_regime(cplx zeta, double h, double delta) {
  if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
  const double eps = RegimeParams::eps(zeta, h);
  if (eps > std::pow(h, -delta)) return Regime::Far;
  if (eps < std::pow(h, delta)) return Regime::Near;
  return Regime::Intermediate;
}

EvalResult evaluate(const EvalRequest& req) {
  const auto t0 = std::chrono::steady_clock::now();
  req.rp.validate();
  EvalResult r;
  r.eps = RegimeParams::eps(req.zeta, req.h);
  r.regime = req.regime.value_or(classify_regime(req.zeta, req.h, req.rp.delta));
  auto done = [&] {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };

  if (req.method == Method::Oracle) {
    QuadResult q = solid_cauchy(req.amp, req.phase, req.chi, req.zeta, req.h, req.stokes.quad);
    r.value = q.value;
    r.err_est = q.err;
    r.route = q.ok() ? "oracle" : "oracle(tolerance-not-reached)";
    return done();
  }

  // work in the rotated frame; I(zeta) = e^{-i alpha} I_rot(e^{-i alpha} zeta)
  const RotationResult rot = normalize_rotation(req.phase, req.zeta, req.rp.cone_half_width);
  const AmplitudeSpec a = req.amp.rotated(rot.alpha);
  const PhaseSpec& ph = rot.phase;
  const cplx z = rot.zeta, back = std::polar(1.0, -rot.alpha);
  r.alpha = rot.alpha;
  const double h = req.h;

  if (req.method == Method::Stokes) {
    std::array<QuadResult, 3> d{term_I_numeric(a, ph, req.chi, z, h, req.stokes),
                                term_II_numeric(a, ph, req.chi, z, h, req.stokes),
                                term_III_numeric(a, ph, req.chi, z, h, req.stokes)};
    for (auto& t : d) {
      t.value *= back;
      r.value += t.value;
      r.err_est += t.err;
    }
    r.decomposition = d;
    r.route = "stokes";
    return done();
  }

  RegimeParams rp = req.rp;
  if (req.regime) rp.enforce = false;
  // III is left out of the value; its estimated size goes into err_est
  const double iii = r.regime == Regime::Far ? 0.0 : term_III_estimate(a, ph, req.chi, z, h, req.stokes);
  switch (r.regime) {
    case Regime::Far: {
      const AsymResult f = std::abs(z) >= rp.far_abs_min ? far_field(a, ph, z, h, rp)
                                                         : far_field_rescaled(a, ph, z, h, rp);
      r.value = f.value;
      r.err_est = f.next_correction;
      r.route = f.form;
      break;
    }
    case Regime::Near: {
      const AsymResult f = near_field_total(a, ph, z, h, NearForm::Fine, rp);
      r.value = f.value;
      r.err_est = f.next_correction + iii;
      r.route = f.form;
      break;
    }
    case Regime::Intermediate: {
      cplx I;
      double err;
      if (req.method == Method::Auto && h >= req.stokes.quad.h_floor) {
        const QuadResult q = term_I_numeric(a, ph, req.chi, z, h, req.stokes);
        I = q.value;
        err = q.err;
        r.route = "term-I+hybrid-II";
      } else {
        const AsymResult f = near_field_term_I(a, ph, z, h, rp);
        I = f.value;
        err = f.next_correction;
        r.route = "near-I+hybrid-II";
      }
      const HybridResult hy = hybrid_II(a, ph, req.chi, z, h, rp.T0, rp.N, req.stokes);
      r.value = I + hy.value;
      r.err_est = err + hy.err + iii;
      break;
    }
  }
  r.value *= back;
  return done();
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : int(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* e = std::getenv("OSCINT_THREADS")) {
    const int cap = std::atoi(e);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

std::vector<ScanPoint> scan(const EvalRequest& base, double re0, double re1, int nre, double im0, double im1, int nim,
                            const std::vector<double>& hs, int threads) {
  if (nre < 1 || nim < 1 || hs.empty()) throw Error(ErrorKind::InvalidArgument, "empty scan grid");
  auto lin = [](double a, double b, int n, int i) { return n == 1 ? a : a + (b - a) * i / (n - 1); };
  std::vector<ScanPoint> pts;
  for (int i = 0; i < nre; ++i)
    for (int j = 0; j < nim; ++j)
      for (double h : hs) pts.push_back({cplx(lin(re0, re1, nre, i), lin(im0, im1, nim, j)), h, {}, {}});

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k; (k = next++) < pts.size();) {
      EvalRequest q = base;
      q.zeta = pts[k].zeta;
      q.h = pts[k].h;
      try {
        pts[k].result = evaluate(q);
      } catch (const std::exception& e) {
        pts[k].error = e.what();
      }
    }
  };
  const int n = std::min<int>(worker_count(threads), int(pts.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return pts;
}

std::string scan_csv(const std::vector<ScanPoint>& pts) {
  std::string out = "zeta_re,zeta_im,h,eps,regime,route,value_re,value_im,err_est\n";
  char buf[512];
  for (const auto& p : pts) {
    const double eps = RegimeParams::eps(p.zeta, p.h);
    if (p.result) {
      const auto& r = *p.result;
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%s,%s,%.15e,%.15e,%.3e\n", p.zeta.real(), p.zeta.imag(),
                    p.h, eps, to_string(r.regime), r.route.c_str(), r.value.real(), r.value.imag(), r.err_est);
    } else {
      std::string msg = p.error;
      for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
      Regime g = Regime::Intermediate;
      try {
        g = classify_regime(p.zeta, p.h);
      } catch (const Error&) {
      }
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%s,error: %s,nan,nan,nan\n", p.zeta.real(),
                    p.zeta.imag(), p.h, eps, to_string(g), msg.c_str());
    }
    out += buf;
  }
  return out;
}

}  // namespace oscint
