// oscint: command-line front end (eval, scan, decompose, validate, dsii)
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "oscint/dispatcher.hpp"
#include "oscint/dsii.hpp"
#include "oscint/validate.hpp"

using namespace oscint;

namespace {

struct Opts {
  std::string phase, amp;
  bool no_reality = false;
  double r_in = 1.5, r_out = 3.0;
  int ah_order = 4;
  double delta = 0.1, tol = 1e-8;
  std::string method = "auto", regime;
  double T0 = 8;
  int N = 2, threads = 0;
  std::string zeta = "0.1,-0.04";
  double h = 0.1;
  std::string zeta_grid, h_list;
  bool no_oracle = false;
  std::string suite = "all";
  std::string kmod = "20";
  double karg = 0, t = 0;
  int sigma = 1;
  std::string correction = "stated";
};

std::vector<double> split_doubles(const std::string& s, char sep) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not a number: '" + item + "'");
    }
  }
  return v;
}

cplx parse_zeta(const std::string& s) {
  auto v = split_doubles(s, ',');
  if (v.size() != 2) throw Error(ErrorKind::Parse, "expected RE,IM, got '" + s + "'");
  return {v[0], v[1]};
}

// file path, or quadratic:L,M,R
PhaseSpec make_phase(const Opts& o) {
  if (o.phase.empty()) return PhaseSpec::quadratic(1, 1, 0);
  if (o.phase.rfind("quadratic:", 0) == 0) {
    auto v = split_doubles(o.phase.substr(10), ',');
    if (v.size() != 3) throw Error(ErrorKind::Parse, "quadratic:LAMBDA,MU,RHO");
    return PhaseSpec::quadratic(v[0], v[1], v[2]);
  }
  return load_phase(o.phase, !o.no_reality);
}

// file path, or const:RE[,IM]
AmplitudeSpec make_amp(const Opts& o) {
  if (o.amp.empty()) return AmplitudeSpec{};
  if (o.amp.rfind("const:", 0) == 0) {
    auto v = split_doubles(o.amp.substr(6), ',');
    if (v.empty() || v.size() > 2) throw Error(ErrorKind::Parse, "const:RE[,IM]");
    return AmplitudeSpec::constant({v[0], v.size() > 1 ? v[1] : 0.0});
  }
  return load_amplitude(o.amp);
}

EvalRequest make_request(const Opts& o) {
  EvalRequest r;
  r.phase = make_phase(o);
  r.amp = make_amp(o);
  r.chi.r_in = o.r_in;
  r.chi.r_out = o.r_out;
  r.chi.ah_order = o.ah_order;
  r.chi.validate();
  r.method = parse_method(o.method);
  if (!o.regime.empty()) {
    if (o.regime == "far") r.regime = Regime::Far;
    else if (o.regime == "intermediate") r.regime = Regime::Intermediate;
    else if (o.regime == "near") r.regime = Regime::Near;
    else throw Error(ErrorKind::InvalidArgument, "regime must be far, intermediate or near");
  }
  r.rp.delta = o.delta;
  r.rp.T0 = o.T0;
  r.rp.N = o.N;
  r.stokes.rel_tol = o.tol;
  r.stokes.quad.rel_tol = o.tol;
  r.zeta = parse_zeta(o.zeta);
  r.h = o.h;
  return r;
}

int cmd_eval(const Opts& o) {
  const EvalResult r = evaluate(make_request(o));
  std::printf("value_re,value_im,regime,route,err_est,eps,alpha,seconds");
  if (r.decomposition) std::printf(",I_re,I_im,II_re,II_im,III_re,III_im");
  std::printf("\n%.15e,%.15e,%s,%s,%.3e,%.6g,%.6g,%.3f", r.value.real(), r.value.imag(), to_string(r.regime),
              r.route.c_str(), r.err_est, r.eps, r.alpha, r.seconds);
  if (r.decomposition)
    for (const auto& t : *r.decomposition) std::printf(",%.15e,%.15e", t.value.real(), t.value.imag());
  std::printf("\n");
  return 0;
}

// RE0:RE1:N
void parse_axis(const std::string& s, double& a, double& b, int& n) {
  auto v = split_doubles(s, ':');
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) throw Error(ErrorKind::Parse, "axis A:B:N, got '" + s + "'");
  a = v[0];
  b = v[1];
  n = int(v[2]);
}

int cmd_scan(const Opts& o) {
  if (o.zeta_grid.empty() || o.h_list.empty()) throw Error(ErrorKind::InvalidArgument, "scan needs --zeta-grid and --h-list");
  const auto comma = o.zeta_grid.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::Parse, "--zeta-grid RE0:RE1:N,IM0:IM1:N");
  double re0, re1, im0, im1;
  int nre, nim;
  parse_axis(o.zeta_grid.substr(0, comma), re0, re1, nre);
  parse_axis(o.zeta_grid.substr(comma + 1), im0, im1, nim);
  const auto hs = split_doubles(o.h_list, ',');
  const auto pts = scan(make_request(o), re0, re1, nre, im0, im1, nim, hs, o.threads);
  std::fputs(scan_csv(pts).c_str(), stdout);
  return 0;
}

int cmd_decompose(const Opts& o) {
  const EvalRequest q = make_request(o);
  const RotationResult rot = normalize_rotation(q.phase, q.zeta, q.rp.cone_half_width);
  const AmplitudeSpec a = q.amp.rotated(rot.alpha);
  const cplx back = std::polar(1.0, -rot.alpha);
  std::vector<std::pair<double, QuadResult>> p2, p3;
  const QuadResult I = term_I_numeric(a, rot.phase, q.chi, rot.zeta, q.h, q.stokes);
  const QuadResult II = term_II_numeric(a, rot.phase, q.chi, rot.zeta, q.h, q.stokes, &p2);
  const QuadResult III = term_III_numeric(a, rot.phase, q.chi, rot.zeta, q.h, q.stokes, &p3);
  auto row = [&](const char* x, const char* term, cplx v, double err) {
    v *= back;
    std::printf("%s,%s,%.15e,%.15e,%.3e\n", x, term, v.real(), v.imag(), err);
  };
  char x[32];
  std::printf("theta_or_t,term,value_re,value_im,err\n");
  row("1", "I", I.value, I.err);
  for (const auto& [t, r] : p2) {
    std::snprintf(x, sizeof x, "%.10g", t);
    row(x, "II", r.value, r.err);
  }
  for (const auto& [th, r] : p3) {
    std::snprintf(x, sizeof x, "%.10g", th);
    row(x, "III", r.value, r.err);
  }
  row("nan", "II_total", II.value, II.err);
  row("nan", "III_total", III.value, III.err);
  const cplx sum = I.value + II.value + III.value;
  row("nan", "sum", sum, I.err + II.err + III.err);
  if (!o.no_oracle) {
    const QuadResult orc = solid_cauchy(q.amp, q.phase, q.chi, q.zeta, q.h, q.stokes.quad);
    std::printf("nan,oracle,%.15e,%.15e,%.3e\n", orc.value.real(), orc.value.imag(), orc.err);
    std::printf("nan,defect,%.15e,0,%.3e\n", std::abs(orc.value - sum * back), orc.err + I.err + II.err + III.err);
  }
  if (rot.alpha != 0) std::fprintf(stderr, "note: rotated by alpha = %.6g\n", rot.alpha);
  return 0;
}

int cmd_validate(const Opts& o) {
  int failed = 0;
  for (const Check& c : run_validation(o.suite)) {
    std::puts(format_check(c).c_str());
    failed += !c.pass;
  }
  std::printf("%d check(s) failed\n", failed);
  return failed ? 1 : 0;
}

int cmd_dsii(const Opts& o) {
  const auto ks = split_doubles(o.kmod, ',');
  const AsymCorrection corr = o.correction == "bessel" ? AsymCorrection::Bessel
                              : o.correction == "stated"
                                  ? AsymCorrection::Stated
                                  : throw Error(ErrorKind::InvalidArgument, "correction must be stated or bessel");
  struct Row {
    cplx born, asym;
    double rel = 0;
    bool has_born = false;
    std::string err;
  };
  std::vector<Row> rows(ks.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < ks.size();) {
      const cplx k = std::polar(ks[i], o.karg);
      try {
        rows[i].born = reflection_evolve(reflection_disk_born(k, o.sigma), k, o.t);
        rows[i].has_born = true;
        rows[i].asym = reflection_evolve(reflection_disk_asym(k, o.sigma, corr), k, o.t);
        rows[i].rel = std::abs(rows[i].asym - rows[i].born) / reflection_envelope(k);
      } catch (const Error& e) {
        rows[i].err = e.what();
      }
    }
  };
  const int n = std::min<int>(worker_count(o.threads), int(ks.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::printf("kmod,born_re,born_im,asym_re,asym_im,rel_err\n");
  for (size_t i = 0; i < ks.size(); ++i) {
    const Row& r = rows[i];
    if (!r.err.empty()) {
      // below |k| = 5 only the Born value exists
      if (r.has_born)
        std::printf("%.10g,%.15e,%.15e,nan,nan,nan\n", ks[i], r.born.real(), r.born.imag());
      else
        std::printf("%.10g,nan,nan,nan,nan,nan\n", ks[i]);
      std::fprintf(stderr, "kmod %g: %s\n", ks[i], r.err.c_str());
      continue;
    }
    std::printf("%.10g,%.15e,%.15e,%.15e,%.15e,%.6e\n", ks[i], r.born.real(), r.born.imag(), r.asym.real(),
                r.asym.imag(), r.rel);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oscint: solid Cauchy transforms of oscillatory functions"};
  app.set_help_flag("--help", "print this help");  // -h would shadow --h
  app.set_config("--config", "", "key = value file; command-line flags override it");
  // list values (zeta, h-list, ...) keep their commas; we split them ourselves
  app.get_config_formatter_base()->arrayDelimiter(';');
  app.require_subcommand(1);
  Opts o;

  app.add_option("--phase", o.phase, "phase file, or quadratic:LAMBDA,MU,RHO");
  app.add_option("--amp", o.amp, "amplitude file, or const:RE[,IM]");
  app.add_flag("--no-reality-check", o.no_reality, "accept phases that are not real on the anti-diagonal");
  app.add_option("--r-in", o.r_in, "cutoff: chi = 1 inside");
  app.add_option("--r-out", o.r_out, "cutoff: chi = 0 outside");
  app.add_option("--ah-order", o.ah_order, "order of the almost-holomorphic cutoff extension");
  app.add_option("--delta", o.delta, "regime exponent, 0 < delta < 1/6");
  app.add_option("--tol", o.tol, "relative quadrature tolerance");
  app.add_option("--method", o.method, "auto | oracle | stokes | asym");
  app.add_option("--regime", o.regime, "force far | intermediate | near");
  app.add_option("--T0", o.T0, "tail start of hybrid II");
  app.add_option("--N", o.N, "tail expansion order");
  app.add_option("--threads", o.threads, "workers for scans (OSCINT_THREADS caps)");
  app.add_option("--zeta", o.zeta, "pole RE,IM");
  app.add_option("--h", o.h, "semiclassical parameter");
  app.add_option("--zeta-grid", o.zeta_grid, "RE0:RE1:N,IM0:IM1:N");
  app.add_option("--h-list", o.h_list, "H1,H2,...");
  app.add_flag("--no-oracle", o.no_oracle, "decompose: skip the brute-force reference");
  app.add_option("--suite", o.suite, "specfun | stokes | regimes | all");
  app.add_option("--kmod", o.kmod, "|k|, or a comma list");
  app.add_option("--karg", o.karg, "arg k");
  app.add_option("--t", o.t, "time");
  app.add_option("--sigma", o.sigma, "+1 defocusing, -1 focusing");
  app.add_option("--correction", o.correction, "dsii 1/|k| correction: stated | bessel");

  auto* eval = app.add_subcommand("eval", "evaluate the transform at one (zeta, h)");
  auto* scn = app.add_subcommand("scan", "evaluate on a zeta grid times an h list (CSV)");
  auto* dec = app.add_subcommand("decompose", "I / II / III panels (CSV)");
  auto* val = app.add_subcommand("validate", "run self-checks; nonzero exit on failure");
  auto* ds = app.add_subcommand("dsii", "disk reflection coefficient: Born vs large-|k| form (CSV)");
  for (auto* s : {eval, scn, dec, val, ds}) s->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (const char* e = std::getenv("OSCINT_THREADS"); e && std::atoi(e) <= 0)
    std::fprintf(stderr, "warning: ignoring OSCINT_THREADS=%s\n", e);
  try {
    if (*eval) return cmd_eval(o);
    if (*scn) return cmd_scan(o);
    if (*dec) return cmd_decompose(o);
    if (*val) return cmd_validate(o);
    if (*ds) return cmd_dsii(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
