#include "oscint/phase.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace oscint {

Poly2::Poly2(int degree) : deg_(degree), c_((degree + 1) * (degree + 1)) {
  if (degree < 0 || degree > kMaxDegree)
    throw Error(ErrorKind::InvalidArgument, "polynomial degree out of range: " + std::to_string(degree));
}

Poly2 Poly2::from_coeffs(const std::map<std::pair<int, int>, cplx>& c) {
  int d = 0;
  for (const auto& [jk, v] : c) d = std::max({d, jk.first, jk.second});
  Poly2 p(d);
  for (const auto& [jk, v] : c) p.set(jk.first, jk.second, v);
  return p;
}

cplx Poly2::coeff(int j, int k) const {
  if (j < 0 || k < 0 || j > deg_ || k > deg_) return 0.0;
  return c_[j * (deg_ + 1) + k];
}

void Poly2::set(int j, int k, cplx v) {
  if (j < 0 || k < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  if (j > deg_ || k > deg_) {
    Poly2 q(std::max(j, k));
    for (int a = 0; a <= deg_; ++a)
      for (int b = 0; b <= deg_; ++b) q.set(a, b, coeff(a, b));
    *this = q;
  }
  c_[j * (deg_ + 1) + k] = v;
}

std::map<std::pair<int, int>, cplx> Poly2::nonzero() const {
  std::map<std::pair<int, int>, cplx> m;
  for (int j = 0; j <= deg_; ++j)
    for (int k = 0; k <= deg_; ++k)
      if (coeff(j, k) != 0.0) m[{j, k}] = coeff(j, k);
  return m;
}

cplx Poly2::operator()(cplx w, cplx wt) const { return eval<cplx>(w, wt); }

Poly2 Poly2::d_w() const {
  Poly2 q(std::max(deg_ - 1, 0));
  for (int j = 1; j <= deg_; ++j)
    for (int k = 0; k <= deg_; ++k)
      if (coeff(j, k) != 0.0) q.set(j - 1, k, double(j) * coeff(j, k));
  return q;
}

Poly2 Poly2::d_wt() const {
  Poly2 q(std::max(deg_ - 1, 0));
  for (int j = 0; j <= deg_; ++j)
    for (int k = 1; k <= deg_; ++k)
      if (coeff(j, k) != 0.0) q.set(j, k - 1, double(k) * coeff(j, k));
  return q;
}

Poly2 Poly2::rotated(double a) const {
  Poly2 p(deg_);
  for (int j = 0; j <= deg_; ++j)
    for (int k = 0; k <= deg_; ++k) p.set(j, k, coeff(j, k) * std::polar(1.0, a * (j - k)));
  return p;
}

Poly2 Poly2::scaled(double s) const {
  Poly2 p(deg_);
  for (int j = 0; j <= deg_; ++j)
    for (int k = 0; k <= deg_; ++k) p.set(j, k, coeff(j, k) * std::pow(s, j + k));
  return p;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 p(std::max(deg_, o.deg_));
  for (int j = 0; j <= p.deg_; ++j)
    for (int k = 0; k <= p.deg_; ++k) p.set(j, k, coeff(j, k) + o.coeff(j, k));
  return p;
}

Poly2 Poly2::operator*(cplx s) const {
  Poly2 p = *this;
  for (auto& v : p.c_) v *= s;
  return p;
}

double Poly2::reality_defect() const {
  double d = 0;
  for (int j = 0; j <= deg_; ++j)
    for (int k = 0; k <= deg_; ++k) d = std::max(d, std::abs(coeff(j, k) - std::conj(coeff(k, j))));
  return d;
}

// ---------------------------------------------------------------- PhaseSpec

PhaseSpec::PhaseSpec(Poly2 p, bool check) : p_(std::move(p)) {
  if (check) {
    if (p_.reality_defect() > 1e-12)
      throw Error(ErrorKind::InvalidArgument, "phase violates c_jk = conj(c_kj) (not real on the anti-diagonal)");
    if (std::abs(p_.coeff(0, 0)) + std::abs(p_.coeff(1, 0)) + std::abs(p_.coeff(0, 1)) > 0)
      throw Error(ErrorKind::InvalidArgument, "phase must satisfy phi(0,0)=0 and grad phi(0,0)=0");
  }
  cache();
}

void PhaseSpec::cache() {
  dw_ = p_.d_w();
  dwt_ = p_.d_wt();
  dww_ = dw_.d_w();
  dwwt_ = dw_.d_wt();
  dwtwt_ = dwt_.d_wt();
}

PhaseSpec PhaseSpec::from_closure(PhaseClosure c) {
  PhaseSpec p;
  p.closure_ = std::make_shared<const PhaseClosure>(std::move(c));
  return p;
}

PhaseSpec PhaseSpec::quadratic(double lambda, double mu, double rho) {
  Poly2 p(2);
  p.set(2, 0, cplx((lambda + mu) / 8, -rho / 4));
  p.set(0, 2, cplx((lambda + mu) / 8, rho / 4));
  p.set(1, 1, (lambda - mu) / 4);
  return PhaseSpec(p);
}

cplx PhaseSpec::operator()(cplx w, cplx wt) const { return closure_ ? closure_->f(w, wt) : p_(w, wt); }

std::array<cplx, 2> PhaseSpec::grad(cplx w, cplx wt) const {
  if (closure_) {
    if (!closure_->grad) throw Error(ErrorKind::DerivativeUnavailable, "closure phase without gradient");
    return closure_->grad(w, wt);
  }
  return {dw_(w, wt), dwt_(w, wt)};
}

std::array<cplx, 3> PhaseSpec::hess(cplx w, cplx wt) const {
  if (closure_) {
    if (!closure_->hess) throw Error(ErrorKind::DerivativeUnavailable, "closure phase without Hessian");
    return closure_->hess(w, wt);
  }
  return {dww_(w, wt), dwwt_(w, wt), dwtwt_(w, wt)};
}

PhaseSpec PhaseSpec::rotated(double a) const {
  if (!closure_) return PhaseSpec(p_.rotated(a), false);
  const cplx e = std::polar(1.0, a), ec = std::conj(e);
  auto c = closure_;
  PhaseClosure r;
  r.f = [c, e, ec](cplx w, cplx wt) { return c->f(e * w, ec * wt); };
  if (c->grad)
    r.grad = [c, e, ec](cplx w, cplx wt) -> std::array<cplx, 2> {
      auto g = c->grad(e * w, ec * wt);
      return {e * g[0], ec * g[1]};
    };
  if (c->hess)
    r.hess = [c, e, ec](cplx w, cplx wt) -> std::array<cplx, 3> {
      auto H = c->hess(e * w, ec * wt);
      return {e * e * H[0], H[1], ec * ec * H[2]};
    };
  return from_closure(std::move(r));
}

PhaseSpec PhaseSpec::scaled(double s) const {
  if (!closure_) return PhaseSpec(p_.scaled(s) * (1.0 / (s * s)), false);
  auto c = closure_;
  PhaseClosure r;
  r.f = [c, s](cplx w, cplx wt) { return c->f(s * w, s * wt) / (s * s); };
  if (c->grad)
    r.grad = [c, s](cplx w, cplx wt) -> std::array<cplx, 2> {
      auto g = c->grad(s * w, s * wt);
      return {g[0] / s, g[1] / s};
    };
  if (c->hess) r.hess = [c, s](cplx w, cplx wt) { return c->hess(s * w, s * wt); };
  return from_closure(std::move(r));
}

// ------------------------------------------------------------ AmplitudeSpec

AmplitudeSpec::AmplitudeSpec() : a00_(1.0) {
  Poly2 p(0);
  p.set(0, 0, 1.0);
  terms_.push_back({0, p});
}

AmplitudeSpec AmplitudeSpec::constant(cplx a) {
  Poly2 p(0);
  p.set(0, 0, a);
  return from_terms({{0, p}});
}

AmplitudeSpec AmplitudeSpec::from_terms(std::vector<std::pair<int, Poly2>> terms) {
  AmplitudeSpec a;
  a.terms_ = std::move(terms);
  a.closure_ = nullptr;
  a.a00_ = 0;
  for (const auto& [j, p] : a.terms_)
    if (j == 0) a.a00_ += p.coeff(0, 0);
  return a;
}

AmplitudeSpec AmplitudeSpec::from_closure(std::function<cplx(cplx, cplx, double)> f, cplx a00) {
  AmplitudeSpec a = constant(0.0);
  a.terms_.clear();
  a.closure_ = std::move(f);
  a.a00_ = a00;
  return a;
}

cplx AmplitudeSpec::operator()(cplx w, cplx wt, double h) const {
  if (closure_) return closure_(w, wt, h);
  cplx acc = 0;
  for (const auto& [j, p] : terms_) acc += (j == 0 ? 1.0 : std::pow(h, j)) * p(w, wt);
  return acc;
}

cplx AmplitudeSpec::a0(cplx w, cplx wt) const {
  if (closure_) return closure_(w, wt, 0.0);
  cplx acc = 0;
  for (const auto& [j, p] : terms_)
    if (j == 0) acc += p(w, wt);
  return acc;
}

AmplitudeSpec AmplitudeSpec::rotated(double a) const {
  if (closure_) {
    const cplx e = std::polar(1.0, a);
    auto f = closure_;
    return from_closure([f, e](cplx w, cplx wt, double h) { return f(e * w, std::conj(e) * wt, h); }, a00_);
  }
  auto t = terms_;
  for (auto& [j, p] : t) p = p.rotated(a);
  return from_terms(t);
}

AmplitudeSpec AmplitudeSpec::scaled(double s) const {
  if (closure_) {
    auto f = closure_;
    return from_closure([f, s](cplx w, cplx wt, double h) { return f(s * w, s * wt, h); }, a00_);
  }
  auto t = terms_;
  for (auto& [j, p] : t) p = p.scaled(s);
  return from_terms(t);
}

// ------------------------------------------------------- quadratic data etc

std::array<cplx, 3> quadratic_coeffs(const PhaseSpec& phase) {
  if (phase.is_polynomial()) {
    const auto& p = phase.poly();
    return {p.coeff(2, 0), p.coeff(1, 1), p.coeff(0, 2)};
  }
  auto H = phase.hess(0.0, 0.0);
  return {0.5 * H[0], H[1], 0.5 * H[2]};
}

QuadraticData taylor_quadratic(const PhaseSpec& phase) {
  auto [c20, c11, c02] = quadratic_coeffs(phase);
  QuadraticData q;
  q.lambda = 2.0 * (c20 + c02 + c11).real();
  q.mu = 2.0 * (c20 + c02 - c11).real();
  q.rho = (2.0 * kI * (c20 - c02)).real();
  const double d = q.lambda * q.mu + q.rho * q.rho;
  q.det2 = -d;
  if (std::abs(d) < 1e-14) throw Error(ErrorKind::Degenerate, "lambda mu + rho^2 = 0");
  if (q.lambda <= 0 || q.mu <= 0)
    throw Error(ErrorKind::Signature, "lambda = " + std::to_string(q.lambda) + ", mu = " +
                                          std::to_string(q.mu) + " (rotate first)");
  q.f = d / q.c();
  return q;
}

namespace {
double wrap_pi(double a) {  // into (-pi/2, pi/2]
  while (a > kPi / 2) a -= kPi;
  while (a <= -kPi / 2) a += kPi;
  return a;
}
}  // namespace

double cone_distance(cplx z) {
  double d = std::fmod(std::arg(z) - kPi / 4, kPi);
  if (d < 0) d += kPi;
  return std::min(d, kPi - d);
}

std::pair<double, double> admissible_interval(const PhaseSpec& phase) {
  auto [c20, c11, c02] = quadratic_coeffs(phase);
  (void)c02;
  const double a20 = std::abs(c20);
  if (a20 == 0.0) throw Error(ErrorKind::Signature, "quadratic part has no (+,-) rotation");
  const double kappa = std::abs(c11.real()) / (2.0 * a20);
  if (kappa >= 1.0) throw Error(ErrorKind::Signature, "quadratic part is definite");
  const double beta = std::arg(c20), half = std::acos(kappa);
  // lambda, mu > 0  <=>  cos(2 alpha + beta) > kappa
  const double mid = wrap_pi(-beta / 2);
  return {mid - half / 2, mid + half / 2};
}

RotationResult normalize_rotation(const PhaseSpec& phase, cplx zeta, double hw) {
  auto [lo, hi] = admissible_interval(phase);
  RotationResult res;
  res.j_lo = lo;
  res.j_hi = hi;
  auto in_J = [&](double a) {
    for (int k = -2; k <= 2; ++k)
      if (a + k * kPi > lo && a + k * kPi < hi) return true;
    return false;
  };
  auto finish = [&](double a) {
    res.alpha = a;
    res.phase = a == 0.0 ? phase : phase.rotated(a);
    res.zeta = std::polar(1.0, -a) * zeta;
    return res;
  };
  const bool zero = zeta == 0.0;
  if (in_J(0.0) && (zero || cone_distance(zeta) >= hw)) return finish(0.0);
  if (zero) return finish(wrap_pi(0.5 * (lo + hi)));
  // forbidden rotations: |arg zeta - alpha - pi/4| < hw (mod pi)
  const double f0 = std::arg(zeta) - kPi / 4;
  std::vector<std::pair<double, double>> pieces{{lo, hi}};
  for (int k = -3; k <= 3; ++k) {
    const double a = f0 + k * kPi - hw, b = f0 + k * kPi + hw;
    std::vector<std::pair<double, double>> next;
    for (auto [x, y] : pieces) {
      if (b <= x || a >= y) {
        next.push_back({x, y});
        continue;
      }
      if (a > x) next.push_back({x, a});
      if (b < y) next.push_back({b, y});
    }
    pieces.swap(next);
  }
  double best = -1, best_a = 0;
  for (auto [x, y] : pieces) {
    if (y - x < 1e-12) continue;
    const double m = 0.5 * (x + y);
    const double d = cone_distance(std::polar(1.0, -m) * zeta);
    if (d > best) {
      best = d;
      best_a = m;
    }
  }
  if (best < 0) {
    std::ostringstream os;
    os << "cone width " << 2 * hw << " covers admissible width " << (hi - lo);
    throw Error(ErrorKind::NoAdmissibleRotation, os.str());
  }
  return finish(wrap_pi(best_a));
}

cplx critical_manifold(const PhaseSpec& phase, cplx w, double tol, int max_iter) {
  auto [c20, c11, c02] = quadratic_coeffs(phase);
  (void)c20;
  if (c02 == 0.0) throw Error(ErrorKind::Degenerate, "d^2 phi / d wt^2 vanishes at 0");
  cplx wt = -c11 * w / (2.0 * c02);
  for (int it = 0; it < max_iter; ++it) {
    const cplx g = phase.grad(w, wt)[1];
    if (std::abs(g) <= tol) return wt;
    const cplx H = phase.hess(w, wt)[2];
    wt -= g / H;
  }
  if (std::abs(phase.grad(w, wt)[1]) <= tol) return wt;
  throw Error(ErrorKind::NoConvergence, "critical_manifold: Newton did not converge");
}

cplx psi(const PhaseSpec& phase, cplx w) { return phase(w, critical_manifold(phase, w)); }

std::vector<StationaryPoint> stationary_points(const PhaseSpec& phase, double x0, double x1, double y0,
                                               double y1, int grid, double det_tol) {
  auto real_grad_hess = [&](double x, double y, double g[2], double H[2][2]) {
    const cplx w(x, y), wt(x, -y);
    auto d = phase.grad(w, wt);
    auto h = phase.hess(w, wt);
    g[0] = (d[0] + d[1]).real();
    g[1] = (kI * (d[0] - d[1])).real();
    H[0][0] = (h[0] + 2.0 * h[1] + h[2]).real();
    H[0][1] = H[1][0] = (kI * (h[0] - h[2])).real();
    H[1][1] = (-h[0] + 2.0 * h[1] - h[2]).real();
  };
  std::vector<StationaryPoint> out;
  const double sx = x1 - x0, sy = y1 - y0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      double x = x0 + sx * (i + 0.5) / grid, y = y0 + sy * (j + 0.5) / grid;
      bool conv = false;
      double g[2], H[2][2];
      for (int it = 0; it < 60; ++it) {
        real_grad_hess(x, y, g, H);
        const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
        if (std::hypot(g[0], g[1]) < 1e-13) {
          conv = true;
          break;
        }
        if (std::abs(det) < 1e-300) break;
        const double dx = (H[1][1] * g[0] - H[0][1] * g[1]) / det;
        const double dy = (-H[1][0] * g[0] + H[0][0] * g[1]) / det;
        x -= dx;
        y -= dy;
        if (std::abs(x) > 1e6 || std::abs(y) > 1e6) break;
        if (std::hypot(dx, dy) < 1e-15 * (1 + std::hypot(x, y))) {
          real_grad_hess(x, y, g, H);
          conv = std::hypot(g[0], g[1]) < 1e-10;
          break;
        }
      }
      if (!conv || x < x0 || x > x1 || y < y0 || y > y1) continue;
      const cplx p(x, y);
      bool dup = false;
      for (auto& s : out)
        if (std::abs(s.point - p) < 1e-7) dup = true;
      if (dup) continue;
      StationaryPoint s;
      s.point = p;
      real_grad_hess(x, y, g, s.hess);
      s.det = s.hess[0][0] * s.hess[1][1] - s.hess[0][1] * s.hess[1][0];
      if (std::abs(s.det) < det_tol)
        throw Error(ErrorKind::DegenerateCriticalPoint, "degenerate Hessian at a critical point");
      const double tr = s.hess[0][0] + s.hess[1][1];
      s.signature = s.det < 0 ? 0 : (tr > 0 ? 2 : -2);
      out.push_back(s);
    }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return std::abs(a.point) < std::abs(b.point); });
  return out;
}

double antidiagonal_reality_check(const PhaseSpec& phase, int n, double radius, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double m = 0;
  for (int i = 0; i < n; ++i) {
    const cplx w = std::polar(radius * std::sqrt(U(rng)), 2 * kPi * U(rng));
    m = std::max(m, std::abs(phase(w, std::conj(w)).imag()));
  }
  return m;
}

// ------------------------------------------------------------------ file io

namespace {
std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

int header_value(const std::string& line, const std::string& kw, const std::string& key) {
  std::istringstream is(line);
  std::string a, b;
  is >> a >> b;
  if (a != kw || b.rfind(key + "=", 0) != 0) return -1;
  try {
    return std::stoi(b.substr(key.size() + 1));
  } catch (...) {
    throw Error(ErrorKind::Parse, "bad header: " + line);
  }
}

void read_coeff(const std::string& line, Poly2& p, int max_deg) {
  std::istringstream is(line);
  int j, k;
  double re, im = 0;
  if (!(is >> j >> k >> re)) throw Error(ErrorKind::Parse, "bad coefficient line: " + line);
  is >> im;
  if (j < 0 || k < 0 || j + k > max_deg) throw Error(ErrorKind::Parse, "exponent out of range: " + line);
  p.add(j, k, cplx(re, im));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

PhaseSpec parse_phase(const std::string& text, bool reality_check) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::Parse, "empty phase file");
  const int d = header_value(lines[0], "phase", "d");
  if (d < 2 || d > kMaxDegree) throw Error(ErrorKind::Parse, "expected 'phase d=<2..12>' header");
  Poly2 p(d);
  for (size_t i = 1; i < lines.size(); ++i) read_coeff(lines[i], p, d);
  if (reality_check && p.reality_defect() > 1e-12)
    throw Error(ErrorKind::Parse, "phase coefficients violate c_jk = conj(c_kj)");
  return PhaseSpec(p, reality_check);
}

AmplitudeSpec parse_amplitude(const std::string& text) {
  auto lines = content_lines(text);
  std::vector<std::pair<int, Poly2>> terms;
  for (const auto& l : lines) {
    const int j = header_value(l, "amp", "j");
    if (j >= 0) {
      terms.push_back({j, Poly2(0)});
      continue;
    }
    if (terms.empty()) throw Error(ErrorKind::Parse, "coefficient before 'amp j=' header");
    read_coeff(l, terms.back().second, kMaxDegree);
  }
  if (terms.empty()) throw Error(ErrorKind::Parse, "empty amplitude file");
  return AmplitudeSpec::from_terms(terms);
}

std::string format_phase(const PhaseSpec& p) {
  std::ostringstream os;
  os.precision(17);
  os << "phase d=" << p.poly().degree() << "\n";
  for (const auto& [jk, v] : p.poly().nonzero())
    os << jk.first << " " << jk.second << " " << v.real() << " " << v.imag() << "\n";
  return os.str();
}

PhaseSpec load_phase(const std::string& path, bool reality_check) { return parse_phase(slurp(path), reality_check); }
AmplitudeSpec load_amplitude(const std::string& path) { return parse_amplitude(slurp(path)); }

}  // namespace oscint
