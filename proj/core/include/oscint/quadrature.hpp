#pragma once
// Adaptive Gauss-Kronrod quadrature: 1D (G10/K21), 2D tensor (G7/K15), and
// straight-segment contour integrals. Complex-valued integrands throughout.
#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "oscint/types.hpp"

namespace oscint {

enum class QuadStatus { Ok, ToleranceNotReached, OscillationLimit };

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  double l1_tol = 0.0;  // stop also when err <= l1_tol * \int|f|
  int max_pieces = 4000;
  int kronrod = 21;  // 21 (G10/K21) or 15 (G7/K15) points per 1D piece
};

struct QuadResult {
  cplx value{};
  double err = 0;
  double l1 = 0;
  long evals = 0;
  int pieces = 0;
  QuadStatus status = QuadStatus::Ok;
  bool ok() const { return status == QuadStatus::Ok; }
};

inline QuadResult& operator+=(QuadResult& a, const QuadResult& b) {
  a.value += b.value;
  a.err += b.err;
  a.l1 += b.l1;
  a.evals += b.evals;
  a.pieces += b.pieces;
  if (b.status != QuadStatus::Ok && a.status == QuadStatus::Ok) a.status = b.status;
  return a;
}

namespace gk {
// QUADPACK qk21 / qk15 abscissae and weights (positive half, centre last)
inline constexpr double x21[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double wk21[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525464066, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double wg10[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr double x15[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wk15[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg7[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// full 15-point tables on [-1,1]: nodes, Kronrod weights, Gauss weights (0 on Kronrod-only nodes)
struct Rule15 {
  double x[15], wk[15], wg[15];
  constexpr Rule15() : x(), wk(), wg() {
    for (int i = 0; i < 7; ++i) {
      x[i] = -x15[i];
      x[14 - i] = x15[i];
      wk[i] = wk[14 - i] = wk15[i];
      wg[i] = wg[14 - i] = (i % 2 == 1) ? wg7[i / 2] : 0.0;
    }
    x[7] = 0.0;
    wk[7] = wk15[7];
    wg[7] = wg7[3];
  }
};
inline constexpr Rule15 rule15{};

// QUADPACK-style error rescaling
inline double scale_err(double raw, double resasc) {
  if (resasc > 0 && raw > 0) return resasc * std::min(1.0, std::pow(200.0 * raw / resasc, 1.5));
  return raw;
}
}  // namespace gk

namespace detail {
struct Piece1 {
  double a, b;
  cplx val;
  double err, l1;
  int id;
  bool operator<(const Piece1& o) const { return err < o.err; }
};

template <class F>
Piece1 gk21(F& f, double a, double b, int id) {
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  cplx fv[21];
  fv[10] = f(c);
  for (int i = 0; i < 10; ++i) {
    const double dx = hl * gk::x21[i];
    fv[i] = f(c - dx);
    fv[20 - i] = f(c + dx);
  }
  cplx rk = gk::wk21[10] * fv[10], rg = 0;
  double l1 = gk::wk21[10] * std::abs(fv[10]);
  for (int i = 0; i < 10; ++i) {
    rk += gk::wk21[i] * (fv[i] + fv[20 - i]);
    l1 += gk::wk21[i] * (std::abs(fv[i]) + std::abs(fv[20 - i]));
    if (i % 2 == 1) rg += gk::wg10[i / 2] * (fv[i] + fv[20 - i]);
  }
  const cplx mean = 0.5 * rk;
  double asc = gk::wk21[10] * std::abs(fv[10] - mean);
  for (int i = 0; i < 10; ++i) asc += gk::wk21[i] * (std::abs(fv[i] - mean) + std::abs(fv[20 - i] - mean));
  const double ahl = std::abs(hl);
  return {a, b, rk * hl, gk::scale_err(std::abs((rk - rg) * hl), asc * ahl), l1 * ahl, id};
}

template <class F>
Piece1 gk15(F& f, double a, double b, int id) {
  const auto& g = gk::rule15;
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  cplx fv[15];
  cplx rk = 0, rg = 0;
  double l1 = 0;
  for (int i = 0; i < 15; ++i) {
    fv[i] = f(c + hl * g.x[i]);
    rk += g.wk[i] * fv[i];
    rg += g.wg[i] * fv[i];
    l1 += g.wk[i] * std::abs(fv[i]);
  }
  const cplx mean = 0.5 * rk;
  double asc = 0;
  for (int i = 0; i < 15; ++i) asc += g.wk[i] * std::abs(fv[i] - mean);
  const double ahl = std::abs(hl);
  return {a, b, rk * hl, gk::scale_err(std::abs((rk - rg) * hl), asc * ahl), l1 * ahl, id};
}

// pairwise sum in id order so the result does not depend on refinement history
template <class P>
void pairwise_total(std::vector<P>& live, QuadResult& r) {
  std::sort(live.begin(), live.end(), [](const P& x, const P& y) { return x.id < y.id; });
  std::vector<cplx> v(live.size());
  for (size_t i = 0; i < live.size(); ++i) v[i] = live[i].val;
  while (v.size() > 1) {
    std::vector<cplx> w((v.size() + 1) / 2);
    for (size_t i = 0; i < w.size(); ++i) w[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : cplx{});
    v.swap(w);
  }
  r.value = v.empty() ? cplx{} : v[0];
  r.err = 0;
  r.l1 = 0;
  for (auto& p : live) {
    r.err += p.err;
    r.l1 += p.l1;
  }
  r.pieces = int(live.size());
}
}  // namespace detail

// Globally adaptive integral of f over [a,b]; interior breakpoints seed the partition.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, const QuadOptions& opt = {},
                        const std::vector<double>& breaks = {}) {
  QuadResult r;
  if (a == b) return r;
  std::vector<double> pts{a};
  for (double x : breaks)
    if ((x - a) * (x - b) < 0) pts.push_back(x);
  pts.push_back(b);
  if (a < b)
    std::sort(pts.begin(), pts.end());
  else
    std::sort(pts.begin(), pts.end(), std::greater<>());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<detail::Piece1> heap;
  int next_id = 0;
  const int np = opt.kronrod == 15 ? 15 : 21;
  auto piece = [&](double x0, double x1) {
    return np == 15 ? detail::gk15(f, x0, x1, next_id++) : detail::gk21(f, x0, x1, next_id++);
  };
  cplx total{};
  double err = 0, l1 = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    auto p = piece(pts[i], pts[i + 1]);
    r.evals += np;
    total += p.val;
    err += p.err;
    l1 += p.l1;
    heap.push(p);
  }
  auto tol = [&] { return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), opt.l1_tol * l1}); };
  while (err > tol()) {
    if (int(heap.size()) >= opt.max_pieces) {
      r.status = QuadStatus::ToleranceNotReached;
      break;
    }
    auto p = heap.top();
    const double m = 0.5 * (p.a + p.b);
    if (m == p.a || m == p.b) {
      r.status = QuadStatus::ToleranceNotReached;
      break;
    }
    heap.pop();
    auto l = piece(p.a, m);
    auto q = piece(m, p.b);
    r.evals += 2 * np;
    total += l.val + q.val - p.val;
    err += l.err + q.err - p.err;
    l1 += l.l1 + q.l1 - p.l1;
    heap.push(l);
    heap.push(q);
  }
  std::vector<detail::Piece1> live;
  live.reserve(heap.size());
  while (!heap.empty()) {
    live.push_back(heap.top());
    heap.pop();
  }
  detail::pairwise_total(live, r);
  return r;
}

struct Rect {
  double x0, x1, y0, y1;
};

namespace detail {
struct Cell {
  Rect r;
  cplx val;
  double err, l1;
  int split_dir;  // 0: x, 1: y
  int id;
  bool operator<(const Cell& o) const { return err < o.err; }
};

template <class F>
Cell gk15x15(F& f, const Rect& R, int id) {
  const auto& g = gk::rule15;
  const double cx = 0.5 * (R.x0 + R.x1), hx = 0.5 * (R.x1 - R.x0);
  const double cy = 0.5 * (R.y0 + R.y1), hy = 0.5 * (R.y1 - R.y0);
  cplx kk{}, gg{}, gk_{}, kg{};
  double l1 = 0;
  cplx fv[15][15];
  for (int i = 0; i < 15; ++i) {
    const double x = cx + hx * g.x[i];
    for (int j = 0; j < 15; ++j) fv[i][j] = f(x, cy + hy * g.x[j]);
  }
  for (int i = 0; i < 15; ++i) {
    cplx rowk{}, rowg{};
    double rowl = 0;
    for (int j = 0; j < 15; ++j) {
      rowk += g.wk[j] * fv[i][j];
      rowg += g.wg[j] * fv[i][j];
      rowl += g.wk[j] * std::abs(fv[i][j]);
    }
    kk += g.wk[i] * rowk;
    gg += g.wg[i] * rowg;
    gk_ += g.wg[i] * rowk;  // Gauss in x, Kronrod in y
    kg += g.wk[i] * rowg;
    l1 += g.wk[i] * rowl;
  }
  const cplx mean = 0.25 * kk;
  double asc = 0;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) asc += g.wk[i] * g.wk[j] * std::abs(fv[i][j] - mean);
  const double area = std::abs(hx * hy);
  Cell c;
  c.r = R;
  c.val = kk * hx * hy;
  c.err = gk::scale_err(std::abs(kk - gg) * area, asc * area);
  c.l1 = l1 * area;
  c.split_dir = std::abs(kk - gk_) >= std::abs(kk - kg) ? 0 : 1;
  c.id = id;
  return c;
}
}  // namespace detail

// Globally adaptive 2D integral over a rectangle, pre-split into nx x ny cells.
// status OscillationLimit when the cell budget runs out.
template <class F>
QuadResult integrate_2d(F&& f, const Rect& R, const QuadOptions& opt = {}, int nx = 1, int ny = 1) {
  QuadResult r;
  std::priority_queue<detail::Cell> heap;
  int next_id = 0;
  cplx total{};
  double err = 0, l1 = 0;
  const double dx = (R.x1 - R.x0) / nx, dy = (R.y1 - R.y0) / ny;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Rect c{R.x0 + i * dx, i + 1 == nx ? R.x1 : R.x0 + (i + 1) * dx, R.y0 + j * dy,
             j + 1 == ny ? R.y1 : R.y0 + (j + 1) * dy};
      auto cell = detail::gk15x15(f, c, next_id++);
      r.evals += 225;
      total += cell.val;
      err += cell.err;
      l1 += cell.l1;
      heap.push(cell);
    }
  auto tol = [&] { return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), opt.l1_tol * l1}); };
  while (err > tol()) {
    if (int(heap.size()) >= opt.max_pieces) {
      r.status = QuadStatus::OscillationLimit;
      break;
    }
    auto c = heap.top();
    heap.pop();
    Rect a = c.r, b = c.r;
    if (c.split_dir == 0) {
      const double m = 0.5 * (c.r.x0 + c.r.x1);
      a.x1 = m;
      b.x0 = m;
    } else {
      const double m = 0.5 * (c.r.y0 + c.r.y1);
      a.y1 = m;
      b.y0 = m;
    }
    auto ca = detail::gk15x15(f, a, next_id++);
    auto cb = detail::gk15x15(f, b, next_id++);
    r.evals += 450;
    total += ca.val + cb.val - c.val;
    err += ca.err + cb.err - c.err;
    l1 += ca.l1 + cb.l1 - c.l1;
    heap.push(ca);
    heap.push(cb);
  }
  std::vector<detail::Cell> live;
  live.reserve(heap.size());
  while (!heap.empty()) {
    live.push_back(heap.top());
    heap.pop();
  }
  detail::pairwise_total(live, r);
  return r;
}

// Piecewise-straight contour; decay/truncation is the caller's business.
struct Path {
  std::vector<cplx> vertices;
  static Path segment(cplx a, cplx b) { return Path{{a, b}}; }
  // the line z0 + dir*s, s in [-L, L], oriented along dir
  static Path line(cplx z0, cplx dir, double L) {
    const cplx d = dir / std::abs(dir);
    return Path{{z0 - L * d, z0, z0 + L * d}};
  }
};

template <class F>
QuadResult contour_integral_1d(F&& f, const Path& path, const QuadOptions& opt = {}) {
  QuadResult r;
  for (size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    const cplx a = path.vertices[k], d = path.vertices[k + 1] - a;
    auto g = [&](double s) { return f(a + s * d) * d; };
    r += integrate_1d(g, 0.0, 1.0, opt);
  }
  return r;
}

}  // namespace oscint
