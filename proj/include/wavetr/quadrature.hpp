#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "wavetr/errors.hpp"

namespace wavetr::quad {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae/weights).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Result {
  T value{};
  double error = 0;
  long evals = 0;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& integral, double& error, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T resk = kWgk[7] * fc;
  T resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[(i - 1) / 2] * (f1 + f2);
  }
  evals += 15;
  integral = resk * h;
  error = magnitude(resk - resg) * h;
}

/// Adaptive 1D integration over [a,b], worst-interval bisection, absolute
/// tolerance. Deterministic (fixed subdivision rule, segments summed in
/// spatial order). Throws QuadratureError if wildly unconverged.
template <typename T, typename F>
Result<T> integrate(const F& f, double a, double b, double abs_tol, int max_panels = 2000) {
  struct Seg {
    double error, a, b;
    T value;
  };
  auto worse = [](const Seg& s1, const Seg& s2) {
    if (s1.error != s2.error) return s1.error < s2.error;
    return s1.a > s2.a;
  };
  std::priority_queue<Seg, std::vector<Seg>, decltype(worse)> heap(worse);

  Result<T> res;
  Seg first{0, a, b, T{}};
  gk15(f, a, b, first.value, first.error, res.evals);
  double total_err = first.error;
  heap.push(first);
  int panels = 1;
  while (total_err > abs_tol && panels < max_panels) {
    Seg s = heap.top();
    heap.pop();
    total_err -= s.error;
    const double mid = 0.5 * (s.a + s.b);
    Seg left{0, s.a, mid, T{}};
    Seg right{0, mid, s.b, T{}};
    gk15(f, left.a, left.b, left.value, left.error, res.evals);
    gk15(f, right.a, right.b, right.value, right.error, res.evals);
    total_err += left.error + right.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  if (total_err > 1e3 * abs_tol)
    throw QuadratureError("1D quadrature failed to converge", total_err);

  // Sum segments in spatial order for a reproducible, well-conditioned total.
  std::vector<Seg> segs;
  segs.reserve(static_cast<std::size_t>(heap.size()));
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& s1, const Seg& s2) { return s1.a < s2.a; });
  T total{};
  for (const Seg& s : segs) total += s.value;
  res.value = total;
  res.error = total_err;
  return res;
}

/// Iterated 2D integration over a box. The inner tolerance abs_tol/64 is a
/// practical bound for Gaussian-enveloped integrands, whose effective support
/// is much narrower than the truncation box; the reported error adds the
/// nominal inner contamination on top of the outer estimate.
template <typename T, typename F>
Result<T> integrate_2d(const F& f, double ax, double bx, double ay, double by, double abs_tol,
                       int max_panels_outer = 600, int max_panels_inner = 600) {
  const double inner_tol = abs_tol / 64.0;
  Result<T> res;
  auto outer = [&](double x) -> T {
    auto r = integrate<T>([&](double y) { return f(x, y); }, ay, by, inner_tol, max_panels_inner);
    res.evals += r.evals;
    return r.value;
  };
  auto ro = integrate<T>(outer, ax, bx, 0.75 * abs_tol, max_panels_outer);
  res.value = ro.value;
  res.error = ro.error + 0.25 * abs_tol;
  res.evals += ro.evals;
  return res;
}

/// Iterated 4D integration: outer 2D over (x1,x2), inner 2D over (y1,y2).
template <typename T, typename F>
Result<T> integrate_4d(const F& f, double ax1, double bx1, double ax2, double bx2, double ay1,
                       double by1, double ay2, double by2, double abs_tol) {
  const double inner_tol = abs_tol / 256.0;
  Result<T> res;
  auto outer = [&](double x1, double x2) -> T {
    auto r = integrate_2d<T>([&](double y1, double y2) { return f(x1, x2, y1, y2); }, ay1, by1,
                             ay2, by2, inner_tol, 200, 200);
    res.evals += r.evals;
    return r.value;
  };
  auto ro = integrate_2d<T>(outer, ax1, bx1, ax2, bx2, 0.75 * abs_tol, 300, 300);
  res.value = ro.value;
  res.error = ro.error + 0.25 * abs_tol;
  res.evals += ro.evals;
  return res;
}

}  // namespace wavetr::quad
