#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace magnon {

template <std::size_t N>
struct NelderMeadResult {
  std::array<double, N> x{};
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f with the standard reflection / expansion / contraction /
/// shrink moves. Stops when the largest vertex distance from the best vertex
/// drops below `diameter_tol`.
template <std::size_t N>
NelderMeadResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                                const std::array<double, N>& start,
                                const std::array<double, N>& step,
                                double diameter_tol = 1e-8, int max_evaluations = 20000) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> x;
  std::array<double, N + 1> fx;
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  x[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    x[i + 1] = start;
    x[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= N; ++i) fx[i] = eval(x[i]);

  auto combine = [](const Point& a, const Point& b, double t) {
    Point out;
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  NelderMeadResult<N> res;
  while (evals < max_evaluations) {
    std::array<std::size_t, N + 1> order;
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
    std::array<Point, N + 1> xs;
    std::array<double, N + 1> fs;
    for (std::size_t i = 0; i <= N; ++i) {
      xs[i] = x[order[i]];
      fs[i] = fx[order[i]];
    }
    x = xs;
    fx = fs;

    double diameter = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < N; ++k) d2 += (x[i][k] - x[0][k]) * (x[i][k] - x[0][k]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < diameter_tol) {
      res.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += x[i][k] / static_cast<double>(N);

    const Point xr = combine(centroid, x[N], -1.0);
    const double fr = eval(xr);
    if (fr < fx[0]) {
      const Point xe = combine(centroid, x[N], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        x[N] = xe;
        fx[N] = fe;
      } else {
        x[N] = xr;
        fx[N] = fr;
      }
      continue;
    }
    if (fr < fx[N - 1]) {
      x[N] = xr;
      fx[N] = fr;
      continue;
    }
    // contraction, outside if the reflected point beats the worst vertex
    const bool outside = fr < fx[N];
    const Point xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, x[N], 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fx[N])) {
      x[N] = xc;
      fx[N] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      x[i] = combine(x[0], x[i], 0.5);
      fx[i] = eval(x[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i)
    if (fx[i] < fx[best]) best = i;
  res.x = x[best];
  res.f = fx[best];
  res.evaluations = evals;
  return res;
}

}  // namespace magnon
