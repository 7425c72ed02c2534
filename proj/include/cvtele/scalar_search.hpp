#pragma once

#include <algorithm>
#include <cmath>

#include "cvtele/errors.hpp"

namespace cvtele {

struct SearchBounds
{
  double lo;
  double hi;
};

//! Minimizer of a convex scalar function on [lo, hi].
//!
//! Golden-section bracketing down to `tol`, followed by up to two
//! three-point parabolic steps. Value comparisons alone stall around
//! sqrt(eps / curvature) in the argument; the parabola through a wide
//! stencil recovers the vertex well below that. A polish step is kept only
//! when it stays inside its stencil.
template <class F>
double minimize_convex(F&& f, SearchBounds bounds, double tol = 1e-11)
{
  double a = bounds.lo;
  double b = bounds.hi;
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("minimize_convex: invalid bracket");
  const double width = b - a;
  if (width <= tol)
    return 0.5 * (a + b);

  const auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw NumericalFailure("minimize_convex: objective is not finite");
    return v;
  };

  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  double x = 0.5 * (a + b);

  for (int step = 0; step < 2; ++step) {
    const double h = std::min({1e-4 * width, x - bounds.lo, bounds.hi - x});
    if (h < 1e-7)
      break;
    const double fm = eval(x - h);
    const double f0 = eval(x);
    const double fp = eval(x + h);
    const double curvature = fp - 2.0 * f0 + fm;
    if (!(curvature > 0.0))
      break;
    const double shift = 0.5 * h * (fm - fp) / curvature;
    if (std::abs(shift) > h)
      break;
    x += shift;
  }
  return x;
}

//! Root of a monotone function on [lo, hi] by bisection; the endpoints must
//! bracket a sign change.
template <class F>
double bisect_root(F&& f, SearchBounds bounds, double tol = 1e-12)
{
  double a = bounds.lo;
  double b = bounds.hi;
  double fa = f(a);
  if (fa == 0.0)
    return a;
  const double fb = f(b);
  if (fb == 0.0)
    return b;
  if ((fa < 0.0) == (fb < 0.0))
    throw NumericalFailure("bisect_root: endpoints do not bracket a root");
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b)
      break;
    const double fm = f(m);
    if (fm == 0.0)
      return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

} // namespace cvtele
