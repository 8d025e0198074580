#pragma once

// Closed-form annulus solution of the exterior Bernoulli problem with
// omega = B(0,R): the outer radius C(R,gamma), the harmonic potential, and
// the circular level set. These are the reference quantities the solver and
// the tests are verified against. A 1D radial solver for the penalized
// problem is included as the continuum reference of the relaxed model.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbtopo/vec2.hpp"

namespace fbtopo {

// Outer radius C solving C ln(C) - C ln(R) = -1/gamma, C > R.
// The left side is strictly increasing for C >= R, so a geometrically
// expanded bracket followed by bisection is robust.
inline double bernoulli_radius(double R, double gamma) {
  if (!(R > 0.0) || !(gamma < 0.0))
    throw std::invalid_argument("bernoulli_radius: need R > 0 and gamma < 0");
  const double rhs = -1.0 / gamma;
  auto f = [&](double C) { return C * std::log(C) - C * std::log(R) - rhs; };

  double lo = R * (1.0 + 1e-9);
  double hi = R * std::exp(1.0);
  int expansions = 0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (++expansions > 200)
      throw std::runtime_error("bernoulli_radius: bracket expansion failed");
  }
  // bisect to ULP so downstream identities hold at machine precision
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double C = 0.5 * (lo + hi);
  if (std::abs(f(C)) > 1e-12)
    throw std::runtime_error("bernoulli_radius: residual " +
                             std::to_string(std::abs(f(C))) + " above 1e-12");
  return C;
}

// f(R,gamma)(x) = C*gamma*ln|x| - C*gamma*ln(R) + 1. Harmonic; equals 1 on
// |x| = R and 0 on |x| = C, with radial derivative gamma at |x| = C.
inline double annulus_potential(const Vec2& x, double R, double gamma,
                                double C) {
  const double r = x.norm();
  if (r == 0.0)
    throw std::domain_error("annulus_potential: logarithm singular at 0");
  return C * gamma * std::log(r) - C * gamma * std::log(R) + 1.0;
}

inline double annulus_potential(const Vec2& x, double R, double gamma) {
  return annulus_potential(x, R, gamma, bernoulli_radius(R, gamma));
}

// Level set of B(0,R): positive inside, zero on the boundary.
inline double circle_levelset(const Vec2& x, double R) { return R - x.norm(); }

namespace detail {

inline double smoothed_heaviside_scalar(double y, double beta) {
  if (y < -beta) return 0.0;
  if (y > beta) return 1.0;
  const double t = y / beta;
  return (t - t * t * t / 3.0) * 0.75 + 0.5;
}

// u(Cv) for the radial penalized problem
//   -(1/r)(r u')' + (1/eps) H_beta(1 - r) (u - 1) = 0,  u'(Cv) = gamma,
// discretized by P1 elements in r with weight r (midpoint coefficient,
// trapezoidal penalty mass). Thomas algorithm on the tridiagonal system.
inline double radial_penalized_boundary_value(double Cv, double eps,
                                              double delta, double gamma,
                                              int n) {
  const double hr = Cv / n;
  const double beta = delta + 1e-6;
  std::vector<double> diag(n + 1, 0.0), sub(n, 0.0), sup(n, 0.0),
      rhs(n + 1, 0.0);
  for (int e = 0; e < n; ++e) {
    const double rm = (e + 0.5) * hr;
    const double k = rm / hr;
    const double g = smoothed_heaviside_scalar(1.0 - rm, beta) / eps;
    const double mg = 0.5 * g * rm * hr;
    diag[e] += k + mg;
    diag[e + 1] += k + mg;
    sup[e] -= k;
    sub[e] -= k;
    rhs[e] += mg;
    rhs[e + 1] += mg;
  }
  rhs[n] += gamma * Cv;
  // forward elimination / back substitution
  for (int i = 1; i <= n; ++i) {
    const double w = sub[i - 1] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  double u = rhs[n] / diag[n];
  return u;
}

}  // namespace detail

// Continuum free-boundary radius of the penalized relaxed model with the
// ideal level set psi = 1 - r: the Cv at which the radial solution hits
// u(Cv) = 0. Reference value for convergence studies of the 2D solver; it
// differs from bernoulli_radius(1, gamma) by the (eps, delta) model bias.
inline double penalized_annulus_radius(double gamma, double eps, double delta,
                                       int n = 32768) {
  if (!(gamma < 0.0) || !(eps > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("penalized_annulus_radius: bad parameters");
  auto ub = [&](double Cv) {
    return detail::radial_penalized_boundary_value(Cv, eps, delta, gamma, n);
  };
  double lo = 1.0 + 1e-4, hi = lo;
  double flo = ub(lo);
  int expansions = 0;
  do {
    hi *= 1.5;
    if (++expansions > 100)
      throw std::runtime_error("penalized_annulus_radius: no sign change");
  } while ((ub(hi) > 0.0) == (flo > 0.0));
  for (int it = 0; it < 80 && (hi - lo) > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((ub(mid) > 0.0) == (flo > 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fbtopo
