#pragma once

#include <array>
#include <utility>

#include "adr/geometry.hpp"
#include "adr/hull.hpp"

namespace adr {

/// Construction scalars of the smoothed nonagons: the contact-segment frame
/// angles eta_i, half-lengths h_i, apex distance tau and the arc parameter
/// angles t1 < t2.
struct NonagonParams {
  enum class Kind { Equilateral, Isosceles };
  Kind kind = Kind::Equilateral;
  double D = 0.0;
  double tau = 0.0;
  std::array<double, 3> eta{};
  std::array<double, 3> h_side{};
  double t1 = 0.0;
  double t2 = 0.0;
  std::array<Point2, 3> A{};
  std::array<Point2, 3> B{};
  std::array<Point2, 3> M{};
};

/// n-dimensional two-cap specification: dimension n >= 2, inradius r,
/// diameter D > 2r.
struct NCapSpec {
  int n = 2;
  double r = 1.0;
  double D = 0.0;
};

inline constexpr double kTwoSqrt3 = 3.4641016151377543864;  // 2*sqrt(3)

/// Hull of the ball B(0, r) and the points (+-D/2, 0); the area minimizer.
ArcGon two_cap_body(double r, double D);

/// r*sqrt(D^2-4r^2) + r^2*(pi - 2*arccos(2r/D)), valid for D >= 2r.
double two_cap_area(double r, double D);

/// Minimal volume in dimension n:
/// 2*w_{n-1} r^n Int_{arccos(2r/D)}^{pi/2} sin^n t dt
///   + w_{n-1} r^{n-1} (D^2-4r^2)^{(n+1)/2} / (n D^n),
/// with the sin-power integral by its exact recurrence and w_{n-1} the unit
/// (n-1)-ball volume via log-Gamma.
double two_cap_volume_nd(const NCapSpec& spec);

/// Volume of the unit ball in dimension k.
double unit_ball_volume(int k);

/// Symmetric spherical slice: disk of radius D/2 intersected with the strip
/// |y| <= 1; requires D >= 2 (D = 2 gives the unit disk).
ArcGon slice(double D);

/// sqrt(D^2-4) + (D^2/2)*arcsin(2/D), valid for D >= 2.
double slice_area(double D);

/// Smoothed regular nonagon inscribed in the equilateral triangle of
/// inradius 1: three contact segments and six arcs of radius D/2 arranged in
/// antipodal pairs. Valid for D in (2, 2*sqrt(3)).
std::pair<NonagonParams, ArcGon> nonagon_E(double D);

/// (3/2) D^2 (pi/3 - t1) + (3 sqrt(3)/2)(sqrt(D^2-3) - 1), t1 = arccos(sqrt(3)/D).
double nonagon_E_area(double D);

/// Isosceles-triangle analogue: three contact segments and four arcs of
/// radius D/2. Valid for D in (2, 2*sqrt(3)].
std::pair<NonagonParams, ArcGon> nonagon_C(double D);

/// (tau/(tau-2)) sqrt(D^2-tau^2) + (D^2/2)(t2-t1), evaluated through the
/// h = tau-2 substitution which is finite at the tau -> 2 endpoint.
double nonagon_C_area(double D);

/// Cubic -tau^3 + (D^2/2+5)tau^2 - (2D^2+4)tau + D^2 whose unique root in
/// [2,3] is the nonagon_C construction parameter.
double nonagon_C_cubic(double D, double tau);
double nonagon_C_tau(double D);

/// Diameter at which the nonagon and slice areas cross (about 2.3888);
/// located by bisection of nonagon_E_area - slice_area.
double d_star();

/// pi - 3*arccos(sqrt(3)/D) - arcsin(2/D): carries the sign of
/// d/dD (|K_E| - |K_S|) on [2, 2*sqrt(3)].
double g_crossover(double D);

/// Analytic derivative of g_crossover; changes sign exactly once, at
/// D = sqrt(96/23).
double g_crossover_deriv(double D);

/// P(X) = X^3 - ((D^2-1)/4) X^2 - X/2 + 1/4.
double two_zone_polynomial(double D, double X);

/// Certified maximum of P over [1/2, 1] (endpoints plus any interior
/// stationary points of the cubic).
double two_zone_max_on_half_one(double D);

/// True when P has no root on [1/2, 1], i.e. the certified maximum is negative.
bool no_root_in_half_one(double D);

/// Root tau of the cubic, with the identity D^2 = tau * g(tau),
/// g(2+h) = 2 + h/(1-h^2/2), asserted to 1e-9.
double tau_change_of_variable(double D);

namespace detail {

/// Plain bisection: f must change sign over [lo, hi]; returns the midpoint of
/// the final bracket of width <= tol.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw std::runtime_error("bisect: no sign change in bracket");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

}  // namespace adr
