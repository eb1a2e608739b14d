#include "adr/extremal.hpp"

#include <algorithm>
#include <cmath>

namespace adr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

// Arc through p and q on the circle of center c; radius read off p.
Arc arc_between(Point2 p, Point2 q, Point2 c) {
  double r = dist(p, c);
  double a0 = std::atan2(p.y - c.y, p.x - c.x);
  double a1 = a0 + wrap_from(std::atan2(q.y - c.y, q.x - c.x), a0);
  return Arc{c, r, a0, a1};
}

// Center of the circle carrying two antipodal arcs: both midpoint
// computations must agree (the pairs (p1,q1) and (p2,q2) are antipodal).
Point2 antipodal_center(Point2 p1, Point2 q1, Point2 p2, Point2 q2) {
  Point2 c1 = 0.5 * (p1 + q1);
  Point2 c2 = 0.5 * (p2 + q2);
  if (dist(c1, c2) > 1e-9)
    throw std::runtime_error("nonagon: antipodal arc midpoints disagree");
  return 0.5 * (c1 + c2);
}

}  // namespace

double two_cap_area(double r, double D) {
  require(r > 0.0, "two_cap_area: r must be positive");
  require(D >= 2.0 * r, "two_cap_area: D must be >= 2r");
  double s = D * D - 4.0 * r * r;
  return r * std::sqrt(std::max(s, 0.0)) + r * r * (kPi - 2.0 * std::acos(std::min(2.0 * r / D, 1.0)));
}

ArcGon two_cap_body(double r, double D) {
  require(r > 0.0, "two_cap_body: r must be positive");
  require(D > 2.0 * r, "two_cap_body: D must exceed 2r");
  const Point2 tips[2] = {{-D / 2.0, 0.0}, {D / 2.0, 0.0}};
  const Disk disk[1] = {{{0.0, 0.0}, r}};
  return convex_hull(tips, disk);
}

double unit_ball_volume(int k) {
  if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  return std::exp(0.5 * k * std::log(kPi) - std::lgamma(0.5 * k + 1.0));
}

namespace {

// Int_a^b sin^n t dt by the stable downward recurrence
// I_n = [-cos t sin^(n-1) t]_a^b / n + (n-1)/n I_(n-2).
double sin_power_integral(int n, double a, double b) {
  if (n == 0) return b - a;
  if (n == 1) return std::cos(a) - std::cos(b);
  double boundary = (std::cos(a) * std::pow(std::sin(a), n - 1) -
                     std::cos(b) * std::pow(std::sin(b), n - 1)) / n;
  return boundary + (static_cast<double>(n - 1) / n) * sin_power_integral(n - 2, a, b);
}

}  // namespace

double two_cap_volume_nd(const NCapSpec& spec) {
  require(spec.n >= 2, "two_cap_volume_nd: dimension must be >= 2");
  require(spec.r > 0.0, "two_cap_volume_nd: r must be positive");
  require(spec.D >= 2.0 * spec.r, "two_cap_volume_nd: D must be >= 2r");
  const double w = unit_ball_volume(spec.n - 1);
  const double a = std::acos(std::min(2.0 * spec.r / spec.D, 1.0));
  const double cap = 2.0 * w * std::pow(spec.r, spec.n) * sin_power_integral(spec.n, a, kPi / 2.0);
  const double s = std::max(spec.D * spec.D - 4.0 * spec.r * spec.r, 0.0);
  const double cone = w * std::pow(spec.r, spec.n - 1) / (spec.n * std::pow(spec.D, spec.n)) *
                      std::pow(s, 0.5 * (spec.n + 1));
  return cap + cone;
}

double slice_area(double D) {
  require(D >= 2.0, "slice_area: D must be >= 2");
  return std::sqrt(std::max(D * D - 4.0, 0.0)) + 0.5 * D * D * std::asin(std::min(2.0 / D, 1.0));
}

ArcGon slice(double D) {
  require(D >= 2.0, "slice: D must be >= 2");
  const double w2 = D * D / 4.0 - 1.0;
  if (w2 <= 1e-30) {
    // degenerate to the unit disk
    std::vector<BoundaryPiece> quads;
    for (int q = 0; q < 4; ++q) quads.push_back(Arc{{0, 0}, 1.0, q * kPi / 2.0, (q + 1) * kPi / 2.0});
    return ArcGon(std::move(quads));
  }
  const double w = std::sqrt(w2);
  const Point2 br{w, -1.0}, tr{w, 1.0}, tl{-w, 1.0}, bl{-w, -1.0};
  std::vector<BoundaryPiece> pieces;
  pieces.push_back(Segment{bl, br});
  pieces.push_back(arc_between(br, tr, {0, 0}));
  pieces.push_back(Segment{tr, tl});
  pieces.push_back(arc_between(tl, bl, {0, 0}));
  return ArcGon(std::move(pieces));
}

double nonagon_E_area(double D) {
  require(D >= 2.0 && D < kTwoSqrt3, "nonagon_E_area: D must lie in [2, 2*sqrt(3))");
  const double s = std::sqrt(std::max(D * D - 3.0, 0.0));
  const double t1 = std::acos(std::min(std::sqrt(3.0) / D, 1.0));
  const double primary = 1.5 * D * D * (kPi / 3.0 - t1) + 1.5 * std::sqrt(3.0) * (s - 1.0);
  // equivalent (3/4) D^2 (t2 - t1) form, kept as a consistency guard;
  // t2 via atan2 since arcsin(tau/D) is ill-conditioned at D -> 2
  const double tau = 0.5 * (3.0 + s);
  const double t2 = std::atan2(tau, 0.5 * std::sqrt(3.0) * (s - 1.0));
  const double alt = 0.75 * D * D * (t2 - t1) + 1.5 * std::sqrt(3.0) * (s - 1.0);
  if (std::abs(primary - alt) > 1e-12 * std::max(1.0, primary))
    throw std::runtime_error("nonagon_E_area: area forms disagree");
  return primary;
}

std::pair<NonagonParams, ArcGon> nonagon_E(double D) {
  require(D > 2.0 && D < kTwoSqrt3, "nonagon_E: D must lie in (2, 2*sqrt(3))");
  NonagonParams p;
  p.kind = NonagonParams::Kind::Equilateral;
  p.D = D;
  const double s = std::sqrt(D * D - 3.0);
  p.tau = 0.5 * (3.0 + s);
  // h = sqrt(D^2 - tau^2) = (sqrt(3)/2)(sqrt(D^2-3) - 1), cancellation-free
  const double h = 0.5 * std::sqrt(3.0) * (s - 1.0);
  p.eta = {-kPi / 2.0, kPi / 6.0, 5.0 * kPi / 6.0};
  p.h_side = {h, h, h};
  p.t1 = std::acos(std::sqrt(3.0) / D);
  p.t2 = std::atan2(p.tau, h);

  for (int i = 0; i < 3; ++i) {
    Point2 u = unit_dir(p.eta[static_cast<std::size_t>(i)]);
    Point2 t{-u.y, u.x};
    p.A[static_cast<std::size_t>(i)] = u - h * t;
    p.B[static_cast<std::size_t>(i)] = u + h * t;
    p.M[static_cast<std::size_t>(i)] = (1.0 - p.tau) * u;
  }
  const auto &A = p.A, &B = p.B, &M = p.M;

  // Arc circles: three antipodal pairs, centers from midpoint pairs
  //   B1<->M1 with M3<->A3, B2<->M2 with M1<->A1, B3<->M3 with M2<->A2.
  Point2 c1 = antipodal_center(B[0], M[0], M[2], A[2]);
  Point2 c2 = antipodal_center(B[1], M[1], M[0], A[0]);
  Point2 c3 = antipodal_center(B[2], M[2], M[1], A[1]);

  std::vector<BoundaryPiece> pieces;
  pieces.push_back(Segment{A[0], B[0]});
  pieces.push_back(arc_between(B[0], M[2], c1));
  pieces.push_back(arc_between(M[2], A[1], c3));
  pieces.push_back(Segment{A[1], B[1]});
  pieces.push_back(arc_between(B[1], M[0], c2));
  pieces.push_back(arc_between(M[0], A[2], c1));
  pieces.push_back(Segment{A[2], B[2]});
  pieces.push_back(arc_between(B[2], M[1], c3));
  pieces.push_back(arc_between(M[1], A[0], c2));
  return {p, ArcGon(std::move(pieces))};
}

double nonagon_C_cubic(double D, double tau) {
  return -tau * tau * tau + (0.5 * D * D + 5.0) * tau * tau - (2.0 * D * D + 4.0) * tau + D * D;
}

double nonagon_C_tau(double D) {
  require(D > 2.0 && D <= kTwoSqrt3 + 1e-12, "nonagon_C: D must lie in (2, 2*sqrt(3)]");
  // p(2) = 4 - D^2 < 0 and p(3) = 6 - D^2/2 >= 0 on the domain; p is strictly
  // increasing on [2,3] (p'(2) = 4, p'(3) = D^2 - 1, p' concave), so the
  // bracket holds and the root is unique.
  double tau = detail::bisect([&](double t) { return nonagon_C_cubic(D, t); }, 2.0, 3.0, 1e-12);
  // Newton polish to machine accuracy (p' >= 4 on the bracket)
  for (int i = 0; i < 3; ++i) {
    const double p = nonagon_C_cubic(D, tau);
    const double dp = -3.0 * tau * tau + (D * D + 10.0) * tau - (2.0 * D * D + 4.0);
    tau = std::clamp(tau - p / dp, 2.0, 3.0);
  }
  return tau;
}

namespace {

// t2 - t1 = arcsin((1-h) sqrt((2+h)/(2-h))) in the h = tau-2 variable.
double nonagon_C_t2_minus_t1(double h) {
  return std::asin(std::clamp((1.0 - h) * std::sqrt((2.0 + h) / (2.0 - h)), -1.0, 1.0));
}

// sqrt(D^2 - tau^2) through the cubic: h^3 (2+h)/(2-h^2), exact at h -> 0.
double nonagon_C_hbase(double h) {
  return std::pow(h, 1.5) * std::sqrt((2.0 + h) / (2.0 - h * h));
}

}  // namespace

double nonagon_C_area(double D) {
  const double tau = nonagon_C_tau(D);
  const double h = tau - 2.0;
  const double first = (2.0 + h) * std::sqrt((h + 0.5 * h * h) / (1.0 - 0.5 * h * h));
  const double dt = nonagon_C_t2_minus_t1(h);
  // guard: the combined form must agree with the separate t2 - t1, with
  // t2 = atan2(tau, sqrt(D^2-tau^2)) (stable where arcsin(tau/D) is not).
  const double hbase = nonagon_C_hbase(h);
  const double eta = std::asin(0.5 * h);
  if (eta > 0.0) {
    const double t2 = std::atan2(tau, hbase);
    const double t1 = std::asin(std::clamp(hbase / D / std::tan(eta), -1.0, 1.0));
    if (std::abs((t2 - t1) - dt) > 1e-11)
      throw std::runtime_error("nonagon_C_area: t2-t1 forms disagree");
  }
  return first + 0.5 * D * D * dt;
}

std::pair<NonagonParams, ArcGon> nonagon_C(double D) {
  require(D > 2.0 && D <= kTwoSqrt3 + 1e-12, "nonagon_C: D must lie in (2, 2*sqrt(3)]");
  NonagonParams p;
  p.kind = NonagonParams::Kind::Isosceles;
  p.D = D;
  p.tau = nonagon_C_tau(D);
  const double h = p.tau - 2.0;
  const double hbase = nonagon_C_hbase(h);
  const double heq = hbase / h;  // equal-side half-length; -> 0 as h -> 0
  const double eta2 = std::asin(0.5 * h);
  p.eta = {-kPi / 2.0, eta2, kPi - eta2};
  p.h_side = {hbase, heq, heq};
  p.t2 = std::atan2(p.tau, hbase);
  p.t1 = p.t2 - nonagon_C_t2_minus_t1(h);

  for (int i = 0; i < 3; ++i) {
    Point2 u = unit_dir(p.eta[static_cast<std::size_t>(i)]);
    Point2 t{-u.y, u.x};
    p.A[static_cast<std::size_t>(i)] = u - p.h_side[static_cast<std::size_t>(i)] * t;
    p.B[static_cast<std::size_t>(i)] = u + p.h_side[static_cast<std::size_t>(i)] * t;
  }
  const auto &A = p.A, &B = p.B;
  const Point2 M1{0.0, p.tau - 1.0};
  // the other two diametral points sit on the side segments
  p.M = {M1, B[2], A[1]};

  // antipodal endpoint pairing (checked): B2<->B3 with M1<->A1 on one circle,
  // M1<->B1 with A2<->A3 on the other
  for (auto [P, Q] : {std::pair{B[1], B[2]}, {M1, A[0]}, {M1, B[0]}, {A[1], A[2]}})
    if (std::abs(dist(P, Q) - D) > 1e-9)
      throw std::runtime_error("nonagon_C: antipodal pair does not span D");
  Point2 ca = antipodal_center(B[1], B[2], M1, A[0]);
  Point2 cb = antipodal_center(M1, B[0], A[1], A[2]);

  std::vector<BoundaryPiece> pieces;
  pieces.push_back(Segment{A[0], B[0]});
  pieces.push_back(arc_between(B[0], A[1], cb));
  pieces.push_back(Segment{A[1], B[1]});
  pieces.push_back(arc_between(B[1], M1, ca));
  pieces.push_back(arc_between(M1, A[2], cb));
  pieces.push_back(Segment{A[2], B[2]});
  pieces.push_back(arc_between(B[2], A[0], ca));
  return {p, ArcGon(std::move(pieces))};
}

double d_star() {
  // |K_E| - |K_S| is increasing then decreasing on (2, 2*sqrt(3)) with value
  // 0 at D = 2, so it is positive at 2.2 and negative at 3.0; bisect there.
  static const double value = detail::bisect(
      [](double D) { return nonagon_E_area(D) - slice_area(D); }, 2.2, 3.0, 1e-10);
  return value;
}

double g_crossover(double D) {
  require(D >= 2.0 && D <= kTwoSqrt3 + 1e-12, "g_crossover: D must lie in [2, 2*sqrt(3)]");
  return kPi - 3.0 * std::acos(std::min(std::sqrt(3.0) / D, 1.0)) -
         std::asin(std::min(2.0 / D, 1.0));
}

double g_crossover_deriv(double D) {
  require(D > 2.0 && D <= kTwoSqrt3 + 1e-12, "g_crossover_deriv: D must lie in (2, 2*sqrt(3)]");
  return -3.0 * std::sqrt(3.0) / (D * std::sqrt(D * D - 3.0)) + 2.0 / (D * std::sqrt(D * D - 4.0));
}

double two_zone_polynomial(double D, double X) {
  return X * X * X - 0.25 * (D * D - 1.0) * X * X - 0.5 * X + 0.25;
}

double two_zone_max_on_half_one(double D) {
  double best = std::max(two_zone_polynomial(D, 0.5), two_zone_polynomial(D, 1.0));
  // stationary points of the cubic: 3X^2 - ((D^2-1)/2)X - 1/2 = 0
  const double a = 3.0, b = -0.5 * (D * D - 1.0), c = -0.5;
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    for (double x : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
      if (x >= 0.5 && x <= 1.0) best = std::max(best, two_zone_polynomial(D, x));
  }
  return best;
}

bool no_root_in_half_one(double D) { return two_zone_max_on_half_one(D) < 0.0; }

double tau_change_of_variable(double D) {
  const double tau = nonagon_C_tau(D);
  const double h = tau - 2.0;
  const double g = 2.0 + h / (1.0 - 0.5 * h * h);
  if (std::abs(D * D - tau * g) > 1e-9)
    throw std::runtime_error("tau_change_of_variable: identity D^2 = tau*g(tau) violated");
  return tau;
}

}  // namespace adr
