#pragma once

#include <vector>

#include "adr/geometry.hpp"

namespace adr {

/// Support function h sampled on the uniform angle grid theta_k = 2*pi*k/n.
/// Requires n >= 64 (a power of two), h > 0 everywhere (origin interior) and
/// discrete convexity h[k-1] + h[k+1] >= 2 h[k] cos(2*pi/n) - eps.
struct SupportSamples {
  int n_angles = 0;
  std::vector<double> h;

  static SupportSamples make(std::vector<double> h);  // validates
};

/// Exact support value sup_{p in body} p . u_theta.
double support(const ArcGon& body, double theta);

/// Support point realizing support(body, theta).
Point2 support_point(const ArcGon& body, double theta);

SupportSamples to_support(const ArcGon& body, int n_angles);

/// Area from support samples: 1/2 * integral of (h^2 - h'^2), trapezoid for
/// h^2 and centered differences (h[k+1]-h[k])/dtheta for h' at the midpoint
/// grid. Accuracy O(n^-2) on convex bodies whose boundary kinks fall on grid
/// angles or nowhere.
double support_area(const SupportSamples& s);

struct InradiusResult {
  double r = 0.0;
  Point2 center;
};

/// Maximum distance between two body points, computed as the maximum of
/// antipodal support sums h(theta) + h(theta+pi) on an n_angles grid and
/// polished by golden-section search against the exact support function.
double diameter(const ArcGon& body, int n_angles = 8192);

/// Chebyshev center: maximize t s.t. c.u_k + t <= h(theta_k) over the sampled
/// angles (3-variable LP solved by a dense revised simplex on the dual),
/// then refined against exact piece distances. The returned radius is the
/// exact distance from the returned center to the boundary, hence a certified
/// lower bound on r(K) within r*(2*pi/n)^2/8 of it.
InradiusResult inradius(const ArcGon& body, int n_angles = 8192);

struct BodyMetrics {
  double area = 0.0;
  double diameter = 0.0;
  double inradius = 0.0;
  double x = 0.0;  // 2 r / D
  double y = 0.0;  // pi r^2 / A
};

BodyMetrics measure(const ArcGon& body, int n_angles = 8192);

namespace detail {

/// Support queries in O(log m) per angle: the validated boundary is ordered
/// by outward normal angle, so the supporting piece (or corner vertex) for a
/// direction is found by binary search over the normal intervals.
class SupportEvaluator {
 public:
  explicit SupportEvaluator(const ArcGon& body);

  double operator()(double theta) const;
  Point2 point(double theta) const;

 private:
  struct Entry {
    double start = 0.0;  // interval start, relative to base_
    bool is_arc = false;
    Point2 center_or_vertex;
    double radius = 0.0;
  };
  const Entry& find(double theta, Point2& u) const;

  double base_ = 0.0;
  std::vector<Entry> entries_;
};

/// Raw sampled support values, no SupportSamples invariants enforced.
std::vector<double> sample_support(const ArcGon& body, int n_angles);

/// Dense simplex for: maximize t subject to cx*ux_k + cy*uy_k + t <= b_k.
/// Normals (ux, uy) need not be unit. Returns (cx, cy, t) and the active set.
struct ChebyshevLP {
  double cx = 0, cy = 0, t = 0;
  std::array<int, 3> basis{};
};
ChebyshevLP chebyshev_lp(std::span<const double> ux, std::span<const double> uy,
                         std::span<const double> b);

/// Exact distance from an interior point to the boundary.
double distance_to_boundary(const ArcGon& body, Point2 p);

}  // namespace detail

}  // namespace adr
