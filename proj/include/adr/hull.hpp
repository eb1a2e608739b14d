#pragma once

#include <span>

#include "adr/geometry.hpp"
#include "adr/support.hpp"

namespace adr {

struct Disk {
  Point2 center;
  double radius = 0.0;
};

/// Exact convex hull of points and disks as an arcgon (disk arcs joined by
/// common tangent segments). Throws on degenerate input (empty interior).
ArcGon convex_hull(std::span<const Point2> points, std::span<const Disk> disks);

/// Monotone-chain hull of a point set; throws if fewer than 3 extreme points.
Polygon convex_hull_points(std::vector<Point2> points);

/// Minkowski combination t*a + (1-t)*b computed in support form
/// h_t = t*h_a + (1-t)*h_b and reconstructed as the intersection of the
/// sampled tangent half-planes (a circumscribed polygon, Hausdorff distance
/// O(n^-2) from the true combination away from flat boundary pieces).
ArcGon minkowski_interpolate(const ArcGon& a, const ArcGon& b, double t, int n_angles = 4096);

/// Exact Minkowski combination sa*a + sb*b (sa, sb >= 0, sa + sb > 0):
/// boundary pieces merged by outward normal angle; overlapping arc normals
/// add radii, flat pieces stay flat, so inradius contacts and diametral
/// chords are preserved exactly.
ArcGon minkowski_sum(const ArcGon& a, double sa, const ArcGon& b, double sb);

/// Pointwise support dominance h_b <= h_a + tol on a sampled grid
/// (certifies b inside a).
bool support_dominates(const ArcGon& a, const ArcGon& b, int n_angles = 1024, double tol = 1e-9);

/// Steiner symmetrization with respect to the line through the origin at
/// angle axis_angle: every chord perpendicular to the axis is recentered on
/// it. Slices at all vertex abscissae, so area is preserved exactly.
Polygon steiner_symmetrize(const Polygon& poly, double axis_angle);

/// Exact polygon diameter by rotating calipers over antipodal vertex pairs.
double polygon_diameter(const Polygon& poly);

/// Exact polygon Chebyshev center from the edge-line constraints.
InradiusResult polygon_inradius(const Polygon& poly);

/// Hausdorff distance between two convex polygons.
double hausdorff(const Polygon& a, const Polygon& b);

}  // namespace adr
