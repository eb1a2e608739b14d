#include "adr/hull.hpp"

#include <algorithm>
#include <limits>

namespace adr {

namespace {

// Support of disk i in direction theta.
double disk_support(const Disk& d, double theta) {
  return dot(d.center, unit_dir(theta)) + d.radius;
}

// First angle in (after, after + 2*pi] at which disk j overtakes disk i:
// (ci - cj).u = rj - ri has up to two roots per period; keep those where j
// is rising relative to i.
double next_crossover(const Disk& di, const Disk& dj, double after) {
  Point2 d = di.center - dj.center;
  double L = norm(d);
  double delta = dj.radius - di.radius;
  if (L < 1e-15 || std::abs(delta) > L) return std::numeric_limits<double>::infinity();
  double phi = std::atan2(d.y, d.x);
  double acosv = std::acos(std::clamp(delta / L, -1.0, 1.0));
  double best = std::numeric_limits<double>::infinity();
  for (double root : {phi + acosv, phi - acosv}) {
    // j overtakes i only where d/dtheta[(cj - ci).u] = cross(d, u) > 0
    Point2 u = unit_dir(root);
    if (cross(d, u) <= 1e-12 * std::max(L, 1.0)) continue;
    double t = wrap_from(root, after);
    if (t < 1e-12) t += kTwoPi;
    best = std::min(best, after + t);
  }
  return best;
}

}  // namespace

ArcGon convex_hull(std::span<const Point2> points, std::span<const Disk> disks) {
  std::vector<Disk> all;
  all.reserve(points.size() + disks.size());
  for (Point2 p : points) all.push_back({p, 0.0});
  for (const Disk& d : disks) {
    if (!(d.radius >= 0.0)) throw std::invalid_argument("convex_hull: negative disk radius");
    all.push_back(d);
  }
  if (all.empty()) throw std::invalid_argument("convex_hull: empty input");

  // Drop disks contained in another disk (|ci-cj| <= rj - ri).
  std::vector<Disk> live;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < all.size() && !contained; ++j) {
      if (i == j) continue;
      double sep = dist(all[i].center, all[j].center);
      double dr = all[j].radius - all[i].radius;
      if (sep < dr - 1e-15 || (sep <= dr + 1e-15 && (dr > 1e-15 || j < i))) contained = true;
    }
    if (!contained) live.push_back(all[i]);
  }
  if (live.empty()) throw std::invalid_argument("convex_hull: degenerate input");

  if (live.size() == 1) {
    const Disk& d = live[0];
    if (d.radius <= 0.0) throw std::invalid_argument("convex_hull: hull has empty interior");
    std::vector<BoundaryPiece> quads;
    for (int q = 0; q < 4; ++q)
      quads.push_back(Arc{d.center, d.radius, q * kPi / 2.0, (q + 1) * kPi / 2.0});
    return ArcGon(std::move(quads));
  }

  bool any_round = std::any_of(live.begin(), live.end(), [](const Disk& d) { return d.radius > 0.0; });
  if (!any_round) {
    std::vector<Point2> pts;
    pts.reserve(live.size());
    for (const Disk& d : live) pts.push_back(d.center);
    Polygon poly = convex_hull_points(std::move(pts));  // throws when collinear
    return to_arcgon(poly);
  }

  // Walk the upper envelope of f_i(theta) = c_i.u + r_i over a full turn.
  const int n = static_cast<int>(live.size());
  auto argmax_at = [&](double th) {
    Point2 u = unit_dir(th);
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double v = disk_support(live[static_cast<std::size_t>(i)], th);
      // ties broken by the support derivative cross(u, c_i), so the winner
      // is the disk that stays on top just after th
      double dv = cross(u, live[static_cast<std::size_t>(i)].center);
      if (v > bv + 1e-14 || (v > bv - 1e-14 && dv > cross(u, live[static_cast<std::size_t>(best)].center))) {
        bv = std::max(bv, v);
        best = i;
      }
    }
    return best;
  };

  const double theta0 = 1e-3;  // generic start angle, avoids axis-aligned ties
  int cur = argmax_at(theta0);
  const int start = cur;
  double theta = theta0;
  std::vector<BoundaryPiece> pieces;
  for (int guard = 0; guard < 8 * n + 8; ++guard) {
    double tnext = theta0 + kTwoPi;
    int jnext = -1;
    for (int j = 0; j < n; ++j) {
      if (j == cur) continue;
      double t = next_crossover(live[static_cast<std::size_t>(cur)], live[static_cast<std::size_t>(j)], theta);
      if (t < tnext - 1e-13) {
        tnext = t;
        jnext = j;
      }
    }
    const bool closing = jnext < 0 || tnext >= theta0 + kTwoPi - 1e-13;
    double tstop = closing ? theta0 + kTwoPi : tnext;

    const Disk& dc = live[static_cast<std::size_t>(cur)];
    if (dc.radius > 0.0 && tstop - theta > 1e-13) {
      // split arcs longer than a half turn so the sweep stays in (0, 2*pi)
      double span = tstop - theta;
      int parts = span > kPi ? 2 : 1;
      for (int q = 0; q < parts; ++q)
        pieces.push_back(Arc{dc.center, dc.radius, theta + span * q / parts, theta + span * (q + 1) / parts});
    }
    if (closing) break;

    const Disk& dn = live[static_cast<std::size_t>(jnext)];
    Point2 pc = dc.center + dc.radius * unit_dir(tnext);
    Point2 pn = dn.center + dn.radius * unit_dir(tnext);
    if (dist(pc, pn) > 1e-13) pieces.push_back(Segment{pc, pn});
    cur = jnext;
    theta = tnext;
  }
  if (cur != start)
    throw std::runtime_error("convex_hull: envelope walk did not close");
  if (pieces.size() < 2) throw std::invalid_argument("convex_hull: hull has empty interior");
  try {
    return ArcGon(std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("convex_hull: degenerate hull (") + e.what() + ")");
  }
}

Polygon convex_hull_points(std::vector<Point2> points) {
  if (points.size() < 3) throw std::invalid_argument("convex_hull_points: needs >= 3 points");
  std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(), [](Point2 a, Point2 b) {
                 return a.x == b.x && a.y == b.y;
               }),
               points.end());
  const std::size_t n = points.size();
  if (n < 3) throw std::invalid_argument("convex_hull_points: degenerate point set");
  std::vector<Point2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(h[k - 1] - h[k - 2], points[i] - h[k - 1]) <= 0) --k;
    h[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(h[k - 1] - h[k - 2], points[i] - h[k - 1]) <= 0) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);
  return Polygon(std::move(h));  // throws when all extreme points are collinear
}

ArcGon minkowski_interpolate(const ArcGon& a, const ArcGon& b, double t, int n_angles) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("minkowski_interpolate: t outside [0,1]");
  const auto ha = detail::sample_support(a, n_angles);
  const auto hb = detail::sample_support(b, n_angles);
  const double dth = kTwoPi / n_angles;

  // Vertices of the circumscribed polygon: intersections of consecutive
  // tangent lines x.u_k = h_k. Around a flat edge of the body many lines
  // pass through the same corner, so their pairwise intersections cluster
  // within fp noise ~eps/sin(dth); merge anything closer than 1e-7*scale so
  // the surviving edges have trustworthy directions.
  const double sd = std::sin(dth);
  double scale = 1.0;
  for (int k = 0; k < n_angles; ++k)
    scale = std::max({scale, std::abs(ha[static_cast<std::size_t>(k)]),
                      std::abs(hb[static_cast<std::size_t>(k)])});
  const double merge_tol = 1e-7 * scale;
  std::vector<Point2> verts;
  verts.reserve(static_cast<std::size_t>(n_angles));
  for (int k = 0; k < n_angles; ++k) {
    int k1 = (k + 1) % n_angles;
    double h0 = t * ha[static_cast<std::size_t>(k)] + (1.0 - t) * hb[static_cast<std::size_t>(k)];
    double h1 = t * ha[static_cast<std::size_t>(k1)] + (1.0 - t) * hb[static_cast<std::size_t>(k1)];
    Point2 u0 = unit_dir(k * dth), u1 = unit_dir(k1 * dth);
    Point2 v{(h0 * u1.y - h1 * u0.y) / sd, (h1 * u0.x - h0 * u1.x) / sd};
    if (verts.empty() || dist(verts.back(), v) > merge_tol) verts.push_back(v);
  }
  while (verts.size() > 1 && dist(verts.front(), verts.back()) <= merge_tol) verts.pop_back();
  if (verts.size() < 3) throw std::invalid_argument("minkowski_interpolate: degenerate reconstruction");
  return to_arcgon(Polygon(std::move(verts)));
}

namespace {

// Cyclic profile of a scaled convex boundary over the outward-normal angle:
// consecutive intervals [bounds[i], bounds[i+1]) each supported by a circle
// (center, radius); corners are radius-0 entries. Interval 0 starts at
// absolute angle `origin`.
struct NormalProfile {
  std::vector<double> bounds;   // ascending, bounds[0] = 0, relative to origin
  std::vector<Point2> centers;
  std::vector<double> radii;
  double origin = 0.0;

  std::size_t size() const { return bounds.size(); }
  Point2 eval(std::size_t i, double abs_angle) const {
    return centers[i] + radii[i] * unit_dir(abs_angle);
  }
};

double piece_normal_start(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    Point2 d = s->b - s->a;
    return std::atan2(-d.x, d.y);
  }
  return std::get<Arc>(p).a0;
}

NormalProfile make_profile(const ArcGon& body, double scale_factor) {
  const auto& ps = body.pieces();
  const std::size_t m = ps.size();
  const double base = piece_normal_start(ps[0]);

  std::vector<double> rel;     // interval starts relative to base
  std::vector<Point2> cs;
  std::vector<double> rs;
  double cum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (const auto* arc = std::get_if<Arc>(&ps[i])) {
      rel.push_back(cum);
      cs.push_back(scale_factor * arc->center);
      rs.push_back(scale_factor * arc->radius);
      cum += arc->sweep();
    }
    double sweep_i = std::holds_alternative<Arc>(ps[i]) ? std::get<Arc>(ps[i]).sweep() : 0.0;
    double gap = adr::detail::forward_gap(piece_normal_start(ps[i]) + sweep_i,
                                          piece_normal_start(ps[(i + 1) % m]));
    if (i + 1 == m) gap = kTwoPi - cum;
    rel.push_back(cum);
    cs.push_back(scale_factor * piece_end(ps[i]));
    rs.push_back(0.0);
    cum += gap;
  }

  // rotate the cyclic list so interval 0 contains absolute angle 0
  const double cut = wrap_from(0.0, base);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rel.size(); ++i)
    if (rel[i] <= cut + 1e-15) k = i;

  NormalProfile out;
  out.origin = 0.0;
  const std::size_t n = rel.size();
  out.bounds.reserve(n + 1);
  out.centers.reserve(n);
  out.radii.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (k + i) % n;
    double start = i == 0 ? 0.0 : wrap_from(rel[j] - cut, 0.0);
    if (i > 0 && start >= kTwoPi - 1e-15) continue;  // wrapped back onto the cut
    if (i > 0 && start <= out.bounds.back() + 1e-15) {
      // zero-width interval (tangential junction): the later state wins
      out.centers.back() = cs[j];
      out.radii.back() = rs[j];
      continue;
    }
    out.bounds.push_back(start);
    out.centers.push_back(cs[j]);
    out.radii.push_back(rs[j]);
  }
  return out;
}

}  // namespace

ArcGon minkowski_sum(const ArcGon& a, double sa, const ArcGon& b, double sb) {
  if (!(sa >= 0.0) || !(sb >= 0.0) || sa + sb <= 0.0)
    throw std::invalid_argument("minkowski_sum: weights must be nonnegative, not both zero");
  if (sa == 0.0) return scale(b, sb);
  if (sb == 0.0) return scale(a, sa);

  NormalProfile pa = make_profile(a, sa);
  NormalProfile pb = make_profile(b, sb);

  double scale_len = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) scale_len = std::max(scale_len, norm(pa.centers[i]) + pa.radii[i]);
  for (std::size_t i = 0; i < pb.size(); ++i) scale_len = std::max(scale_len, norm(pb.centers[i]) + pb.radii[i]);
  const double len_tol = 1e-12 * std::max(scale_len, 1.0);

  std::vector<BoundaryPiece> pieces;
  std::size_t ia = 0, ib = 0;
  double theta = 0.0;
  auto upper = [](const NormalProfile& p, std::size_t i) {
    return i + 1 < p.size() ? p.bounds[i + 1] : kTwoPi;
  };
  for (;;) {
    const double na = upper(pa, ia), nb = upper(pb, ib);
    const double next = std::min(na, nb);
    const double r_sum = pa.radii[ia] + pb.radii[ib];
    if (r_sum > 0.0 && next - theta > 1e-12)
      pieces.push_back(Arc{pa.centers[ia] + pb.centers[ib], r_sum, theta, next});
    // support point just before vs just after the breakpoint; a jump is a
    // flat piece of either summand (of both: the lengths add)
    const Point2 before = pa.eval(ia, next) + pb.eval(ib, next);
    const bool closing = next >= kTwoPi - 1e-15;
    std::size_t ja = ia, jb = ib;
    if (na <= next + 1e-15) ja = closing ? 0 : ia + 1;
    if (nb <= next + 1e-15) jb = closing ? 0 : ib + 1;
    const Point2 after = pa.eval(ja, next) + pb.eval(jb, next);
    if (dist(before, after) > len_tol) pieces.push_back(Segment{before, after});
    if (closing) break;
    ia = ja;
    ib = jb;
    theta = next;
  }
  return ArcGon(std::move(pieces));
}

bool support_dominates(const ArcGon& a, const ArcGon& b, int n_angles, double tol) {
  const double dth = kTwoPi / n_angles;
  for (int k = 0; k < n_angles; ++k) {
    double th = k * dth;
    if (support(b, th) > support(a, th) + tol) return false;
  }
  return true;
}

Polygon steiner_symmetrize(const Polygon& poly, double axis_angle) {
  const double c = std::cos(-axis_angle), s = std::sin(-axis_angle);
  std::vector<Point2> v;
  v.reserve(poly.size());
  for (Point2 p : poly.vertices()) v.push_back({c * p.x - s * p.y, s * p.x + c * p.y});

  std::vector<double> xs;
  xs.reserve(v.size());
  for (Point2 p : v) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) throw std::invalid_argument("steiner_symmetrize: degenerate polygon");

  // Chord length at abscissa x: upper(x) - lower(x) over the edge chains.
  auto chord = [&](double x) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      Point2 a = v[i], b = v[(i + 1) % n];
      if ((a.x - x) * (b.x - x) > 0) continue;
      if (a.x == b.x) {
        if (a.x == x) { lo = std::min({lo, a.y, b.y}); hi = std::max({hi, a.y, b.y}); }
        continue;
      }
      double y = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    return hi >= lo ? hi - lo : 0.0;
  };

  std::vector<Point2> out;
  for (double x : xs) {
    double len = chord(x);
    if (len > 0) out.push_back({x, -0.5 * len});
    else out.push_back({x, 0.0});
  }
  for (std::size_t i = xs.size(); i-- > 0;) {
    double len = chord(xs[i]);
    if (len > 0) out.push_back({xs[i], 0.5 * len});
  }
  // drop consecutive duplicates
  std::vector<Point2> cleaned;
  for (Point2 p : out)
    if (cleaned.empty() || dist(cleaned.back(), p) > 1e-15) cleaned.push_back(p);
  while (cleaned.size() > 1 && dist(cleaned.front(), cleaned.back()) <= 1e-15) cleaned.pop_back();

  const double cb = std::cos(axis_angle), sb = std::sin(axis_angle);
  for (Point2& p : cleaned) p = {cb * p.x - sb * p.y, sb * p.x + cb * p.y};
  return Polygon(std::move(cleaned));
}

double polygon_diameter(const Polygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  if (n == 3)
    return std::max({dist(v[0], v[1]), dist(v[1], v[2]), dist(v[2], v[0])});

  // Rotating calipers over antipodal pairs.
  auto next = [&](std::size_t i) { return (i + 1) % n; };
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Point2 e = v[next(i)] - v[i];
    while (cross(e, v[next(j)] - v[j]) > 0) j = next(j);
    best = std::max({best, dist(v[i], v[j]), dist(v[next(i)], v[j])});
    // handle parallel edge pairs
    if (cross(e, v[next(j)] - v[j]) == 0.0)
      best = std::max({best, dist(v[i], v[next(j)]), dist(v[next(i)], v[next(j)])});
  }
  return best;
}

InradiusResult polygon_inradius(const Polygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  std::vector<double> ux, uy, b;
  std::vector<double> ang;
  ux.reserve(n); uy.reserve(n); b.reserve(n); ang.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = v[i], q = v[(i + 1) % n];
    Point2 d = q - a;
    double len = norm(d);
    if (len <= 0) continue;
    Point2 nrm{d.y / len, -d.x / len};  // outward for CCW
    ux.push_back(nrm.x);
    uy.push_back(nrm.y);
    b.push_back(dot(nrm, a));
    ang.push_back(std::atan2(nrm.y, nrm.x));
  }
  if (b.size() < 3) throw std::invalid_argument("polygon_inradius: degenerate polygon");
  auto lp = detail::chebyshev_lp(ux, uy, b);
  return {lp.t, {lp.cx, lp.cy}};
}

namespace {

double point_to_polygon(Point2 p, const Polygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = v[i], b = v[(i + 1) % n];
    Point2 d = b - a;
    if (cross(d, p - a) < 0) inside = false;
    double t = std::clamp(dot(p - a, d) / norm2(d), 0.0, 1.0);
    best = std::min(best, dist(p, a + t * d));
  }
  return inside ? 0.0 : best;
}

}  // namespace

double hausdorff(const Polygon& a, const Polygon& b) {
  double best = 0.0;
  for (Point2 p : a.vertices()) best = std::max(best, point_to_polygon(p, b));
  for (Point2 p : b.vertices()) best = std::max(best, point_to_polygon(p, a));
  return best;
}

}  // namespace adr
