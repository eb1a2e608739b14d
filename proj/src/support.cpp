#include "adr/support.hpp"

#include <algorithm>
#include <limits>

namespace adr {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double piece_support(const BoundaryPiece& p, Point2 u, double theta) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    return std::max(dot(s->a, u), dot(s->b, u));
  }
  const auto& a = std::get<Arc>(p);
  double t = wrap_from(theta, a.a0);
  if (t <= a.sweep()) return dot(a.center, u) + a.radius;
  return std::max(dot(a.start(), u), dot(a.end(), u));
}

double normal_start(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    Point2 d = s->b - s->a;
    return std::atan2(-d.x, d.y);
  }
  return std::get<Arc>(p).a0;
}

double normal_sweep(const BoundaryPiece& p) {
  if (std::holds_alternative<Segment>(p)) return 0.0;
  return std::get<Arc>(p).sweep();
}

// Golden-section maximization on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 80) {
  constexpr double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14; ++i) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

double support(const ArcGon& body, double theta) {
  Point2 u = unit_dir(theta);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : body.pieces()) best = std::max(best, piece_support(p, u, theta));
  return best;
}

Point2 support_point(const ArcGon& body, double theta) {
  detail::SupportEvaluator ev(body);
  return ev.point(theta);
}

namespace detail {

SupportEvaluator::SupportEvaluator(const ArcGon& body) {
  const auto& ps = body.pieces();
  const std::size_t m = ps.size();
  base_ = normal_start(ps[0]);
  entries_.reserve(2 * m);
  double cum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (const auto* arc = std::get_if<Arc>(&ps[i])) {
      entries_.push_back({cum, true, arc->center, arc->radius});
      cum += arc->sweep();
    }
    // corner between piece i and piece i+1; the junction vertex supports it
    double gap = adr::detail::forward_gap(normal_start(ps[i]) + normal_sweep(ps[i]),
                                          normal_start(ps[(i + 1) % m]));
    if (i + 1 == m) gap = kTwoPi - cum;  // close the chain exactly
    entries_.push_back({cum, false, piece_end(ps[i])});
    cum += gap;
  }
}

const SupportEvaluator::Entry& SupportEvaluator::find(double theta, Point2& u) const {
  u = unit_dir(theta);
  double t = wrap_from(theta, base_);
  auto it = std::upper_bound(entries_.begin(), entries_.end(), t,
                             [](double v, const Entry& e) { return v < e.start; });
  return it == entries_.begin() ? entries_.back() : *std::prev(it);
}

double SupportEvaluator::operator()(double theta) const {
  Point2 u;
  const Entry& e = find(theta, u);
  return e.is_arc ? dot(e.center_or_vertex, u) + e.radius : dot(e.center_or_vertex, u);
}

Point2 SupportEvaluator::point(double theta) const {
  Point2 u;
  const Entry& e = find(theta, u);
  return e.is_arc ? e.center_or_vertex + e.radius * u : e.center_or_vertex;
}

std::vector<double> sample_support(const ArcGon& body, int n_angles) {
  SupportEvaluator ev(body);
  std::vector<double> h(static_cast<std::size_t>(n_angles));
  const double dth = kTwoPi / n_angles;
  for (int k = 0; k < n_angles; ++k) h[static_cast<std::size_t>(k)] = ev(k * dth);
  return h;
}

}  // namespace detail

SupportSamples SupportSamples::make(std::vector<double> h) {
  const int n = static_cast<int>(h.size());
  if (n < 64 || !power_of_two(n))
    throw std::invalid_argument("support samples: n_angles must be a power of two >= 64");
  double hmax = 0.0;
  for (double v : h) {
    if (!std::isfinite(v)) throw std::invalid_argument("support samples: non-finite value");
    if (!(v > 0.0)) throw std::invalid_argument("support samples: h must be positive (origin interior)");
    hmax = std::max(hmax, v);
  }
  const double c = std::cos(kTwoPi / n);
  const double eps = 1e-9 * hmax;
  for (int k = 0; k < n; ++k) {
    double prev = h[static_cast<std::size_t>((k + n - 1) % n)];
    double next = h[static_cast<std::size_t>((k + 1) % n)];
    if (prev + next < 2.0 * h[static_cast<std::size_t>(k)] * c - eps)
      throw std::invalid_argument("support samples: discrete convexity violated at k=" + std::to_string(k));
  }
  SupportSamples s;
  s.n_angles = n;
  s.h = std::move(h);
  return s;
}

SupportSamples to_support(const ArcGon& body, int n_angles) {
  return SupportSamples::make(detail::sample_support(body, n_angles));
}

double support_area(const SupportSamples& s) {
  const int n = s.n_angles;
  const double dth = kTwoPi / n;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double h0 = s.h[static_cast<std::size_t>(k)];
    double h1 = s.h[static_cast<std::size_t>((k + 1) % n)];
    double hp = (h1 - h0) / dth;
    acc += 0.5 * (h0 * h0 + h1 * h1) - hp * hp;
  }
  return 0.5 * acc * dth;
}

double diameter(const ArcGon& body, int n_angles) {
  if (n_angles < 64 || n_angles % 2 != 0)
    throw std::invalid_argument("diameter: n_angles must be even and >= 64");
  detail::SupportEvaluator ev(body);
  const int half = n_angles / 2;
  const double dth = kTwoPi / n_angles;

  std::vector<double> h(static_cast<std::size_t>(n_angles));
  for (int k = 0; k < n_angles; ++k) h[static_cast<std::size_t>(k)] = ev(k * dth);
  auto width = [&](double th) { return ev(th) + ev(th + kPi); };

  // Discrete antipodal maxima, then polish the leading brackets.
  std::vector<std::pair<double, int>> w(static_cast<std::size_t>(half));
  for (int k = 0; k < half; ++k)
    w[static_cast<std::size_t>(k)] = {h[static_cast<std::size_t>(k)] + h[static_cast<std::size_t>(k + half)], k};
  std::sort(w.begin(), w.end(), std::greater<>());

  double best = w[0].first;
  const int brackets = static_cast<int>(std::min<std::size_t>(8, w.size()));
  for (int i = 0; i < brackets; ++i) {
    int k = w[static_cast<std::size_t>(i)].second;
    best = std::max(best, golden_max(width, (k - 1) * dth, (k + 1) * dth));
  }
  return best;
}

namespace detail {

ChebyshevLP chebyshev_lp(std::span<const double> ux_in, std::span<const double> uy_in,
                         std::span<const double> b_in) {
  const int n0 = static_cast<int>(b_in.size());
  if (n0 < 3) throw std::invalid_argument("chebyshev_lp: needs >= 3 constraints");

  // Append three artificial constraints with normals 120 degrees apart and a
  // right-hand side far beyond any relevant optimum: they form a feasible
  // starting basis for every input and never bind at the real optimum.
  double bmax = 0.0;
  for (double v : b_in) bmax = std::max(bmax, std::abs(v));
  const double far = 1e3 * (bmax + 1.0);
  std::vector<double> ux(ux_in.begin(), ux_in.end());
  std::vector<double> uy(uy_in.begin(), uy_in.end());
  std::vector<double> b(b_in.begin(), b_in.end());
  for (int k = 0; k < 3; ++k) {
    ux.push_back(std::cos(kTwoPi * k / 3.0));
    uy.push_back(std::sin(kTwoPi * k / 3.0));
    b.push_back(far);
  }
  const int n = n0 + 3;

  // Dual: minimize b.lambda s.t. sum lambda_k (ux_k, uy_k, 1) = (0, 0, 1),
  // lambda >= 0. A basis is 3 constraint indices; pivot with Dantzig pricing
  // and a Bland fallback against cycling on degenerate (symmetric) bodies.
  auto solve3 = [](const double M[3][3], const double r[3], double out[3]) {
    double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
               - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
               + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    if (std::abs(det) < 1e-300) return false;
    const double inv[3][3] = {
        {(M[1][1] * M[2][2] - M[1][2] * M[2][1]) / det, (M[0][2] * M[2][1] - M[0][1] * M[2][2]) / det,
         (M[0][1] * M[1][2] - M[0][2] * M[1][1]) / det},
        {(M[1][2] * M[2][0] - M[1][0] * M[2][2]) / det, (M[0][0] * M[2][2] - M[0][2] * M[2][0]) / det,
         (M[0][2] * M[1][0] - M[0][0] * M[1][2]) / det},
        {(M[1][0] * M[2][1] - M[1][1] * M[2][0]) / det, (M[0][1] * M[2][0] - M[0][0] * M[2][1]) / det,
         (M[0][0] * M[1][1] - M[0][1] * M[1][0]) / det}};
    for (int i = 0; i < 3; ++i)
      out[i] = inv[i][0] * r[0] + inv[i][1] * r[1] + inv[i][2] * r[2];
    return true;
  };

  const double tol = 1e-12 * std::max(bmax, 1.0);
  std::array<int, 3> basis = {n0, n0 + 1, n0 + 2};

  int stall = 0;
  for (int iter = 0; iter < 32 * n; ++iter) {
    double B[3][3], BT[3][3];
    for (int i = 0; i < 3; ++i) {
      B[0][i] = ux[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
      B[1][i] = uy[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
      B[2][i] = 1.0;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) BT[i][j] = B[j][i];

    const double rhs[3] = {0.0, 0.0, 1.0};
    double lambda[3];
    if (!solve3(B, rhs, lambda)) throw std::runtime_error("chebyshev_lp: singular basis");
    const double bb[3] = {b[static_cast<std::size_t>(basis[0])], b[static_cast<std::size_t>(basis[1])],
                          b[static_cast<std::size_t>(basis[2])]};
    double y[3];
    if (!solve3(BT, bb, y)) throw std::runtime_error("chebyshev_lp: singular basis");

    // Entering variable: most negative reduced cost b_j - u_j . y.
    int enter = -1;
    double best = -tol;
    const bool bland = stall > 3 * n;
    for (int j = 0; j < n; ++j) {
      double red = b[static_cast<std::size_t>(j)] -
                   (ux[static_cast<std::size_t>(j)] * y[0] + uy[static_cast<std::size_t>(j)] * y[1] + y[2]);
      if (red < best) {
        best = red;
        enter = j;
        if (bland) break;  // first improving index
      }
    }
    if (enter < 0) {
      for (int idx : basis)
        if (idx >= n0) throw std::runtime_error("chebyshev_lp: unbounded (artificial active)");
      ChebyshevLP out;
      out.cx = y[0];
      out.cy = y[1];
      out.t = y[2];
      out.basis = basis;
      return out;
    }

    const double col[3] = {ux[static_cast<std::size_t>(enter)], uy[static_cast<std::size_t>(enter)], 1.0};
    double d[3];
    if (!solve3(B, col, d)) throw std::runtime_error("chebyshev_lp: singular pivot");
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      if (d[i] > 1e-14) {
        double r = lambda[i] / d[i];
        if (r < ratio - 1e-18 || (r < ratio + 1e-18 && (leave < 0 || basis[static_cast<std::size_t>(i)] <
                                                                        basis[static_cast<std::size_t>(leave)]))) {
          ratio = r;
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("chebyshev_lp: unbounded (invalid body)");
    stall = ratio < 1e-15 ? stall + 1 : 0;
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  throw std::runtime_error("chebyshev_lp: iteration limit");
}

double distance_to_boundary(const ArcGon& body, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : body.pieces()) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      Point2 d = s->b - s->a;
      double t = std::clamp(dot(p - s->a, d) / norm2(d), 0.0, 1.0);
      best = std::min(best, dist(p, s->a + t * d));
    } else {
      const auto& a = std::get<Arc>(piece);
      double th = std::atan2(p.y - a.center.y, p.x - a.center.x);
      double t = wrap_from(th, a.a0);
      if (t <= a.sweep()) {
        best = std::min(best, std::abs(dist(p, a.center) - a.radius));
      } else {
        best = std::min(best, std::min(dist(p, a.start()), dist(p, a.end())));
      }
    }
  }
  return best;
}

}  // namespace detail

InradiusResult inradius(const ArcGon& body, int n_angles) {
  if (n_angles < 64) throw std::invalid_argument("inradius: n_angles must be >= 64");

  // Shift to an interior origin so the LP is well scaled, solve the sampled
  // Chebyshev LP, then refine the center against exact piece distances
  // (the objective c -> dist(c, boundary) is concave).
  const Point2 p0 = interior_point(body);
  detail::SupportEvaluator ev(body);
  const double dth = kTwoPi / n_angles;
  std::vector<double> ux(static_cast<std::size_t>(n_angles)), uy(static_cast<std::size_t>(n_angles)),
      hb(static_cast<std::size_t>(n_angles));
  for (int k = 0; k < n_angles; ++k) {
    const double th = k * dth;
    Point2 u = unit_dir(th);
    ux[static_cast<std::size_t>(k)] = u.x;
    uy[static_cast<std::size_t>(k)] = u.y;
    hb[static_cast<std::size_t>(k)] = ev(th) - dot(p0, u);
  }
  auto lp = detail::chebyshev_lp(ux, uy, hb);

  Point2 c = p0 + Point2{lp.cx, lp.cy};
  double r = detail::distance_to_boundary(body, c);

  // Compass refinement: 8 directions, shrinking step. Keeps the certified
  // exact-distance value; only ever improves it.
  double step = std::max(lp.t - r, 1e-4 * std::max(lp.t, 1e-30));
  const double floor_step = 1e-14 * std::max(lp.t, 1e-30);
  for (int round = 0; round < 80 && step > floor_step; ++round) {
    bool improved = false;
    for (int d = 0; d < 8; ++d) {
      Point2 cand = c + step * unit_dir(d * kPi / 4.0);
      double rc = detail::distance_to_boundary(body, cand);
      if (rc > r) {
        r = rc;
        c = cand;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {r, c};
}

BodyMetrics measure(const ArcGon& body, int n_angles) {
  BodyMetrics m;
  m.area = area(body);
  m.diameter = diameter(body, n_angles);
  auto inr = inradius(body, n_angles);
  m.inradius = inr.r;
  m.x = 2.0 * m.inradius / m.diameter;
  m.y = kPi * m.inradius * m.inradius / m.area;
  if (!(m.x > 0.0) || m.x > 1.0 + 1e-9 || !(m.y > 0.0) || m.y > 1.0 + 1e-9)
    throw std::runtime_error("measure: normalized coordinates outside (0,1]");
  return m;
}

}  // namespace adr
