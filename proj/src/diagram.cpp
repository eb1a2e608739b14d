#include "adr/diagram.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

namespace adr {

std::string Witness::str() const {
  char buf[64];
  switch (kind) {
    case WitnessKind::TwoCap: return "TwoCap";
    case WitnessKind::Slice: return "Slice";
    case WitnessKind::NonagonE: return "NonagonE";
    case WitnessKind::NonagonC: return "NonagonC";
    case WitnessKind::MinkowskiPath:
      std::snprintf(buf, sizeof buf, "MinkowskiPath(%.6f)", param);
      return buf;
    case WitnessKind::ShrinkPath:
      std::snprintf(buf, sizeof buf, "ShrinkPath(%.6f)", param);
      return buf;
    case WitnessKind::RandomBody:
      std::snprintf(buf, sizeof buf, "RandomBody(%llu)", static_cast<unsigned long long>(seed));
      return buf;
  }
  return "?";
}

double y_upper(double x) {
  if (x < 0.0 || x > 1.0 + 1e-12) throw std::domain_error("y_upper: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  x = std::min(x, 1.0);
  return kPi * x / (x * (kPi - 2.0 * std::acos(x)) + 2.0 * std::sqrt(std::max(1.0 - x * x, 0.0)));
}

double y_lower(double x) {
  if (x <= 0.0 || x > 1.0 + 1e-12) throw std::domain_error("y_lower: x outside (0, 1]");
  x = std::min(x, 1.0);
  const double xstar = 2.0 / d_star();
  if (x <= xstar) {
    return kPi * x / (2.0 * std::sqrt(std::max(1.0 - x * x, 0.0)) + 2.0 * std::asin(x) / x);
  }
  const double root = std::sqrt(std::max(4.0 - 3.0 * x * x, 0.0));
  return kPi * x * x /
         (2.0 * kPi - 6.0 * std::acos(std::min(0.5 * std::sqrt(3.0) * x, 1.0)) +
          1.5 * std::sqrt(3.0) * x * (root - x));
}

double psi(double D, double r) {
  if (!(r > 0.0) || D < 2.0 * r) throw std::domain_error("psi: requires D >= 2r > 0");
  const double Dn = D / r;
  const double scaled = r * r * (Dn <= d_star() ? nonagon_E_area(Dn) : slice_area(Dn));
  // direct evaluation of the theorem display, as a consistency guard
  double direct;
  if (Dn <= d_star()) {
    direct = 1.5 * std::sqrt(3.0) * r * (std::sqrt(D * D - 3.0 * r * r) - r) +
             1.5 * D * D * (kPi / 3.0 - std::acos(std::min(std::sqrt(3.0) * r / D, 1.0)));
  } else {
    direct = r * std::sqrt(D * D - 4.0 * r * r) + 0.5 * D * D * std::asin(std::min(2.0 * r / D, 1.0));
  }
  if (std::abs(direct - scaled) > 1e-12 * std::max(1.0, scaled))
    throw std::runtime_error("psi: scaling identity violated");
  return scaled;
}

bool classical_bounds_ok(const DiagramPoint& p, double eps) {
  return p.y >= p.x * p.x - eps && p.y >= kPi * p.x / 4.0 - eps;
}

ArcGon random_convex_body(std::uint64_t seed, int n_points) {
  if (n_points < 3) throw std::invalid_argument("random_convex_body: n_points must be >= 3");
  std::mt19937_64 rng(seed);
  auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };  // uniform double in [0, 1)
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Point2> pts(static_cast<std::size_t>(n_points));
    for (auto& p : pts) p = {u01(), u01()};
    try {
      Polygon hull = convex_hull_points(std::move(pts));
      if (area(hull) > 1e-9) return to_arcgon(hull);
    } catch (const std::invalid_argument&) {
      // degenerate draw, retry
    }
  }
  throw std::runtime_error("random_convex_body: degenerate after 100 retries");
}

namespace {

struct ColumnContext {
  const DiagramOptions& opt;
  double x;  // column abscissa
  double D;  // 2/x
  detail::PathStats stats;
};

void certify_point(ColumnContext& ctx, const DiagramPoint& p, double eps) {
  const double lo = y_lower(std::clamp(p.x, 1e-12, 1.0)) - eps;
  const double hi = y_upper(std::clamp(p.x, 0.0, 1.0)) + eps;
  const double viol = std::max(lo - p.y, p.y - hi);
  ctx.stats.max_band_violation = std::max(ctx.stats.max_band_violation, viol);
  if (viol > 0.0) {
    throw CertificationError("diagram point outside band: x=" + std::to_string(p.x) +
                             " y=" + std::to_string(p.y) + " witness=" + p.witness.str());
  }
}

// Shrink-path stations must hold the constraints themselves:
// r = 1 and D = target within rd_eps.
void certify_path_body(ColumnContext& ctx, const ArcGon& body, const Witness& w) {
  BodyMetrics m = measure(body, ctx.opt.n_angles);
  const double rerr = std::abs(m.inradius - 1.0);
  const double derr = std::abs(m.diameter - ctx.D);
  ctx.stats.max_r_err = std::max(ctx.stats.max_r_err, rerr);
  ctx.stats.max_d_err = std::max(ctx.stats.max_d_err, derr);
  if (rerr > ctx.opt.rd_eps || derr > ctx.opt.rd_eps) {
    throw CertificationError("path invariant violated (r=" + std::to_string(m.inradius) +
                             ", D=" + std::to_string(m.diameter) + " vs " + std::to_string(ctx.D) +
                             ") at witness " + w.str() + "\n" + to_text(body));
  }
  DiagramPoint p{m.x, m.y, w};
  certify_point(ctx, p, ctx.opt.band_eps_measured);
}

DiagramPoint emit_measured(ColumnContext& ctx, const ArcGon& body, Witness w) {
  BodyMetrics m = measure(body, ctx.opt.n_angles);
  DiagramPoint p{m.x, m.y, w};
  certify_point(ctx, p, ctx.opt.band_eps_measured);
  return p;
}

// Minkowski column: K_t = t*slice + (1-t)*two_cap, built as the exact
// arcgon Minkowski combination; the sets are nested so the area is monotone
// in t and plain bisection locates any target.
class MinkowskiColumn {
 public:
  explicit MinkowskiColumn(double D) : upper_(slice(D)), lower_(two_cap_body(1.0, D)) {}

  ArcGon body(double t) const { return minkowski_sum(upper_, t, lower_, 1.0 - t); }

  const ArcGon& upper() const { return upper_; }
  const ArcGon& lower() const { return lower_; }

  ArcGon locate(double target_area, double* t_out) const {
    double t = detail::bisect([&](double tt) { return area(body(tt)) - target_area; }, 0.0, 1.0, 1e-12);
    *t_out = t;
    return body(t);
  }

 private:
  ArcGon upper_;
  ArcGon lower_;
};

// Shrink column for D < D*: stage 1 interpolates K_E down to
// K_AB = hull(A, B, incircle) with [A, B] a diameter chord of K_E; stage 2
// slides the chord (kept at length D) until its midpoint reaches the
// incenter, which is the two-cap body.
class ShrinkColumn {
 public:
  explicit ShrinkColumn(double D)
      : D_(D),
        built_(nonagon_E(D)),
        mid0_(0.5 * (built_.first.B[0] + built_.first.M[0])),
        dir0_((1.0 / D) * (built_.first.B[0] - built_.first.M[0])),
        kab_(hull_at(0.0)),
        area_kab_(area(kab_)),
        area_ke_(area(built_.second)) {}

  double area_top() const { return area_ke_; }
  double area_knee() const { return area_kab_; }

  // s in [0, 2]: stage 1 on [0, 1], stage 2 on [1, 2]
  ArcGon body(double s) const {
    if (s <= 1.0) {
      if (s <= 1e-15) return built_.second;
      if (s >= 1.0 - 1e-15) return kab_;
      return minkowski_sum(built_.second, 1.0 - s, kab_, s);
    }
    return hull_at(std::min(s - 1.0, 1.0));
  }

  ArcGon locate(double target_area, double* s_out) const {
    if (target_area >= area_kab_) {
      double s = detail::bisect([&](double ss) { return area(body(ss)) - target_area; }, 0.0, 1.0, 1e-12);
      *s_out = s;
      return body(s);
    }
    return locate_stage2(target_area, s_out);
  }

 private:
  ArcGon hull_at(double u) const {
    Point2 mid = (1.0 - u) * mid0_;
    const Point2 pts[2] = {mid + (D_ / 2.0) * dir0_, mid - (D_ / 2.0) * dir0_};
    const Disk disk[1] = {{{0.0, 0.0}, 1.0}};
    return convex_hull(pts, disk);
  }

  // Dense sampling plus local bisection; only continuity is guaranteed along
  // stage 2, so fall back to the nearest sample when no bracket appears.
  ArcGon locate_stage2(double target_area, double* s_out) const {
    constexpr int kSteps = 256;
    double prev_u = 0.0;
    double prev_a = area_kab_;
    double best_u = 0.0;
    double best_gap = std::abs(prev_a - target_area);
    for (int i = 1; i <= kSteps; ++i) {
      double u = static_cast<double>(i) / kSteps;
      double a = area(hull_at(u));
      if ((prev_a - target_area) * (a - target_area) <= 0.0) {
        double lo = prev_u, hi = u;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          double am = area(hull_at(mid));
          if ((am - target_area) * (prev_a - target_area) >= 0.0) lo = mid;
          else hi = mid;
        }
        double u_hit = 0.5 * (lo + hi);
        *s_out = 1.0 + u_hit;
        return hull_at(u_hit);
      }
      if (std::abs(a - target_area) < best_gap) {
        best_gap = std::abs(a - target_area);
        best_u = u;
      }
      prev_u = u;
      prev_a = a;
    }
    if (best_gap <= 1e-4) {
      *s_out = 1.0 + best_u;
      return hull_at(best_u);
    }
    throw CertificationError("shrink path: no sample within 1e-4 of target area " +
                             std::to_string(target_area));
  }

  double D_;
  std::pair<NonagonParams, ArcGon> built_;
  Point2 mid0_, dir0_;
  ArcGon kab_;
  double area_kab_ = 0.0;
  double area_ke_ = 0.0;
};

std::vector<DiagramPoint> fill_column(const DiagramOptions& opt, double x) {
  ColumnContext ctx{opt, x, 2.0 / x, {}};
  std::vector<DiagramPoint> out;
  const double xstar = 2.0 / d_star();
  const bool minkowski = x <= xstar;

  // analytic endpoints
  DiagramPoint lower_pt{x, y_lower(x), {minkowski ? WitnessKind::Slice : WitnessKind::NonagonE, 0, 0}};
  DiagramPoint upper_pt{x, y_upper(x), {WitnessKind::TwoCap, 0, 0}};
  certify_point(ctx, lower_pt, opt.band_eps_analytic);
  certify_point(ctx, upper_pt, opt.band_eps_analytic);
  out.push_back(lower_pt);
  out.push_back(upper_pt);

  const double area_max = kPi / y_lower(x);  // pi r^2 / y with r = 1
  const double area_min = kPi / y_upper(x);

  if (minkowski) {
    MinkowskiColumn col(ctx.D);
    // path stations: inclusion two_cap <= K_t <= slice by support dominance
    // and non-decreasing area (the combinations are exact arcgons)
    const double dom_tol = 1e-9 * std::max(1.0, ctx.D);
    double prev_area = 0.0;
    for (int i = 0; i <= opt.path_samples; ++i) {
      double t = static_cast<double>(i) / opt.path_samples;
      Witness w{WitnessKind::MinkowskiPath, t, 0};
      ArcGon kt = col.body(t);
      double a = area(kt);
      if (a + 1e-9 < prev_area)
        throw CertificationError("minkowski path: area not monotone at " + w.str());
      prev_area = a;
      if (!support_dominates(col.upper(), kt, 512, dom_tol) ||
          !support_dominates(kt, col.lower(), 512, dom_tol))
        throw CertificationError("minkowski path: inclusion violated at " + w.str());
      BodyMetrics m = measure(kt, ctx.opt.n_angles);
      certify_point(ctx, {m.x, m.y, w}, ctx.opt.band_eps_measured);
    }
    for (int i = 1; i <= opt.per_column; ++i) {
      double target = area_min + (area_max - area_min) * i / (opt.per_column + 1);
      double t = 0.0;
      ArcGon w = col.locate(target, &t);
      out.push_back(emit_measured(ctx, w, {WitnessKind::MinkowskiPath, t, 0}));
    }
  } else {
    ShrinkColumn col(ctx.D);
    for (int i = 0; i <= opt.path_samples; ++i) {
      double s = 2.0 * i / opt.path_samples;
      certify_path_body(ctx, col.body(s), {WitnessKind::ShrinkPath, s, 0});
    }
    for (int i = 1; i <= opt.per_column; ++i) {
      double target = area_min + (area_max - area_min) * i / (opt.per_column + 1);
      double s = 0.0;
      ArcGon w = col.locate(target, &s);
      out.push_back(emit_measured(ctx, w, {WitnessKind::ShrinkPath, s, 0}));
    }
  }
  return out;
}

}  // namespace

std::vector<DiagramPoint> diagram_fill(const DiagramOptions& opt) {
  if (opt.x_resolution < 2) throw std::invalid_argument("diagram_fill: x_resolution must be >= 2");
  if (opt.per_column < 1) throw std::invalid_argument("diagram_fill: per_column must be >= 1");

  const int cols = opt.x_resolution;
  std::vector<std::vector<DiagramPoint>> per_col(static_cast<std::size_t>(cols));
  std::exception_ptr first_error;
  std::mutex err_mtx;
  std::atomic<int> next{0};

  int workers = opt.workers > 0 ? opt.workers
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, cols);

  auto run = [&] {
    for (;;) {
      int j = next.fetch_add(1);
      if (j >= cols) return;
      try {
        double x = static_cast<double>(j + 1) / (cols + 1);
        per_col[static_cast<std::size_t>(j)] = fill_column(opt, x);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mtx);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<DiagramPoint> all;
  for (auto& v : per_col) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.witness.str() < b.witness.str();
  });
  return all;
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::string to_csv(const std::vector<DiagramPoint>& points) {
  std::string out = "x,y,witness\n";
  for (const auto& p : points)
    out += fmt17(p.x) + "," + fmt17(p.y) + "," + p.witness.str() + "\n";
  return out;
}

void write_csv(const std::string& path, const std::vector<DiagramPoint>& points) {
  atomic_write(path, to_csv(points));
}

std::string to_svg(const std::vector<DiagramPoint>& points) {
  auto px = [](double x) { return 1000.0 * x; };
  auto py = [](double y) { return 1000.0 * (1.0 - y); };
  auto polyline = [&](auto f, int samples, const char* style) {
    std::string s = "  <polyline fill=\"none\" " + std::string(style) + " points=\"";
    for (int i = 1; i <= samples; ++i) {
      double x = static_cast<double>(i) / samples;
      double y = std::clamp(f(x), 0.0, 1.0);
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      s += buf;
    }
    s += "\"/>\n";
    return s;
  };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
      "width=\"1000\" height=\"1000\">\n"
      "  <rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  svg += polyline([](double x) { return x * x; }, 512,
                  "stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"4 4\"");
  svg += polyline([](double x) { return kPi * x / 4.0; }, 512,
                  "stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"4 4\"");
  svg += polyline([](double x) { return y_upper(x); }, 512, "stroke=\"#202020\" stroke-width=\"2\"");
  svg += polyline([](double x) { return y_lower(x); }, 512, "stroke=\"#202020\" stroke-width=\"2\"");
  for (const auto& p : points) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"#4477cc\"/>\n",
                  px(p.x), py(p.y));
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::string& path, const std::vector<DiagramPoint>& points) {
  atomic_write(path, to_svg(points));
}

}  // namespace adr
