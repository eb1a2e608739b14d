#include "adr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

namespace adr {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Parallel loop over [0, n) collecting a max-style failure report.
template <class F>
void parallel_for(int n, int workers, F&& f) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mtx;
  auto run = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mtx);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

struct MaxTracker {
  std::mutex mtx;
  double value = 0.0;
  void update(double v) {
    std::lock_guard<std::mutex> lk(mtx);
    value = std::max(value, v);
  }
};

struct MinTracker {
  std::mutex mtx;
  double value = 1e300;
  void update(double v) {
    std::lock_guard<std::mutex> lk(mtx);
    value = std::min(value, v);
  }
};

// ---- independent oracle for criterion 4: revolution quadrature ------------
//
// The two-cap body profile about its axis: circular for |x| <= 2r^2/D, then
// the tangent cone to the tip. V = w_{n-1} Int rho(x)^{n-1} dx, integrated by
// adaptive Simpson on the two smooth parts (never through the closed form).
double two_cap_profile(double x, double r, double D) {
  const double xt = 2.0 * r * r / D;
  const double ax = std::abs(x);
  if (ax <= xt) return std::sqrt(std::max(r * r - x * x, 0.0));
  const double m = std::sqrt(std::max(r * r - xt * xt, 0.0)) / (D / 2.0 - xt);
  return std::max(0.0, (D / 2.0 - ax) * m);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double two_cap_volume_oracle(int n, double r, double D) {
  auto g = [&](double x) { return std::pow(two_cap_profile(x, r, D), n - 1); };
  const double xt = 2.0 * r * r / D;
  const double w = unit_ball_volume(n - 1);
  // split at the tangency abscissae where the profile kinks
  double v = integrate(g, -D / 2.0, -xt, 1e-13) + integrate(g, -xt, xt, 1e-13) +
             integrate(g, xt, D / 2.0, 1e-13);
  return w * v;
}

// ---- criteria ---------------------------------------------------------------

CriterionResult crit_1_dstar() {
  CriterionResult r{1, "crossover threshold d_star", false, "", 0};
  const double ds = d_star();
  const double err = std::abs(ds - 2.3888);
  r.pass = err <= 5e-4;
  r.detail = fmt("d_star=%.10f |d*-2.3888|=%.2e (tol 5e-4)", ds, err);
  return r;
}

CriterionResult crit_2_closed_forms(int workers) {
  CriterionResult r{2, "closed-form vs measured area (200-point grid)", false, "", 0};
  const int n = 200;
  const double lo = 2.0 + 1e-3, hi = kTwoSqrt3 - 1e-3;
  MaxTracker worst;
  parallel_for(n, workers, [&](int i) {
    const double D = lo + (hi - lo) * i / (n - 1);
    double m = 0.0;
    m = std::max(m, std::abs(area(nonagon_E(D).second) - nonagon_E_area(D)) / nonagon_E_area(D));
    m = std::max(m, std::abs(area(slice(D)) - slice_area(D)) / slice_area(D));
    m = std::max(m, std::abs(area(two_cap_body(1.0, D)) - two_cap_area(1.0, D)) / two_cap_area(1.0, D));
    m = std::max(m, std::abs(area(nonagon_C(D).second) - nonagon_C_area(D)) / nonagon_C_area(D));
    worst.update(m);
  });
  r.pass = worst.value <= 1e-9;
  r.detail = fmt("max rel area error %.2e over 4 shapes x %d D values (tol 1e-9)", worst.value, n);
  return r;
}

CriterionResult crit_3_construction_fidelity(int workers) {
  CriterionResult r{3, "construction fidelity r and D at n=8192", false, "", 0};
  const int n = 200;
  const double lo = 2.0 + 1e-3, hi = kTwoSqrt3 - 1e-3;
  MaxTracker worst_r, worst_d;
  parallel_for(n, workers, [&](int i) {
    const double D = lo + (hi - lo) * i / (n - 1);
    for (int shape = 0; shape < 4; ++shape) {
      ArcGon body = shape == 0   ? nonagon_E(D).second
                    : shape == 1 ? slice(D)
                    : shape == 2 ? two_cap_body(1.0, D)
                                 : nonagon_C(D).second;
      BodyMetrics m = measure(body, 8192);
      worst_r.update(std::abs(m.inradius - 1.0));
      worst_d.update(std::abs(m.diameter - D));
    }
  });
  r.pass = worst_r.value <= 1e-6 && worst_d.value <= 1e-6;
  r.detail = fmt("max |r-1|=%.2e, max |D-target|=%.2e (tol 1e-6)", worst_r.value, worst_d.value);
  return r;
}

CriterionResult crit_4_nd_volume() {
  CriterionResult r{4, "n-dimensional two-cap volume vs quadrature oracle", false, "", 0};
  double worst_rel = 0.0, worst_ball = 0.0;
  for (int n = 2; n <= 5; ++n) {
    for (double ratio : {2.5, 3.0, 5.0}) {
      const double v = two_cap_volume_nd({n, 1.0, ratio});
      const double o = two_cap_volume_oracle(n, 1.0, ratio);
      worst_rel = std::max(worst_rel, std::abs(v - o) / o);
    }
    const double ball = two_cap_volume_nd({n, 1.0, 2.0});
    worst_ball = std::max(worst_ball, std::abs(ball - unit_ball_volume(n)) / unit_ball_volume(n));
  }
  r.pass = worst_rel <= 1e-8 && worst_ball <= 1e-12;
  r.detail = fmt("max rel err vs oracle %.2e (tol 1e-8); ball-limit err %.2e (tol 1e-12)",
                 worst_rel, worst_ball);
  return r;
}

CriterionResult crit_5_sandwich(int workers) {
  CriterionResult r{5, "extremality sandwich over 10^4 random bodies", false, "", 0};
  const int n = 10000;
  MinTracker min_lower, min_upper;
  std::atomic<int> violations{0};
  parallel_for(n, workers, [&](int i) {
    ArcGon body = random_convex_body(static_cast<std::uint64_t>(i) + 1, 3 + (i % 62));
    BodyMetrics m = measure(body, 4096);
    const double Dn = m.diameter / m.inradius;
    const double An = m.area / (m.inradius * m.inradius);
    const double lower_margin = An - two_cap_area(1.0, Dn);
    const double upper_margin = psi(Dn, 1.0) - An;
    min_lower.update(lower_margin);
    min_upper.update(upper_margin);
    if (lower_margin < -1e-9 || upper_margin < -1e-6) violations.fetch_add(1);
  });
  r.pass = violations.load() == 0;
  r.detail = fmt("0 required violations, got %d; min margins: lower %.3e, upper %.3e",
                 violations.load(), min_lower.value, min_upper.value);
  return r;
}

CriterionResult crit_6_kc_never_optimal() {
  CriterionResult r{6, "nonagon_C never optimal vs slice (500-point grid)", false, "", 0};
  const int n = 500;
  const double lo = 2.0 + 1e-6, hi = kTwoSqrt3;
  double min_margin = 1e300;
  bool strict = true;
  for (int i = 0; i < n; ++i) {
    const double D = lo + (hi - lo) * i / (n - 1);
    const double margin = slice_area(D) - nonagon_C_area(D);
    min_margin = std::min(min_margin, margin);
    if (!(margin > 0.0)) strict = false;
  }
  r.pass = strict;
  r.detail = fmt("slice - nonagon_C strictly positive on grid; min margin %.3e", min_margin);
  return r;
}

CriterionResult crit_7_two_zone() {
  CriterionResult r{7, "two-free-zone impossibility (100 D values)", false, "", 0};
  double worst = -1e300;
  bool all_neg = true;
  for (int i = 0; i < 100; ++i) {
    const double D = 2.0 + 1e-6 + 18.0 * i / 99.0;
    const double mx = two_zone_max_on_half_one(D);
    worst = std::max(worst, mx);
    if (!(mx < 0.0)) all_neg = false;
  }
  r.pass = all_neg;
  r.detail = fmt("certified max of P on [1/2,1] < 0 for D in (2, 20]; largest max %.3e", worst);
  return r;
}

CriterionResult crit_8_tau_cubic() {
  CriterionResult r{8, "tau cubic root: existence, endpoints, monotonicity", false, "", 0};
  const double t2 = nonagon_C_tau(2.0 + 1e-15);
  const double t3 = nonagon_C_tau(kTwoSqrt3);
  bool ok = std::abs(t2 - 2.0) <= 1e-9 && std::abs(t3 - 3.0) <= 1e-9;
  // uniqueness: p'(2) = 4 and p'(3) = D^2-1 are positive, p' concave, so the
  // cubic is strictly increasing on [2,3]; verify the endpoint signs too
  double prev = 2.0;
  bool monotone = true;
  for (int i = 0; i < 100; ++i) {
    const double D = 2.0 + (kTwoSqrt3 - 2.0) * (i + 1) / 100.0;
    if (!(nonagon_C_cubic(D, 2.0) < 0.0 && nonagon_C_cubic(D, 3.0) >= -1e-12)) ok = false;
    const double t = nonagon_C_tau(D);
    if (t < prev - 1e-12) monotone = false;
    prev = t;
  }
  r.pass = ok && monotone;
  r.detail = fmt("tau(2)=%.12f tau(2sqrt3)=%.12f monotone=%s", t2, t3, monotone ? "yes" : "no");
  return r;
}

CriterionResult crit_9_steiner(int workers) {
  CriterionResult r{9, "Steiner symmetrization property suite (1000 polygons)", false, "", 0};
  MaxTracker area_err, diam_growth, inr_loss;
  parallel_for(1000, workers, [&](int i) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(i) * 7919 + 13);
    auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<Point2> pts(static_cast<std::size_t>(8 + i % 56));
    for (auto& p : pts) p = {u01(), u01()};
    Polygon poly = convex_hull_points(std::move(pts));
    const double angle = u01() * kTwoPi;
    Polygon sym = steiner_symmetrize(poly, angle);
    area_err.update(std::abs(area(sym) - area(poly)) / area(poly));
    diam_growth.update(polygon_diameter(sym) - polygon_diameter(poly));
    inr_loss.update(polygon_inradius(poly).r - polygon_inradius(sym).r);
  });
  r.pass = area_err.value <= 1e-12 && diam_growth.value <= 1e-9 && inr_loss.value <= 1e-9;
  r.detail = fmt("max rel area err %.2e (tol 1e-12); max D growth %.2e, max r loss %.2e (tol 1e-9)",
                 area_err.value, diam_growth.value, inr_loss.value);
  return r;
}

CriterionResult crit_10_support_identity(int workers) {
  CriterionResult r{10, "support-function area identity at n=4096", false, "", 0};
  MaxTracker poly_err;
  parallel_for(100, workers, [&](int i) {
    ArcGon body = random_convex_body(777 + static_cast<std::uint64_t>(i), 64);
    const double exact = area(body);
    ArcGon centered = translate(body, -interior_point(body));
    poly_err.update(std::abs(support_area(to_support(centered, 4096)) - exact));
  });
  std::vector<BoundaryPiece> quads;
  for (int q = 0; q < 4; ++q) quads.push_back(Arc{{0, 0}, 1.0, q * kPi / 2.0, (q + 1) * kPi / 2.0});
  const ArcGon disk{std::move(quads)};
  const double disk_err = std::abs(support_area(to_support(disk, 4096)) - kPi);
  const double slice_err = std::abs(support_area(to_support(slice(3.0), 4096)) - slice_area(3.0));
  r.pass = poly_err.value <= 1e-3 && disk_err <= 1e-6 && slice_err <= 1e-6;
  r.detail = fmt("100 polygons max err %.2e (tol 1e-3); disk %.2e, slice %.2e (tol 1e-6)",
                 poly_err.value, disk_err, slice_err);
  return r;
}

CriterionResult crit_11_diagram(int workers) {
  CriterionResult r{11, "diagram fill 50x20 fully certified", false, "", 0};
  DiagramOptions opt;
  opt.workers = workers;
  try {
    auto pts = diagram_fill(opt);
    const std::size_t expect = static_cast<std::size_t>(opt.x_resolution) *
                               static_cast<std::size_t>(opt.per_column + 2);
    bool classical = true;
    for (const auto& p : pts)
      if (!classical_bounds_ok(p, 1e-6)) classical = false;
    r.pass = pts.size() == expect && classical;
    r.detail = fmt("%zu points emitted (expected %zu), all band- and path-certified, classical bounds %s",
                   pts.size(), expect, classical ? "hold" : "VIOLATED");
  } catch (const CertificationError& e) {
    r.pass = false;
    r.detail = std::string("certification failure: ") + e.what();
  }
  return r;
}

CriterionResult crit_12_g_analysis() {
  CriterionResult r{12, "g(D) sign analysis and derivative sign change", false, "", 0};
  const double g_end = g_crossover(kTwoSqrt3);
  const double expect_end = -std::asin(1.0 / std::sqrt(3.0));
  const double end_err = std::abs(g_end - expect_end);

  // finite-difference g' on a grid; count sign changes and bracket the root
  auto gp = [](double D) {
    const double h = 1e-7;
    return (g_crossover(D + h) - g_crossover(D - h)) / (2.0 * h);
  };
  const double lo = 2.0 + 1e-4, hi = kTwoSqrt3 - 1e-4;
  const int n = 2000;
  int sign_changes = 0;
  double bracket_lo = 0, bracket_hi = 0;
  double prev = gp(lo);
  for (int i = 1; i < n; ++i) {
    const double D = lo + (hi - lo) * i / (n - 1);
    const double cur = gp(D);
    if ((prev > 0) != (cur > 0)) {
      ++sign_changes;
      bracket_lo = lo + (hi - lo) * (i - 1) / (n - 1);
      bracket_hi = D;
    }
    prev = cur;
  }
  double root = 0;
  if (sign_changes == 1)
    root = detail::bisect(gp, bracket_lo, bracket_hi, 1e-9);
  const double expected_root = std::sqrt(96.0 / 23.0);
  const double root_err = std::abs(root - expected_root);
  r.pass = end_err <= 1e-12 && sign_changes == 1 && root_err <= 1e-6;
  r.detail = fmt("|g(2sqrt3)+asin(1/sqrt3)|=%.2e (tol 1e-12); g' sign changes=%d; "
                 "|root-sqrt(96/23)|=%.2e (tol 1e-6)",
                 end_err, sign_changes, root_err);
  return r;
}

using CriterionFn = std::function<CriterionResult(int)>;

const std::vector<std::pair<int, CriterionFn>>& registry() {
  static const std::vector<std::pair<int, CriterionFn>> table = {
      {1, [](int) { return crit_1_dstar(); }},
      {2, [](int w) { return crit_2_closed_forms(w); }},
      {3, [](int w) { return crit_3_construction_fidelity(w); }},
      {4, [](int) { return crit_4_nd_volume(); }},
      {5, [](int w) { return crit_5_sandwich(w); }},
      {6, [](int) { return crit_6_kc_never_optimal(); }},
      {7, [](int) { return crit_7_two_zone(); }},
      {8, [](int) { return crit_8_tau_cubic(); }},
      {9, [](int w) { return crit_9_steiner(w); }},
      {10, [](int w) { return crit_10_support_identity(w); }},
      {11, [](int w) { return crit_11_diagram(w); }},
      {12, [](int) { return crit_12_g_analysis(); }},
  };
  return table;
}

// per-criterion runtime limits from the acceptance contract (seconds)
double runtime_limit(int id) {
  switch (id) {
    case 1: return 1.0;
    case 2: return 30.0;
    case 5: return 120.0;
    default: return 0.0;  // no limit
  }
}

}  // namespace

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, int workers) {
  std::vector<int> want = ids;
  if (want.empty())
    for (const auto& [id, fn] : registry()) want.push_back(id);

  std::vector<CriterionResult> out;
  for (int id : want) {
    auto it = std::find_if(registry().begin(), registry().end(),
                           [id](const auto& e) { return e.first == id; });
    if (it == registry().end()) throw std::invalid_argument("unknown criterion id " + std::to_string(id));
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = it->second(workers);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double limit = runtime_limit(id);
    if (limit > 0.0 && r.seconds > limit) {
      r.pass = false;
      r.detail += fmt(" [runtime %.2fs exceeds %.0fs limit]", r.seconds, limit);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "formulas") return {1, 2, 3, 6, 7, 8, 12};
  if (suite == "bounds") return {5, 9, 10};
  if (suite == "paths") return {11};
  if (suite == "nd") return {4};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  throw std::invalid_argument("unknown suite '" + suite + "' (formulas|bounds|paths|nd|all)");
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += fmt("%s criterion %2d: %-55s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
               r.name.c_str(), r.seconds, r.detail.c_str());
  }
  return out;
}

}  // namespace adr
