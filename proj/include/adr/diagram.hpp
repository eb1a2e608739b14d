#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adr/extremal.hpp"
#include "adr/support.hpp"

namespace adr {

enum class WitnessKind { TwoCap, Slice, NonagonE, NonagonC, MinkowskiPath, ShrinkPath, RandomBody };

struct Witness {
  WitnessKind kind = WitnessKind::TwoCap;
  double param = 0.0;      // path parameter for MinkowskiPath / ShrinkPath
  std::uint64_t seed = 0;  // RandomBody seed

  std::string str() const;
};

/// One diagram sample (x, y) = (2r/D, pi r^2/A) with its witness body tag.
struct DiagramPoint {
  double x = 0.0;
  double y = 0.0;
  Witness witness;
};

/// Upper bound curve: pi x / (x (pi - 2 arccos x) + 2 sqrt(1-x^2)) on (0, 1],
/// extended by y+(0) = 0.
double y_upper(double x);

/// Lower bound curve, piecewise at x* = 2/d_star(): slice branch for x <= x*,
/// smoothed-nonagon branch for x >= x*.
double y_lower(double x);

/// Maximal area psi(D, r) of Theorem-style form: r^2 times the nonagon or
/// slice area at D/r, switching at D = r * d_star().
double psi(double D, double r);

/// y >= x^2 - eps and y >= pi x / 4 - eps (the two classical bounds).
bool classical_bounds_ok(const DiagramPoint& p, double eps = 1e-9);

/// Hull of n_points uniform points in the unit square; deterministic per
/// seed, redrawn (up to 100 times) while degenerate.
ArcGon random_convex_body(std::uint64_t seed, int n_points);

struct DiagramOptions {
  int x_resolution = 50;   // number of columns, placed at j/(columns+1)
  int per_column = 20;     // interior points per column
  std::uint64_t seed = 7;
  int workers = 0;         // 0 = hardware concurrency
  int n_angles = 4096;     // measurement grid for certification
  int path_samples = 256;  // per-column path invariant checks
  double band_eps_measured = 1e-6;
  double band_eps_analytic = 1e-9;
  double rd_eps = 1e-6;    // |r-1| and |D-target| tolerance along paths
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-by-column filling of the diagram: per column the two analytic
/// endpoints plus per_column interior witnesses found along the Minkowski
/// path (x <= x*) or the two-stage shrink path (x >= x*). Every interior
/// point is re-measured and certified inside [y- - eps, y+ + eps]; the paths
/// themselves are certified to keep r = 1 and D fixed at path_samples
/// stations. Throws CertificationError with a witness dump on any violation.
std::vector<DiagramPoint> diagram_fill(const DiagramOptions& opt = {});

/// CSV: header "x,y,witness", rows sorted by (x, y), 17 significant digits.
std::string to_csv(const std::vector<DiagramPoint>& points);
void write_csv(const std::string& path, const std::vector<DiagramPoint>& points);

/// 1000x1000 SVG: both bound curves as 512-sample polylines, the classical
/// bounds y = x^2 and y = pi x/4 dotted, points as 2px circles.
std::string to_svg(const std::vector<DiagramPoint>& points);
void write_svg(const std::string& path, const std::vector<DiagramPoint>& points);

namespace detail {

/// Path invariant statistics collected while certifying a column.
struct PathStats {
  double max_r_err = 0.0;
  double max_d_err = 0.0;
  double max_band_violation = 0.0;
};

}  // namespace detail

}  // namespace adr
