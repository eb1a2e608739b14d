#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace adr {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Chain-closure tolerance for arcgon boundaries.
inline constexpr double kCloseTol = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator-(Point2 p) { return {-p.x, -p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Unit vector at angle theta.
inline Point2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Reduce a - base into [0, 2*pi).
double wrap_from(double a, double base);

namespace detail {

/// Forward angular gap from `from` to `to`; gaps within fp noise of a full
/// turn (tangential junctions computed via atan2) snap to zero.
inline double forward_gap(double from, double to) {
  double g = wrap_from(to, from);
  return g > kTwoPi - 1e-6 ? 0.0 : g;
}

}  // namespace detail

struct Segment {
  Point2 a;
  Point2 b;
};

/// Circular arc traversed counterclockwise from angle a0 to a1 (a0 < a1 <= a0 + 2*pi)
/// around `center`; the outward normal at parameter t is the unit vector at angle t.
struct Arc {
  Point2 center;
  double radius = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;

  Point2 point_at(double t) const { return center + radius * unit_dir(t); }
  Point2 start() const { return point_at(a0); }
  Point2 end() const { return point_at(a1); }
  double sweep() const { return a1 - a0; }
};

using BoundaryPiece = std::variant<Segment, Arc>;

Point2 piece_start(const BoundaryPiece& p);
Point2 piece_end(const BoundaryPiece& p);

/// Convex body bounded by a closed counterclockwise chain of segments and
/// outward-bulging circular arcs. Construction validates closure (within
/// kCloseTol), counterclockwise orientation and convexity (outward normal
/// angle non-decreasing along the chain, total turn 2*pi).
class ArcGon {
 public:
  explicit ArcGon(std::vector<BoundaryPiece> pieces);

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

 private:
  std::vector<BoundaryPiece> pieces_;
};

/// Exact area: shoelace over the chord endpoints plus a circular-segment
/// correction r^2/2*(sweep - sin(sweep)) for every arc.
double area(const ArcGon& body);

/// Translate every piece by `d`.
ArcGon translate(const ArcGon& body, Point2 d);

/// Scale about the origin by `s` > 0.
ArcGon scale(const ArcGon& body, double s);

/// A point strictly inside the body (mean of the piece start points).
Point2 interior_point(const ArcGon& body);

/// Sample `per_piece` boundary points on every piece, in boundary order.
std::vector<Point2> sample_boundary(const ArcGon& body, int per_piece);

/// Convex polygon: counterclockwise vertex list, >= 3 vertices, every turn
/// convex within tolerance (cross products > -eps).
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }

 private:
  std::vector<Point2> v_;
};

double area(const Polygon& poly);
ArcGon to_arcgon(const Polygon& poly);

/// ARCGON v1 text format, one piece per line:
///   ARCGON v1 <piece-count>
///   S x1 y1 x2 y2
///   A cx cy radius a0 a1
/// Floats are written in their shortest round-trip decimal form, so
/// save -> load reproduces the body bit-exactly.
std::string to_text(const ArcGon& body);
ArcGon from_text(std::string_view text);  // throws ParseError

void save_arcgon(const std::string& path, const ArcGon& body);
ArcGon load_arcgon(const std::string& path);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace adr
