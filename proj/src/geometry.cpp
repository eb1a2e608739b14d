#include "adr/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace adr {

double wrap_from(double a, double base) {
  double t = std::fmod(a - base, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

Point2 piece_start(const BoundaryPiece& p) {
  return std::visit([](const auto& q) {
    if constexpr (std::is_same_v<std::decay_t<decltype(q)>, Segment>) return q.a;
    else return q.start();
  }, p);
}

Point2 piece_end(const BoundaryPiece& p) {
  return std::visit([](const auto& q) {
    if constexpr (std::is_same_v<std::decay_t<decltype(q)>, Segment>) return q.b;
    else return q.end();
  }, p);
}

namespace {

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Outward normal angle of a CCW-traversed segment.
double segment_normal(const Segment& s) {
  Point2 d = s.b - s.a;
  return std::atan2(-d.x, d.y);
}

// Normal angle range [first, last] swept by a piece.
std::pair<double, double> normal_range(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    double n = segment_normal(*s);
    return {n, n};
  }
  const auto& a = std::get<Arc>(p);
  return {a.a0, a.a1};
}

void validate(const std::vector<BoundaryPiece>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("arcgon: empty boundary");

  double scale = 0.0;
  for (const auto& p : pieces) {
    if (const auto* s = std::get_if<Segment>(&p)) {
      if (!finite(s->a) || !finite(s->b)) throw std::invalid_argument("arcgon: non-finite segment");
      if (dist(s->a, s->b) <= 0.0) throw std::invalid_argument("arcgon: zero-length segment");
      scale = std::max({scale, norm(s->a), norm(s->b)});
    } else {
      const auto& a = std::get<Arc>(p);
      if (!finite(a.center) || !std::isfinite(a.radius) || !std::isfinite(a.a0) || !std::isfinite(a.a1))
        throw std::invalid_argument("arcgon: non-finite arc");
      if (a.radius <= 0.0) throw std::invalid_argument("arcgon: arc radius must be positive");
      if (!(a.sweep() > 0.0) || !(a.sweep() < kTwoPi))
        throw std::invalid_argument("arcgon: arc sweep must lie in (0, 2*pi)");
      scale = std::max({scale, norm(a.center) + a.radius});
    }
  }

  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 e = piece_end(pieces[i]);
    Point2 s = piece_start(pieces[(i + 1) % n]);
    if (dist(e, s) > kCloseTol)
      throw std::invalid_argument("arcgon: boundary chain not closed at piece " + std::to_string(i));
  }

  // Convexity: the outward normal angle must be non-decreasing along the
  // cycle (corner jumps in [0, pi)) with total turn exactly 2*pi.
  double total = 0.0;
  auto [first0, last0] = normal_range(pieces[0]);
  double prev_last = last0;
  total += last0 - first0;
  for (std::size_t i = 1; i <= n; ++i) {
    auto [fi, li] = normal_range(pieces[i % n]);
    double jump = detail::forward_gap(prev_last, fi);
    if (jump > kPi + 1e-9)
      throw std::invalid_argument("arcgon: reflex corner before piece " + std::to_string(i % n));
    if (i == n) {
      total += jump;
      break;
    }
    total += jump + (li - fi);
    prev_last = li;
  }
  if (std::abs(total - kTwoPi) > 1e-7)
    throw std::invalid_argument(total < kPi
        ? "arcgon: boundary is clockwise or non-convex"
        : "arcgon: total normal turn is not 2*pi");
}

}  // namespace

ArcGon::ArcGon(std::vector<BoundaryPiece> pieces) : pieces_(std::move(pieces)) {
  validate(pieces_);
}

double area(const ArcGon& body) {
  double twice = 0.0;
  double arcs = 0.0;
  for (const auto& p : body.pieces()) {
    Point2 a = piece_start(p), b = piece_end(p);
    twice += cross(a, b);
    if (const auto* arc = std::get_if<Arc>(&p)) {
      double sw = arc->sweep();
      arcs += 0.5 * arc->radius * arc->radius * (sw - std::sin(sw));
    }
  }
  double result = 0.5 * twice + arcs;
  if (!(result > 0.0)) throw std::invalid_argument("arcgon: non-positive area");
  return result;
}

ArcGon translate(const ArcGon& body, Point2 d) {
  std::vector<BoundaryPiece> out;
  out.reserve(body.size());
  for (const auto& p : body.pieces()) {
    if (const auto* s = std::get_if<Segment>(&p)) {
      out.push_back(Segment{s->a + d, s->b + d});
    } else {
      Arc a = std::get<Arc>(p);
      a.center = a.center + d;
      out.push_back(a);
    }
  }
  return ArcGon(std::move(out));
}

ArcGon scale(const ArcGon& body, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<BoundaryPiece> out;
  out.reserve(body.size());
  for (const auto& p : body.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&p)) {
      out.push_back(Segment{s * seg->a, s * seg->b});
    } else {
      Arc a = std::get<Arc>(p);
      a.center = s * a.center;
      a.radius *= s;
      out.push_back(a);
    }
  }
  return ArcGon(std::move(out));
}

Point2 interior_point(const ArcGon& body) {
  Point2 acc{0, 0};
  for (const auto& p : body.pieces()) acc = acc + piece_start(p);
  return (1.0 / static_cast<double>(body.size())) * acc;
}

std::vector<Point2> sample_boundary(const ArcGon& body, int per_piece) {
  if (per_piece < 1) throw std::invalid_argument("per_piece must be >= 1");
  std::vector<Point2> pts;
  pts.reserve(body.size() * static_cast<std::size_t>(per_piece));
  for (const auto& p : body.pieces()) {
    for (int k = 0; k < per_piece; ++k) {
      double t = static_cast<double>(k) / per_piece;
      if (const auto* s = std::get_if<Segment>(&p)) {
        pts.push_back(s->a + t * (s->b - s->a));
      } else {
        const auto& a = std::get<Arc>(p);
        pts.push_back(a.point_at(a.a0 + t * a.sweep()));
      }
    }
  }
  return pts;
}

Polygon::Polygon(std::vector<Point2> vertices) : v_(std::move(vertices)) {
  if (v_.size() < 3) throw std::invalid_argument("polygon: needs >= 3 vertices");
  double scale2 = 0.0;
  for (Point2 p : v_) {
    if (!finite(p)) throw std::invalid_argument("polygon: non-finite vertex");
    scale2 = std::max(scale2, norm2(p));
  }
  const double eps = 1e-12 * std::max(scale2, 1.0);
  double twice = 0.0;
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = v_[i], b = v_[(i + 1) % n], c = v_[(i + 2) % n];
    if (cross(b - a, c - b) < -eps)
      throw std::invalid_argument("polygon: non-convex turn at vertex " + std::to_string((i + 1) % n));
    twice += cross(a, b);
  }
  if (!(twice > 0.0)) throw std::invalid_argument("polygon: not counterclockwise / degenerate");
}

double area(const Polygon& poly) {
  double twice = 0.0;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) twice += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * twice;
}

ArcGon to_arcgon(const Polygon& poly) {
  std::vector<BoundaryPiece> pieces;
  const auto& v = poly.vertices();
  pieces.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point2 a = v[i], b = v[(i + 1) % v.size()];
    if (dist(a, b) > 0.0) pieces.push_back(Segment{a, b});
  }
  return ArcGon(std::move(pieces));
}

namespace {

void put_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

class LineParser {
 public:
  LineParser(std::string_view line, int lineno) : s_(line), lineno_(lineno) {}

  double next_double() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(lineno_, "missing numeric field");
    double v = 0;
    auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (res.ec != std::errc{}) throw ParseError(lineno_, "bad numeric field");
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return v;
  }

  void expect_end() {
    skip_ws();
    if (pos_ < s_.size()) throw ParseError(lineno_, "trailing characters");
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  std::string_view s_;
  std::size_t pos_ = 0;
  int lineno_;
};

}  // namespace

std::string to_text(const ArcGon& body) {
  std::string out = "ARCGON v1 " + std::to_string(body.size()) + "\n";
  for (const auto& p : body.pieces()) {
    if (const auto* s = std::get_if<Segment>(&p)) {
      out += "S ";
      put_double(out, s->a.x); out += ' ';
      put_double(out, s->a.y); out += ' ';
      put_double(out, s->b.x); out += ' ';
      put_double(out, s->b.y);
    } else {
      const auto& a = std::get<Arc>(p);
      out += "A ";
      put_double(out, a.center.x); out += ' ';
      put_double(out, a.center.y); out += ' ';
      put_double(out, a.radius); out += ' ';
      put_double(out, a.a0); out += ' ';
      put_double(out, a.a1);
    }
    out += '\n';
  }
  return out;
}

ArcGon from_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError(1, "empty input");

  {
    std::istringstream hdr{std::string(lines[0])};
    std::string magic, version;
    long count = -1;
    hdr >> magic >> version >> count;
    if (magic != "ARCGON" || version != "v1" || count < 0 || hdr.fail())
      throw ParseError(1, "expected header 'ARCGON v1 <piece-count>'");
    if (static_cast<std::size_t>(count) + 1 != lines.size())
      throw ParseError(1, "piece count does not match number of lines");
  }

  std::vector<BoundaryPiece> pieces;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i) + 1;
    std::string_view line = lines[i];
    if (line.empty()) throw ParseError(lineno, "empty piece line");
    char tag = line[0];
    LineParser lp(line.substr(1), lineno);
    if (tag == 'S') {
      Segment s;
      s.a.x = lp.next_double(); s.a.y = lp.next_double();
      s.b.x = lp.next_double(); s.b.y = lp.next_double();
      lp.expect_end();
      pieces.push_back(s);
    } else if (tag == 'A') {
      Arc a;
      a.center.x = lp.next_double(); a.center.y = lp.next_double();
      a.radius = lp.next_double();
      a.a0 = lp.next_double(); a.a1 = lp.next_double();
      lp.expect_end();
      pieces.push_back(a);
    } else {
      throw ParseError(lineno, std::string("unknown piece tag '") + tag + "'");
    }
  }
  try {
    return ArcGon(std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw ParseError(static_cast<int>(lines.size()), e.what());
  }
}

void save_arcgon(const std::string& path, const ArcGon& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << to_text(body);
    if (!f.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

ArcGon load_arcgon(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

}  // namespace adr
