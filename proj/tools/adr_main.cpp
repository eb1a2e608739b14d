// adr: construct, measure and verify the extremal convex bodies of the
// (area, diameter, inradius) problem, and generate its Blaschke-Santalo
// diagram.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "adr/diagram.hpp"
#include "adr/extremal.hpp"
#include "adr/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int worker_count() {
  if (const char* env = std::getenv("ADR_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 0;  // library default: hardware concurrency
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

adr::ArcGon construct_shape(const std::string& shape, double D, double r) {
  using namespace adr;
  if (!(r > 0.0)) throw UsageError("r must be positive");
  const double Dn = D / r;  // constructors are normalized to r = 1
  ArcGon body = [&]() -> ArcGon {
    if (shape == "two-cap") return two_cap_body(1.0, Dn);
    if (shape == "slice") return slice(Dn);
    if (shape == "nonagon-e") return nonagon_E(Dn).second;
    if (shape == "nonagon-c") return nonagon_C(Dn).second;
    throw UsageError("unknown shape '" + shape + "'");
  }();
  return r == 1.0 ? body : scale(body, r);
}

double closed_form_area(const std::string& shape, double D, double r) {
  using namespace adr;
  const double Dn = D / r;
  double unit = shape == "two-cap"    ? two_cap_area(1.0, Dn)
                : shape == "slice"    ? slice_area(Dn)
                : shape == "nonagon-e" ? nonagon_E_area(Dn)
                                       : nonagon_C_area(Dn);
  return r * r * unit;
}

int cmd_construct(const std::string& shape, double D, double r, const std::string& out) {
  adr::ArcGon body = construct_shape(shape, D, r);
  if (!out.empty()) adr::save_arcgon(out, body);
  adr::BodyMetrics m = adr::measure(body);
  std::printf("shape: %s D=%.17g r=%.17g%s%s\n", shape.c_str(), D, r,
              out.empty() ? "" : " -> ", out.c_str());
  std::printf("closed-form: A=%.17g D=%.17g r=%.17g\n", closed_form_area(shape, D, r), D, r);
  std::printf("measured:    A=%.17g D=%.17g r=%.17g\n", m.area, m.diameter, m.inradius);
  return kExitOk;
}

int cmd_measure(const std::string& in) {
  adr::ArcGon body = adr::load_arcgon(in);
  adr::BodyMetrics m = adr::measure(body);
  std::printf("A=%.17g\nD=%.17g\nr=%.17g\nx=%.17g\ny=%.17g\n", m.area, m.diameter, m.inradius,
              m.x, m.y);
  return kExitOk;
}

int cmd_bounds(double x, double D, double r) {
  if (x > 0.0) {
    std::printf("x=%.17g\ny_lower=%.17g\ny_upper=%.17g\nclassical: y>=x^2=%.17g  y>=pi*x/4=%.17g\n",
                x, adr::y_lower(x), adr::y_upper(x), x * x, adr::kPi * x / 4.0);
  }
  if (D > 0.0) {
    std::printf("D=%.17g r=%.17g\narea_min=%.17g (two-cap)\narea_max=%.17g (psi)\n", D, r,
                adr::two_cap_area(r, D), adr::psi(D, r));
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  auto ids = adr::suite_criteria(suite);
  auto results = adr::run_criteria(ids, worker_count());
  std::fputs(adr::format_results(results).c_str(), stdout);
  for (const auto& r : results)
    if (!r.pass) return kExitVerifyFail;
  return kExitOk;
}

int cmd_diagram(int columns, int per_column, std::uint64_t seed, const std::string& csv,
                const std::string& svg) {
  adr::DiagramOptions opt;
  opt.x_resolution = columns;
  opt.per_column = per_column;
  opt.seed = seed;
  opt.workers = worker_count();
  auto points = adr::diagram_fill(opt);
  if (!csv.empty()) adr::write_csv(csv, points);
  if (!svg.empty()) adr::write_svg(svg, points);
  std::printf("%zu certified points (%d columns x %d)\n", points.size(), columns, per_column + 2);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremal convex bodies and the (A, D, r) Blaschke-Santalo diagram"};
  app.require_subcommand(1);

  std::string shape, out_path, in_path, csv_path, svg_path, suite = "all";
  double D = 3.0, r = 1.0, x = 0.0;
  int columns = 50, per_column = 20;
  std::uint64_t seed = 7;

  auto* construct = app.add_subcommand("construct", "build an extremal body, write ARCGON v1");
  construct->add_option("shape", shape, "two-cap|slice|nonagon-e|nonagon-c")->required();
  construct->add_option("--D", D, "diameter")->required();
  construct->add_option("--r", r, "inradius (default 1; rescales by covariance)");
  construct->add_option("--out,-o", out_path, "output path");

  auto* measure = app.add_subcommand("measure", "measure an ARCGON v1 file");
  measure->add_option("file", in_path, "input path")->required();

  auto* bounds = app.add_subcommand("bounds", "evaluate the diagram bound curves");
  bounds->add_option("--x", x, "normalized abscissa 2r/D in (0,1]");
  auto* bd = bounds->add_option("--D", D, "diameter (with --r) for area bounds");
  bounds->add_option("--r", r, "inradius")->needs(bd);

  auto* verify = app.add_subcommand("verify", "run acceptance suites");
  verify->add_option("suite", suite, "formulas|bounds|paths|nd|all");

  auto* diagram = app.add_subcommand("diagram", "generate the diagram point cloud");
  diagram->add_option("--columns", columns, "number of x columns (>= 2)");
  diagram->add_option("--per-column", per_column, "interior points per column");
  diagram->add_option("--seed", seed, "sampling seed");
  diagram->add_option("--csv", csv_path, "CSV output path");
  diagram->add_option("--svg", svg_path, "SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(shape, D, r, out_path);
    if (measure->parsed()) return cmd_measure(in_path);
    if (bounds->parsed()) {
      if (x <= 0.0 && bd->count() == 0) throw UsageError("bounds: provide --x or --D");
      return cmd_bounds(x, bd->count() ? D : 0.0, r);
    }
    if (verify->parsed()) return cmd_verify(suite);
    if (diagram->parsed()) {
      if (columns < 2) throw UsageError("diagram: columns must be >= 2");
      if (per_column < 1) throw UsageError("diagram: per-column must be >= 1");
      return cmd_diagram(columns, per_column, seed, csv_path, svg_path);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitUsage;
  } catch (const adr::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitUsage;
  } catch (const adr::CertificationError& e) {
    std::fprintf(stderr, "certification failure: %s\n", e.what());
    return kExitVerifyFail;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const std::runtime_error& e) {
    // file-system level failures surface here (cannot open/write)
    std::string msg = e.what();
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return msg.find("cannot open") != std::string::npos || msg.find("write failed") != std::string::npos
               ? kExitIo
               : kExitVerifyFail;
  }
  return kExitUsage;
}
