#include "hullmap/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hullmap/boundary_map.hpp"
#include "hullmap/io.hpp"
#include "hullmap/normal_fan_dual.hpp"
#include "hullmap/set_metrics.hpp"
#include "hullmap/sphere_sampling.hpp"

namespace hullmap::cli {
namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::string render = "none";
  std::string render_out;
  std::string obj_out;
  std::string summary_out;
  double epsilon = 0.01;
  std::vector<double> epsilons = kDefaultEpsilons;
  int samples = 0;
  std::string strategy;
  std::uint64_t seed = 1;
  std::string cap_center;
  double cap_radius = 0.5;
  int per_facet = 50;
  double tol_dist = -1.0;
  double tol_coplanar = -1.0;
  double tol_tie = -1.0;
  std::string direction;
  std::string isa = "auto";
  bool degenerate = false;
  bool no_timing = false;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || cell.find_first_not_of(" \t", used) != std::string::npos) {
      fail(ErrorCode::InvalidArgument, "bad number '" + cell + "' in list '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "empty list");
  return out;
}

UnitDirection parse_direction(const std::string& text, int dim) {
  const auto v = parse_list(text);
  if (static_cast<int>(v.size()) != dim) {
    fail(ErrorCode::DimensionMismatch, "direction '" + text + "' is not " + std::to_string(dim) + "-dimensional");
  }
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(v.data(), dim);
  if (!(x.norm() > 0.0)) fail(ErrorCode::InvalidArgument, "zero direction");
  return UnitDirection(x);
}

SamplePlan make_plan(const RunConfig& rc, int dim, int default_count) {
  SamplePlan plan = SamplePlan::global(dim, rc.samples > 0 ? rc.samples : default_count, rc.seed);
  if (!rc.strategy.empty()) plan.strategy = parse_strategy(rc.strategy);
  return plan;
}

void emit(const RunConfig& rc, std::ostream& out, const std::string& text) {
  if (rc.output.empty()) {
    out << text;
  } else {
    io::spit(rc.output, text);
  }
}

std::string derived_path(const RunConfig& rc, const std::string& ext) {
  if (!rc.render_out.empty()) return rc.render_out;
  if (rc.output.empty()) fail(ErrorCode::InvalidArgument, "--render needs --render-out or --out");
  const auto dot = rc.output.find_last_of('.');
  const auto slash = rc.output.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? rc.output.substr(0, dot) : rc.output) + ext;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PointConfiguration load(const RunConfig& rc) { return io::read_configuration(rc.input, rc.tol_dist); }

int cmd_approx(const RunConfig& rc, std::ostream& out) {
  const auto config = load(rc);
  validate_map_inputs(config, rc.epsilon);
  SamplePlan plan = make_plan(rc, config.dim(), 1000);
  std::vector<UnitDirection> dirs;
  if (!rc.cap_center.empty()) {
    plan.focus = CapFocus{std::nullopt, rc.cap_radius};
    dirs = sample_near(plan, parse_direction(rc.cap_center, config.dim()));
  } else {
    dirs = sample(plan);
  }
  BatchOptions batch;
  batch.isa = kernels::parse_isa(rc.isa.c_str());
  io::PointTable table{config.dim(), evaluate_flat(config, rc.epsilon, flatten(dirs), batch)};

  if (rc.render == "svg") {
    if (config.dim() != 2) fail(ErrorCode::DimensionUnsupported, "svg rendering needs d = 2");
    io::spit(derived_path(rc, ".svg"), io::render_svg(build_hull(config, rc.tol_coplanar, rc.tol_tie), table.rows));
  } else if (rc.render == "obj") {
    if (config.dim() != 3) fail(ErrorCode::DimensionUnsupported, "obj rendering needs d = 3");
    std::ostringstream obj;
    io::write_obj_points(obj, 3, table.rows);
    io::spit(derived_path(rc, ".obj"), obj.str());
  }
  std::ostringstream csv;
  io::write_points_csv(csv, table);
  emit(rc, out, csv.str());
  return kOk;
}

int cmd_hull(const RunConfig& rc, std::ostream& out) {
  const auto hull = build_hull(load(rc), rc.tol_coplanar, rc.tol_tie);
  emit(rc, out, io::hull_document(hull));
  if (!rc.output.empty()) {
    out << "facets " << hull.facets().size() << ", vertices " << hull.vertices().size();
    if (hull.dim() == 3) out << ", euler " << hull.euler_characteristic();
    out << '\n';
  }
  return kOk;
}

int cmd_dual(const RunConfig& rc, std::ostream& out) {
  const auto hull = build_hull(load(rc), rc.tol_coplanar, rc.tol_tie);
  if (hull.dim() != 3) fail(ErrorCode::DimensionUnsupported, "dual needs d = 3");
  emit(rc, out, io::dual_document(hull));
  if (!rc.obj_out.empty()) {
    std::ostringstream obj;
    io::write_obj_cells(obj, hull, flattened_spherical_dual(hull));
    io::spit(rc.obj_out, obj.str());
  }
  if (!rc.output.empty()) {
    const auto v = dual_combinatorics_check(hull);
    const auto t = outer_normal_transform(hull);
    out << "equivalent " << (v.equivalent ? "true" : "false") << ", flattened_convex "
        << (v.flattened_convex ? "true" : "false") << ", transform " << t.vertices().size()
        << " vertices " << t.facets().size() << " facets\n";
  }
  return kOk;
}

int cmd_converge(const RunConfig& rc, std::ostream& out) {
  const auto config = load(rc);
  for (double e : rc.epsilons) validate_map_inputs(config, e);
  std::ostringstream csv;
  if (rc.degenerate) {
    const auto rows = degenerate_limit_probe(config, rc.epsilons, make_plan(rc, config.dim(), 2000));
    csv << "epsilon,hausdorff,image_to_hull,hull_to_image\n";
    for (const auto& r : rows) {
      csv << num(r.epsilon) << ',' << num(r.hausdorff) << ',' << num(r.image_to_hull) << ','
          << num(r.hull_to_image) << '\n';
    }
    emit(rc, out, csv.str());
    return kOk;
  }
  const auto hull = build_hull(config, rc.tol_coplanar, rc.tol_tie);
  SweepOptions options;
  options.cap_radius = rc.cap_radius;
  options.batch.isa = kernels::parse_isa(rc.isa.c_str());
  auto report = theorem_sweep(config, hull, rc.epsilons, make_plan(rc, config.dim(), 10000),
                              rc.per_facet, options);
  report.config_id = rc.input;
  if (rc.no_timing) {
    for (auto& r : report.rows) r.wall_ms = 0.0;
  }
  io::write_report_csv(csv, report);
  emit(rc, out, csv.str());
  const auto summary = io::report_summary(report);
  if (!rc.summary_out.empty()) {
    io::spit(rc.summary_out, summary);
  } else if (!rc.output.empty()) {
    out << summary;
  }
  return kOk;
}

int cmd_classify(const RunConfig& rc, std::ostream& out) {
  const auto hull = build_hull(load(rc), rc.tol_coplanar, rc.tol_tie);
  const auto n = parse_direction(rc.direction, hull.dim());
  const Face& f = classify_direction(hull, n, rc.tol_tie);
  std::ostringstream text;
  text << describe_face(hull, f.id) << '\n';
  emit(rc, out, text.str());
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--in", rc.input, "points CSV")->required();
  sub->add_option("--out", rc.output, "output path (default: standard output)");
  sub->add_option("--tol-dist", rc.tol_dist, "distinctness tolerance (default 1e-9 x diameter)");
  sub->add_option("--tol-coplanar", rc.tol_coplanar, "coplanarity tolerance (default 1e-9 x diameter)");
  sub->add_option("--tol-tie", rc.tol_tie, "support tie tolerance (default 1e-9 x diameter)");
}

void add_sampling(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--samples", rc.samples, "number of sphere samples")->check(CLI::PositiveNumber);
  sub->add_option("--strategy", rc.strategy, "uniform_grid_2d | fibonacci_3d | gaussian_random");
  sub->add_option("--seed", rc.seed, "seed for random strategies");
  sub->add_option("--cap-radius", rc.cap_radius, "cap angular radius in radians");
  sub->add_option("--isa", rc.isa, "scalar | avx2 | auto")->check(CLI::IsMember({"scalar", "avx2", "auto"}));
}

}  // namespace

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateConfiguration:
    case ErrorCode::RequiresDegenerate:
      return kDegenerate;
    case ErrorCode::Io:
    case ErrorCode::Parse:
      return kIo;
    case ErrorCode::NumericalOverflow:
    case ErrorCode::TooManyPoints:
      return kNumeric;
    case ErrorCode::AmbiguousTie:
      return kAmbiguous;
    default:
      return kValidation;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maps from the sphere onto convex hull boundaries"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* approx = app.add_subcommand("approx", "write f_eps images of sampled directions");
  add_common(approx, rc);
  add_sampling(approx, rc);
  approx->add_option("--eps", rc.epsilon, "epsilon in (0, 1]");
  approx->add_option("--cap-center", rc.cap_center, "sample a cap around this direction, e.g. \"0,0,1\"");
  approx->add_option("--render", rc.render, "svg | obj | none")->check(CLI::IsMember({"svg", "obj", "none"}));
  approx->add_option("--render-out", rc.render_out, "render path (default: --out with the format's extension)");

  auto* hull = app.add_subcommand("hull", "write the hull document");
  add_common(hull, rc);

  auto* dual = app.add_subcommand("dual", "spherical dual, flattened dual, outer normal transform");
  add_common(dual, rc);
  dual->add_option("--obj", rc.obj_out, "flattened dual as OBJ");

  auto* converge = app.add_subcommand("converge", "epsilon sweep of Hausdorff distances");
  add_common(converge, rc);
  add_sampling(converge, rc);
  converge->add_option("--eps-list", [&rc](const CLI::results_t& r) {
    rc.epsilons.clear();
    for (const auto& s : r) {
      for (double v : parse_list(s)) rc.epsilons.push_back(v);
    }
    return true;
  }, "comma separated, strictly decreasing");
  converge->add_option("--per-facet", rc.per_facet, "boundary samples per facet")->check(CLI::PositiveNumber);
  converge->add_option("--summary", rc.summary_out, "summary JSON path");
  converge->add_flag("--degenerate", rc.degenerate, "probe a degenerate configuration against its full hull");
  converge->add_flag("--no-timing", rc.no_timing, "write wall_ms as 0 for reproducible files");

  auto* classify = app.add_subcommand("classify", "face whose normal cone holds a direction");
  add_common(classify, rc);
  classify->add_option("--direction", rc.direction, "direction, e.g. \"1,0\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  try {
    if (approx->parsed()) return cmd_approx(rc, out);
    if (hull->parsed()) return cmd_hull(rc, out);
    if (dual->parsed()) return cmd_dual(rc, out);
    if (converge->parsed()) return cmd_converge(rc, out);
    return cmd_classify(rc, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace hullmap::cli
