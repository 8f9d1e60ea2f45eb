#include "hullmap/set_metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "hullmap/error.hpp"
#include "hullmap/normal_fan_dual.hpp"

namespace hullmap {
namespace {

double max_nearest(const std::vector<double>& queries, int dim,
                   const kernels::SoaPoints& targets, kernels::Isa isa) {
  std::vector<double> sq(queries.size() / dim);
  kernels::nearest_sq(isa, targets, queries, sq);
  double worst = 0.0;
  for (double v : sq) worst = std::max(worst, v);
  return std::sqrt(worst);
}

void append(std::vector<double>& rows, const Point& p) {
  rows.insert(rows.end(), p.data(), p.data() + p.size());
}

void append(std::vector<double>& rows, const std::vector<UnitDirection>& dirs) {
  for (const auto& n : dirs) append(rows, n.coords());
}

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

FiniteSet::FiniteSet(int dim, std::vector<double> rows) : dim_(dim), rows_(std::move(rows)) {
  if (dim < 1 || rows_.size() % dim != 0) {
    fail(ErrorCode::DimensionMismatch, "row buffer does not match the dimension");
  }
}

FiniteSet FiniteSet::from_points(int dim, const std::vector<Point>& pts) {
  std::vector<double> rows;
  rows.reserve(pts.size() * dim);
  for (const auto& p : pts) {
    if (p.size() != dim) fail(ErrorCode::DimensionMismatch, "point dimension");
    append(rows, p);
  }
  return FiniteSet(dim, std::move(rows));
}

Point FiniteSet::point(std::size_t i) const {
  return Eigen::Map<const Eigen::VectorXd>(rows_.data() + i * dim_, dim_);
}

double directed_hausdorff(const FiniteSet& a, const DistanceOracle& target) {
  if (a.empty()) fail(ErrorCode::EmptySet, "directed Hausdorff of an empty set");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, target(a.point(i)));
  return worst;
}

double directed_hausdorff(const FiniteSet& a, const FiniteSet& b, kernels::Isa isa) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptySet, "directed Hausdorff of an empty set");
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "sets of different dimension");
  const auto targets = kernels::SoaPoints::from_rows(b.dim(), b.rows());
  return max_nearest(a.rows(), a.dim(), targets, isa);
}

double directed_hausdorff(const FiniteSet& a, const HullDescription& hull) {
  return directed_hausdorff(a, [&](const Point& p) { return boundary_distance(hull, p).distance; });
}

double symmetric_hausdorff(const FiniteSet& a, const FiniteSet& b, kernels::Isa isa) {
  return std::max(directed_hausdorff(a, b, isa), directed_hausdorff(b, a, isa));
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t last) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "fit inputs differ in length");
  const std::size_t n = std::min(last, x.size());
  if (n < 2) fail(ErrorCode::InvalidArgument, "a slope needs at least two points");
  const std::size_t first = x.size() - n;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail(ErrorCode::InvalidArgument, "log-log fit needs positive data");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  SlopeFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (fit.intercept + fit.slope * std::log(x[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

ConvergenceReport theorem_sweep(const PointConfiguration& config,
                                const HullDescription& hull,
                                const std::vector<double>& epsilons,
                                const SamplePlan& global_plan,
                                int boundary_per_facet,
                                const SweepOptions& options) {
  if (epsilons.empty()) fail(ErrorCode::InvalidArgument, "empty epsilon list");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    validate_map_inputs(config, epsilons[k]);
    if (k > 0 && !(epsilons[k] < epsilons[k - 1])) {
      fail(ErrorCode::InvalidArgument, "epsilons must be strictly decreasing");
    }
  }
  if (!is_nondegenerate(config)) fail(ErrorCode::DegenerateConfiguration, "sweep needs a full dimensional hull");
  if (global_plan.dim != config.dim()) fail(ErrorCode::DimensionMismatch, "sample plan dimension");
  if (boundary_per_facet < 1) fail(ErrorCode::InvalidArgument, "boundary_per_facet must be >= 1");

  const int d = config.dim();
  const std::vector<double> global = flatten(sample(global_plan));

  std::vector<double> boundary;
  for (const auto& s : sample_boundary(hull, boundary_per_facet, global_plan.seed + 1)) {
    append(boundary, s.point);
  }

  ConvergenceReport report;
  report.diameter = config.diameter();
  for (double eps : epsilons) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> dirs = global;
    const double outer_cap = std::min(options.cap_radius, std::numbers::pi);
    // Facet normals first, then the axes of the lower dimensional cones,
    // where the images move across K within an angle of order eps.
    const double inner = std::min(eps, outer_cap);
    for (std::size_t f = 0; f < hull.facets().size(); ++f) {
      append(dirs, sample_near_nested(hull.facets()[f].outward_normal, outer_cap, inner,
                                      options.cap_count, global_plan.seed + 1000 * (f + 1)));
    }
    if (options.lower_face_caps) {
      for (const auto& face : hull.faces()) {
        if (face.dimension == d - 1) continue;
        append(dirs, sample_near_nested(cone_axis(hull, face.id), outer_cap, inner, options.cap_count,
                                        global_plan.seed + 7919 * (face.id + 1)));
      }
    }
    const auto images = evaluate_flat(config, eps, dirs, options.batch);

    SweepRow row;
    row.epsilon = eps;
    double outer = 0.0;
    for (std::size_t r = 0; r < dirs.size() / d; ++r) {
      const Point p = Eigen::Map<const Eigen::VectorXd>(images.data() + r * d, d);
      outer = std::max(outer, boundary_distance(hull, p).distance);
    }
    row.outer_dist = outer;
    const auto targets = kernels::SoaPoints::from_rows(d, images);
    row.inner_dist = max_nearest(boundary, d, targets, options.batch.isa);
    row.n_samples = dirs.size() / d;
    row.n_boundary = boundary.size() / d;
    row.wall_ms = elapsed_ms(start);
    report.rows.push_back(row);
  }

  std::vector<double> xs, ys;
  for (const auto& r : report.rows) {
    xs.push_back(r.epsilon);
    ys.push_back(r.outer_dist);
  }
  if (xs.size() >= 2) report.outer_slope = fit_loglog(xs, ys, 3);
  return report;
}

std::vector<ProbeRow> face_limit_probe(const PointConfiguration& config,
                                       const HullDescription& hull, int face_id,
                                       const std::vector<double>& epsilons,
                                       const SamplePlan& probe_plan) {
  const Face& face = hull.face(face_id);
  if (face.dimension < 1) fail(ErrorCode::InvalidArgument, "face probes need dim F >= 1");
  const int d = config.dim();
  const int focus = probe_plan.focus && probe_plan.focus->face ? *probe_plan.focus->face : face_id;
  const double radius = probe_plan.focus ? probe_plan.focus->cap_radius : 0.5;
  const UnitDirection center = cone_axis(hull, focus);

  std::vector<Point> face_pts = sample_face(hull, face_id, std::max(200, probe_plan.count), probe_plan.seed);
  for (int v : face.vertex_indices) face_pts.push_back(config.point(v));
  const FiniteSet face_set = FiniteSet::from_points(d, face_pts);

  std::vector<ProbeRow> rows;
  for (double eps : epsilons) {
    validate_map_inputs(config, eps);
    const auto caps = sample_near_nested(center, radius, std::min(eps, radius),
                                         probe_plan.count, probe_plan.seed + 7);
    std::vector<double> dirs;
    for (const auto& n : caps) {
      try {
        if (w_set_contains(hull, face_id, n)) append(dirs, n.coords());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AmbiguousTie) throw;
      }
    }
    if (dirs.empty()) fail(ErrorCode::EmptyProbe, "no probe direction lies in W_F");
    const FiniteSet images(d, evaluate_flat(config, eps, dirs));

    ProbeRow row;
    row.epsilon = eps;
    row.n_probe = images.size();
    row.image_to_face = directed_hausdorff(
        images, [&](const Point& p) { return face_distance(hull, face_id, p).distance; });
    row.face_to_image = directed_hausdorff(face_set, images);
    rows.push_back(row);
  }
  return rows;
}

std::vector<DegenerateRow> degenerate_limit_probe(const PointConfiguration& config,
                                                  const std::vector<double>& epsilons,
                                                  const SamplePlan& plan) {
  if (is_nondegenerate(config)) fail(ErrorCode::RequiresDegenerate, "configuration spans R^d");
  if (plan.dim != config.dim()) fail(ErrorCode::DimensionMismatch, "sample plan dimension");
  const int d = config.dim();
  const int n = config.size();
  const int k = affine_rank(config);

  // Affine frame of the span: centroid plus leading singular vectors.
  Point centroid = Point::Zero(d);
  for (int i = 0; i < n; ++i) centroid += config.point(i);
  centroid /= n;
  Eigen::MatrixXd centred(d, n);
  for (int i = 0; i < n; ++i) centred.col(i) = config.point(i) - centroid;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeFullU);
  const Eigen::MatrixXd span = svd.matrixU().leftCols(k);
  const Eigen::MatrixXd normal = svd.matrixU().rightCols(d - k);

  std::vector<Point> local;
  for (int i = 0; i < n; ++i) local.push_back(span.transpose() * (config.point(i) - centroid));
  const HullDescription inner_hull = build_hull(build_configuration(local));

  // K itself, sampled on a grid in the span.
  Eigen::VectorXd lo = local.front(), hi = local.front();
  for (const auto& y : local) {
    lo = lo.cwiseMin(y);
    hi = hi.cwiseMax(y);
  }
  const int per_axis = std::max(2, static_cast<int>(std::ceil(std::pow(20000.0, 1.0 / k))));
  std::vector<Point> hull_pts;
  std::vector<int> idx(k, 0);
  const double slack = 1e-12 * config.diameter();
  for (;;) {
    Eigen::VectorXd y(k);
    for (int c = 0; c < k; ++c) y[c] = lo[c] + (hi[c] - lo[c]) * idx[c] / (per_axis - 1);
    if (contains(inner_hull, y, slack)) hull_pts.push_back(centroid + span * y);
    int c = 0;
    while (c < k && ++idx[c] == per_axis) idx[c++] = 0;
    if (c == k) break;
  }
  for (int i = 0; i < n; ++i) hull_pts.push_back(config.point(i));
  const FiniteSet hull_set = FiniteSet::from_points(d, hull_pts);

  // Cap centres orthogonal to the span, where the images sweep across K.
  std::vector<UnitDirection> centres;
  if (d - k == 1) {
    centres.emplace_back(normal.col(0));
    centres.emplace_back(-normal.col(0));
  } else {
    SamplePlan around = SamplePlan::global(d - k, 16, plan.seed + 3);
    if (d - k == 2) around.strategy = SampleStrategy::UniformGrid2d;
    for (const auto& u : sample(around)) centres.emplace_back(normal * u.coords());
  }

  const std::vector<double> global = flatten(sample(plan));
  std::vector<DegenerateRow> rows;
  for (double eps : epsilons) {
    validate_map_inputs(config, eps);
    std::vector<double> dirs = global;
    for (std::size_t c = 0; c < centres.size(); ++c) {
      append(dirs, sample_near_nested(centres[c], 0.5, std::min(eps, 0.5), 1000,
                                      plan.seed + 100 * (c + 1)));
    }
    const FiniteSet images(d, evaluate_flat(config, eps, dirs));

    DegenerateRow row;
    row.epsilon = eps;
    row.image_to_hull = directed_hausdorff(images, [&](const Point& p) {
      const Eigen::VectorXd y = span.transpose() * (p - centroid);
      const double off = (p - centroid - span * y).norm();
      const double in = contains(inner_hull, y) ? 0.0 : boundary_distance(inner_hull, y).distance;
      return std::hypot(off, in);
    });
    row.hull_to_image = directed_hausdorff(hull_set, images);
    row.hausdorff = std::max(row.image_to_hull, row.hull_to_image);
    rows.push_back(row);
  }
  return rows;
}

double graph_map(double epsilon, double x) {
  return 2.0 / std::numbers::pi * (1.0 - epsilon) * std::atan(x / epsilon);
}

std::vector<GraphRow> graph_limit_demo(const std::vector<double>& epsilons,
                                       const std::vector<double>& x_grid) {
  const std::size_t m = x_grid.size();
  if (m < 2 || !std::is_sorted(x_grid.begin(), x_grid.end())) {
    fail(ErrorCode::InvalidArgument, "x grid must be increasing with at least two points");
  }
  const double L = x_grid.back();
  if (L < 1.0 || std::abs(x_grid.front() + L) > 1e-12 * L) {
    fail(ErrorCode::InvalidArgument, "x grid must span a symmetric interval [-L, L] with L >= 1");
  }

  // Limit curve: bottom ray, vertical segment, top ray, truncated to [-L, L].
  const Eigen::Vector2d c0(-L, -1.0), c1(0.0, -1.0), c2(0.0, 1.0), c3(L, 1.0);
  std::vector<Eigen::Vector2d> curve;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = static_cast<double>(i) / (m - 1);
    curve.emplace_back(c0 + t * (c1 - c0));
    curve.emplace_back(c1 + t * (c2 - c1));
    curve.emplace_back(c2 + t * (c3 - c2));
  }

  std::vector<GraphRow> rows;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || eps > 1.0) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1]");
    std::vector<Eigen::Vector2d> graph;
    for (double x : x_grid) graph.emplace_back(x, graph_map(eps, x));

    double graph_to_curve = 0.0;
    for (const auto& g : graph) {
      const double dist = std::min({segment_distance(g, c0, c1), segment_distance(g, c1, c2),
                                    segment_distance(g, c2, c3)});
      graph_to_curve = std::max(graph_to_curve, dist);
    }

    // Graph segments are ordered by x; only those within the current best
    // distance in x can improve on it.
    double curve_to_graph = 0.0;
    for (const auto& q : curve) {
      auto it = std::upper_bound(x_grid.begin(), x_grid.end(), q.x());
      std::size_t s = it == x_grid.begin() ? 0 : static_cast<std::size_t>(it - x_grid.begin()) - 1;
      s = std::min(s, m - 2);
      double best = segment_distance(q, graph[s], graph[s + 1]);
      const std::size_t left = static_cast<std::size_t>(
          std::lower_bound(x_grid.begin(), x_grid.end(), q.x() - best) - x_grid.begin());
      const std::size_t right = static_cast<std::size_t>(
          std::upper_bound(x_grid.begin(), x_grid.end(), q.x() + best) - x_grid.begin());
      for (std::size_t t = left == 0 ? 0 : left - 1; t + 1 < m && t <= right; ++t) {
        best = std::min(best, segment_distance(q, graph[t], graph[t + 1]));
      }
      curve_to_graph = std::max(curve_to_graph, best);
    }

    GraphRow row;
    row.epsilon = eps;
    row.hausdorff = std::max(graph_to_curve, curve_to_graph);
    row.range_min = graph.front().y();
    row.range_max = graph.back().y();
    for (const auto& g : graph) {
      row.range_min = std::min(row.range_min, g.y());
      row.range_max = std::max(row.range_max, g.y());
    }
    row.range_tol = 2.0 / std::numbers::pi * (1.0 - eps) * eps / L;
    rows.push_back(row);
  }
  return rows;
}

std::vector<int> concave_turns(const std::vector<Eigen::Vector2d>& polyline, double rel_tol) {
  const int m = static_cast<int>(polyline.size());
  std::vector<int> out;
  if (m < 3) return out;
  auto cross = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
  };
  double area = 0.0;
  for (int i = 0; i < m; ++i) area += cross(polyline[i], polyline[(i + 1) % m]);
  const double orient = area >= 0.0 ? 1.0 : -1.0;
  for (int i = 0; i < m; ++i) {
    const Eigen::Vector2d a = polyline[i] - polyline[(i + m - 1) % m];
    const Eigen::Vector2d b = polyline[(i + 1) % m] - polyline[i];
    if (orient * cross(a, b) < -rel_tol * a.norm() * b.norm()) out.push_back(i);
  }
  return out;
}

std::vector<int> nonconvexity_probe(const PointConfiguration& config, double epsilon,
                                    const SamplePlan& plan) {
  if (config.dim() != 2 || plan.dim != 2) {
    fail(ErrorCode::DimensionUnsupported, "the turning test is planar");
  }
  if (plan.strategy != SampleStrategy::UniformGrid2d) {
    fail(ErrorCode::InvalidArgument, "the turning test needs angularly ordered samples");
  }
  const auto images = evaluate_flat(config, epsilon, flatten(sample(plan)));
  std::vector<Eigen::Vector2d> polyline;
  for (std::size_t r = 0; r < images.size() / 2; ++r) {
    polyline.emplace_back(images[2 * r], images[2 * r + 1]);
  }
  return concave_turns(polyline);
}

}  // namespace hullmap
