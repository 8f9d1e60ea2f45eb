#include "hullmap/hull_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hullmap/error.hpp"

namespace hullmap {
namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Orthonormal basis (d x m) of the span of x_p - x_{p0} over the given points.
Eigen::MatrixXd span_basis(const PointConfiguration& cfg, const std::vector<int>& pts, int m) {
  const int d = cfg.dim();
  if (m == 0 || pts.size() < 2) return Eigen::MatrixXd(d, 0);
  Eigen::MatrixXd diffs(static_cast<int>(pts.size()) - 1, d);
  const Point o = cfg.point(pts[0]);
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.row(k - 1) = (cfg.point(pts[k]) - o).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullV);
  return svd.matrixV().leftCols(m);
}

Eigen::VectorXd project_onto_span(const Eigen::MatrixXd& basis, const Eigen::VectorXd& v) {
  if (basis.cols() == 0) return Eigen::VectorXd::Zero(v.size());
  return basis * (basis.transpose() * v);
}

template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

double support(const PointConfiguration& cfg, const UnitDirection& n, int i) {
  const auto x = cfg.point_span(i);
  double s = 0.0;
  for (int k = 0; k < cfg.dim(); ++k) s += n[k] * x[k];
  return s;
}

}  // namespace

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Vertex: return "vertex";
    case PointClass::BoundaryNonvertex: return "boundary_nonvertex";
    case PointClass::Interior: return "interior";
  }
  return "?";
}

bool Face::contains_face(const Face& other) const { return is_subset(other.points, points); }

std::vector<int> HullDescription::vertices() const {
  std::vector<int> v;
  for (int i = 0; i < static_cast<int>(classes_.size()); ++i) {
    if (classes_[i] == PointClass::Vertex) v.push_back(i);
  }
  return v;
}

std::optional<int> HullDescription::find_face(const std::vector<int>& sorted_points) const {
  for (const auto& f : faces_) {
    if (f.points == sorted_points) return f.id;
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> HullDescription::lattice_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (const auto& f : faces_) {
    for (int s : f.subfaces) edges.emplace_back(s, f.id);
  }
  return edges;
}

std::vector<int> HullDescription::f_vector() const {
  std::vector<int> counts(dim(), 0);
  for (const auto& f : faces_) ++counts[f.dimension];
  return counts;
}

int HullDescription::euler_characteristic() const {
  int chi = 0;
  const auto fv = f_vector();
  for (int m = 0; m < static_cast<int>(fv.size()); ++m) chi += (m % 2 == 0 ? 1 : -1) * fv[m];
  return chi;
}

int hull_point_limit(int dim) {
  switch (dim) {
    case 1: return 1000;
    case 2: return 60;
    case 3: return 30;
    case 4: return 20;
    case 5: return 16;
    case 6: return 14;
    default: return 0;
  }
}

HullDescription build_hull(const PointConfiguration& config, double coplanarity_tol,
                           double tie_tol) {
  const int d = config.dim();
  const int n = config.size();
  if (d > 6) fail(ErrorCode::DimensionUnsupported, "hulls are limited to d <= 6");
  if (n > hull_point_limit(d)) {
    fail(ErrorCode::TooManyPoints, std::to_string(n) + " points exceed the brute-force limit of " +
                                       std::to_string(hull_point_limit(d)) + " for d = " +
                                       std::to_string(d));
  }
  if (!is_nondegenerate(config)) {
    fail(ErrorCode::DegenerateConfiguration, "points lie in a proper affine subspace");
  }
  const double tol = coplanarity_tol < 0.0 ? kDefaultRelativeTol * config.diameter() : coplanarity_tol;
  const double ttol = tie_tol < 0.0 ? kDefaultRelativeTol * config.diameter() : tie_tol;

  std::map<std::vector<int>, Facet> found;
  std::vector<double> h(n);
  for_each_combination(n, d, [&](const std::vector<int>& combo) {
    const Point base = config.point(combo[0]);
    Eigen::VectorXd normal(d);
    if (d == 1) {
      normal[0] = 1.0;
    } else {
      Eigen::MatrixXd a(d - 1, d);
      for (int k = 1; k < d; ++k) a.row(k - 1) = (config.point(combo[k]) - base).transpose();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv[d - 2] <= 1e-9 * sv[0]) return;
      normal = svd.matrixV().col(d - 1);
    }
    bool pos = false, neg = false;
    for (int i = 0; i < n; ++i) {
      h[i] = normal.dot(config.point(i) - base);
      pos |= h[i] > tol;
      neg |= h[i] < -tol;
    }
    if (pos == neg) return;
    if (pos) normal = -normal;
    std::vector<int> on;
    for (int i = 0; i < n; ++i) {
      if (std::abs(h[i]) <= tol) on.push_back(i);
    }
    if (found.count(on)) return;

    // Refit against every on-plane point so the facet does not depend on
    // which d-subset discovered it.
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i : on) centroid += config.point(i);
    centroid /= static_cast<double>(on.size());
    Eigen::MatrixXd centred(static_cast<int>(on.size()), d);
    for (std::size_t r = 0; r < on.size(); ++r) centred.row(r) = (config.point(on[r]) - centroid).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> fit(centred, Eigen::ComputeFullV);
    Eigen::VectorXd refit = fit.matrixV().col(d - 1);
    if (refit.dot(normal) < 0.0) refit = -refit;
    double offset = refit.dot(centroid);
    bool supporting = true;
    for (int i = 0; i < n && supporting; ++i) {
      supporting = refit.dot(config.point(i)) <= offset + tol;
    }
    if (!supporting) {
      refit = normal;
      offset = normal.dot(base);
    }
    Facet f;
    f.points = on;
    f.outward_normal = UnitDirection(refit);
    f.offset = offset;
    found.emplace(on, std::move(f));
  });

  std::vector<Facet> facets;
  for (auto& [key, f] : found) facets.push_back(std::move(f));
  return assemble_hull(config, std::move(facets), tol, ttol);
}

HullDescription assemble_hull(const PointConfiguration& config, std::vector<Facet> facets,
                              double coplanarity_tol, double tie_tol) {
  const int d = config.dim();
  const int n = config.size();
  HullDescription hull;
  hull.config_ = config;
  hull.coplanarity_tol_ = coplanarity_tol;
  hull.tie_tol_ = tie_tol;
  std::sort(facets.begin(), facets.end(),
            [](const Facet& a, const Facet& b) { return a.points < b.points; });

  // Faces are exactly the nonempty intersections of facet point sets.
  std::vector<std::vector<int>> sets;
  std::set<std::vector<int>> seen;
  for (const auto& f : facets) {
    if (seen.insert(f.points).second) sets.push_back(f.points);
  }
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      auto inter = intersect(sets[a], sets[b]);
      if (!inter.empty() && seen.insert(inter).second) sets.push_back(std::move(inter));
    }
  }

  std::vector<std::pair<int, std::vector<int>>> ranked;
  for (auto& s : sets) {
    std::vector<Point> pts;
    for (int i : s) pts.push_back(config.point(i));
    ranked.emplace_back(affine_rank(pts), std::move(s));
  }
  std::sort(ranked.begin(), ranked.end());

  // Point classes: a vertex has incident facet normals spanning R^d.
  hull.classes_.assign(n, PointClass::Interior);
  for (int i = 0; i < n; ++i) {
    std::vector<Eigen::VectorXd> normals;
    for (const auto& f : facets) {
      if (std::binary_search(f.points.begin(), f.points.end(), i)) normals.push_back(f.outward_normal.coords());
    }
    if (normals.empty()) continue;
    Eigen::MatrixXd m(static_cast<int>(normals.size()), d);
    for (std::size_t r = 0; r < normals.size(); ++r) m.row(r) = normals[r].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k) rank += sv[k] > 1e-9 * sv[0];
    hull.classes_[i] = rank == d ? PointClass::Vertex : PointClass::BoundaryNonvertex;
  }

  auto& faces = hull.faces_;
  for (auto& [rank, pts] : ranked) {
    Face f;
    f.id = static_cast<int>(faces.size());
    f.dimension = rank;
    f.points = pts;
    for (int i : pts) {
      if (hull.classes_[i] == PointClass::Vertex) f.vertex_indices.push_back(i);
    }
    for (int k = 0; k < static_cast<int>(facets.size()); ++k) {
      if (is_subset(pts, facets[k].points)) f.incident_facets.push_back(k);
    }
    faces.push_back(std::move(f));
  }
  for (auto& f : faces) {
    for (auto& g : faces) {
      if (g.dimension == f.dimension - 1 && is_subset(g.points, f.points)) {
        f.subfaces.push_back(g.id);
        g.superfaces.push_back(f.id);
      }
    }
  }
  for (auto& f : faces) {
    f.frame.origin = config.point(f.points.front());
    f.frame.basis = span_basis(config, f.points, f.dimension);
  }
  for (auto& f : faces) {
    for (int gid : f.subfaces) {
      const Face& g = faces[gid];
      Eigen::VectorXd best = Eigen::VectorXd::Zero(d);
      for (int a : f.points) {
        if (std::binary_search(g.points.begin(), g.points.end(), a)) continue;
        Eigen::VectorXd w = project_onto_span(f.frame.basis, config.point(a) - g.frame.origin);
        w -= project_onto_span(g.frame.basis, w);
        if (w.norm() > best.norm()) best = w;
      }
      const Eigen::VectorXd u = -best.normalized();
      f.frame.side_normals.push_back(u);
      f.frame.side_offsets.push_back(u.dot(g.frame.origin));
    }
  }

  for (std::size_t k = 0; k < facets.size(); ++k) {
    facets[k].vertex_indices.clear();
    for (int i : facets[k].points) {
      if (hull.classes_[i] == PointClass::Vertex) facets[k].vertex_indices.push_back(i);
    }
    hull.facet_faces_.push_back(*hull.find_face(facets[k].points));
  }
  hull.facets_ = std::move(facets);

  hull.containing_.assign(n, std::nullopt);
  for (int i = 0; i < n; ++i) {
    if (hull.classes_[i] == PointClass::Interior) continue;
    std::optional<std::vector<int>> acc;
    for (const auto& f : hull.facets_) {
      if (!std::binary_search(f.points.begin(), f.points.end(), i)) continue;
      acc = acc ? intersect(*acc, f.points) : f.points;
    }
    hull.containing_[i] = hull.find_face(*acc);
  }
  return hull;
}

const Face& classify_direction(const HullDescription& hull, const UnitDirection& n,
                               double tie_tol) {
  const auto& cfg = hull.config();
  if (n.dim() != cfg.dim()) fail(ErrorCode::DimensionMismatch, "direction dimension");
  const double tol = tie_tol < 0.0 ? hull.tie_tol() : tie_tol;
  std::vector<double> s(cfg.size());
  double smax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.size(); ++i) {
    s[i] = support(cfg, n, i);
    smax = std::max(smax, s[i]);
  }
  std::vector<int> top;
  for (int i = 0; i < cfg.size(); ++i) {
    if (s[i] >= smax - tol) top.push_back(i);
  }
  if (auto id = hull.find_face(top)) return hull.face(*id);

  std::ostringstream msg;
  msg << "maximizers {";
  for (std::size_t k = 0; k < top.size(); ++k) msg << (k ? "," : "") << top[k];
  msg << "} do not form a face; competing faces:";
  for (const auto& f : hull.faces()) {
    const auto common = intersect(f.points, top);
    if (common.empty()) continue;
    bool minimal_cover = is_subset(top, f.points);
    bool inside_top = is_subset(f.points, top);
    if (minimal_cover || inside_top) msg << " " << describe_face(hull, f.id);
  }
  fail(ErrorCode::AmbiguousTie, msg.str());
}

double support_margin(const HullDescription& hull, const UnitDirection& n, double tie_tol) {
  const auto& cfg = hull.config();
  const double tol = tie_tol < 0.0 ? hull.tie_tol() : tie_tol;
  std::vector<double> s(cfg.size());
  double smax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.size(); ++i) {
    s[i] = support(cfg, n, i);
    smax = std::max(smax, s[i]);
  }
  double rest = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.size(); ++i) {
    if (s[i] < smax - tol) rest = std::max(rest, s[i]);
  }
  return smax - rest;
}

bool in_normal_spherical_polytope(const PointConfiguration& config, int i,
                                  const UnitDirection& n, bool strict) {
  if (i < 0 || i >= config.size()) fail(ErrorCode::IndexOutOfRange, "point index " + std::to_string(i));
  for (int j = 0; j < config.size(); ++j) {
    if (j == i) continue;
    const auto a = config.pair_direction(i, j);
    double dot = 0.0;
    for (int k = 0; k < config.dim(); ++k) dot += n[k] * a[k];
    if (strict ? dot >= 0.0 : dot > 0.0) return false;
  }
  return true;
}

namespace {

FaceDistance face_distance_rec(const HullDescription& hull, int fid, const Point& p,
                               std::vector<std::optional<FaceDistance>>& memo) {
  if (memo[fid]) return *memo[fid];
  const Face& f = hull.face(fid);
  FaceDistance result;
  if (f.dimension == 0) {
    result = {(p - f.frame.origin).norm(), fid};
  } else {
    const Eigen::VectorXd q = f.frame.origin + project_onto_span(f.frame.basis, p - f.frame.origin);
    std::vector<int> violated;
    for (std::size_t k = 0; k < f.subfaces.size(); ++k) {
      if (f.frame.side_normals[k].dot(q) > f.frame.side_offsets[k] + hull.coplanarity_tol()) {
        violated.push_back(f.subfaces[k]);
      }
    }
    if (violated.empty()) {
      result = {(p - q).norm(), fid};
    } else {
      result.distance = std::numeric_limits<double>::infinity();
      for (int g : violated) {
        const auto r = face_distance_rec(hull, g, p, memo);
        if (r.distance < result.distance) result = r;
      }
    }
  }
  memo[fid] = result;
  return result;
}

}  // namespace

FaceDistance face_distance(const HullDescription& hull, int face_id, const Point& p) {
  std::vector<std::optional<FaceDistance>> memo(hull.faces().size());
  return face_distance_rec(hull, face_id, p, memo);
}

double min_facet_slack(const HullDescription& hull, const Point& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : hull.facets()) best = std::min(best, f.offset - f.outward_normal.coords().dot(p));
  return best;
}

double combination_depth(const HullDescription& hull, const std::vector<double>& lambdas) {
  const auto& cfg = hull.config();
  if (static_cast<int>(lambdas.size()) != cfg.size()) fail(ErrorCode::DimensionMismatch, "one weight per point");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : hull.facets()) {
    // Points on the facet contribute exactly zero.
    double depth = 0.0;
    for (int j = 0; j < cfg.size(); ++j) {
      if (std::binary_search(f.points.begin(), f.points.end(), j)) continue;
      const double slack = f.offset - f.outward_normal.coords().dot(cfg.point(j));
      depth += lambdas[j] * std::max(0.0, slack);
    }
    best = std::min(best, depth);
  }
  return best;
}

bool contains(const HullDescription& hull, const Point& p, double tol) {
  return min_facet_slack(hull, p) >= -tol;
}

FaceDistance boundary_distance(const HullDescription& hull, const Point& p) {
  if (p.size() != hull.dim()) fail(ErrorCode::DimensionMismatch, "point dimension");
  std::vector<std::optional<FaceDistance>> memo(hull.faces().size());
  const auto& facets = hull.facets();
  double best_slack = std::numeric_limits<double>::infinity();
  int best_facet = -1;
  for (int k = 0; k < static_cast<int>(facets.size()); ++k) {
    const double slack = facets[k].offset - facets[k].outward_normal.coords().dot(p);
    if (slack < best_slack) {
      best_slack = slack;
      best_facet = k;
    }
  }
  if (best_slack >= 0.0) {
    // Inside K the nearest boundary point is the foot on the closest facet
    // hyperplane.
    const auto r = face_distance_rec(hull, hull.facet_face(best_facet), p, memo);
    return {best_slack, r.face};
  }
  FaceDistance best{std::numeric_limits<double>::infinity(), -1};
  for (int k = 0; k < static_cast<int>(facets.size()); ++k) {
    const auto r = face_distance_rec(hull, hull.facet_face(k), p, memo);
    if (r.distance < best.distance) best = r;
  }
  return best;
}

std::vector<std::vector<int>> triangulate_face(const HullDescription& hull, int face_id) {
  const Face& f = hull.face(face_id);
  if (f.dimension == 0) return {{f.vertex_indices.front()}};
  const int apex = f.vertex_indices.front();
  std::vector<std::vector<int>> out;
  for (int g : f.subfaces) {
    const Face& sub = hull.face(g);
    if (std::binary_search(sub.vertex_indices.begin(), sub.vertex_indices.end(), apex)) continue;
    for (auto simplex : triangulate_face(hull, g)) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

namespace {

double simplex_volume(const PointConfiguration& cfg, const std::vector<int>& s) {
  const int m = static_cast<int>(s.size()) - 1;
  if (m == 0) return 1.0;
  Eigen::MatrixXd e(cfg.dim(), m);
  for (int k = 0; k < m; ++k) e.col(k) = cfg.point(s[k + 1]) - cfg.point(s[0]);
  const double det = (e.transpose() * e).determinant();
  double fact = 1.0;
  for (int k = 2; k <= m; ++k) fact *= k;
  return std::sqrt(std::max(0.0, det)) / fact;
}

std::vector<Point> sample_face_rng(const HullDescription& hull, int face_id, int count,
                                   std::mt19937_64& rng) {
  const auto& cfg = hull.config();
  const auto simplices = triangulate_face(hull, face_id);
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& s : simplices) {
    total += simplex_volume(cfg, s);
    cumulative.push_back(total);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Point> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    const double pick = unif(rng) * total;
    std::size_t which = std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin();
    which = std::min(which, simplices.size() - 1);
    const auto& s = simplices[which];
    std::vector<double> w(s.size());
    double sum = 0.0;
    for (auto& x : w) sum += (x = expo(rng));
    Point p = Point::Zero(cfg.dim());
    for (std::size_t k = 0; k < s.size(); ++k) p += (w[k] / sum) * cfg.point(s[k]);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<Point> sample_face(const HullDescription& hull, int face_id, int count,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_face_rng(hull, face_id, count, rng);
}

std::vector<BoundarySample> sample_boundary(const HullDescription& hull, int per_facet,
                                            std::uint64_t seed) {
  if (per_facet < 1) fail(ErrorCode::InvalidArgument, "per_facet must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<BoundarySample> out;
  for (std::size_t k = 0; k < hull.facets().size(); ++k) {
    const int fid = hull.facet_face(static_cast<int>(k));
    for (auto& p : sample_face_rng(hull, fid, per_facet, rng)) out.push_back({std::move(p), fid});
  }
  return out;
}

std::string describe_face(const HullDescription& hull, int face_id) {
  const Face& f = hull.face(face_id);
  std::ostringstream os;
  if (f.dimension == 0) {
    os << "vertex";
  } else if (f.dimension == hull.dim() - 1 && f.dimension >= 2) {
    os << "facet";
  } else if (f.dimension == 1) {
    os << "edge";
  } else {
    os << f.dimension << "-face";
  }
  os << " {";
  for (std::size_t k = 0; k < f.points.size(); ++k) os << (k ? "," : "") << f.points[k];
  os << "}";
  return os.str();
}

}  // namespace hullmap
