#include "hullmap/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "hullmap/error.hpp"

namespace hullmap::io {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size()) {
    fail(ErrorCode::Parse, "line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

std::vector<double> coords(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
}

json points_json(const PointConfiguration& config) {
  json pts = json::array();
  for (int i = 0; i < config.size(); ++i) pts.push_back(coords(config.point(i)));
  return pts;
}

json hull_json(const HullDescription& hull) {
  json doc;
  doc["dim"] = hull.dim();
  doc["points"] = points_json(hull.config());
  doc["coplanarity_tol"] = hull.coplanarity_tol();
  doc["tie_tol"] = hull.tie_tol();
  json classes = json::array();
  for (int i = 0; i < hull.config().size(); ++i) {
    json c = {{"index", i}, {"class", to_string(hull.point_classes()[i])}};
    if (auto f = hull.containing_face(i); f && hull.point_classes()[i] == PointClass::BoundaryNonvertex) {
      c["face"] = *f;
    }
    classes.push_back(c);
  }
  doc["point_classes"] = classes;
  doc["vertices"] = hull.vertices();
  json facets = json::array();
  for (const auto& f : hull.facets()) {
    facets.push_back({{"points", f.points},
                      {"vertices", f.vertex_indices},
                      {"normal", coords(f.outward_normal.coords())},
                      {"offset", f.offset}});
  }
  doc["facets"] = facets;
  json faces = json::array();
  for (const auto& f : hull.faces()) {
    faces.push_back({{"id", f.id},
                     {"dimension", f.dimension},
                     {"vertices", f.vertex_indices},
                     {"incident_facets", f.incident_facets}});
  }
  doc["faces"] = faces;
  json edges = json::array();
  for (auto [sub, super] : hull.lattice_edges()) edges.push_back({sub, super});
  doc["lattice_edges"] = edges;
  doc["f_vector"] = hull.f_vector();
  if (hull.dim() == 3) doc["euler_characteristic"] = hull.euler_characteristic();
  return doc;
}

}  // namespace

std::vector<std::vector<double>> PointTable::as_rows() const {
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < size(); ++r) {
    out.emplace_back(rows.begin() + r * dim, rows.begin() + (r + 1) * dim);
  }
  return out;
}

PointTable parse_points_csv(std::istream& in) {
  PointTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (table.dim == 0) {
      if (cells.size() != 2 || cells[0] != "dim") fail(ErrorCode::Parse, "expected 'dim,<d>' header");
      table.dim = std::atoi(cells[1].c_str());
      if (table.dim < 1 || cells[1] != std::to_string(table.dim)) {
        fail(ErrorCode::Parse, "bad dimension '" + cells[1] + "'");
      }
      continue;
    }
    if (static_cast<int>(cells.size()) != table.dim) {
      fail(ErrorCode::DimensionMismatch, "line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(table.dim) + " coordinates");
    }
    for (const auto& c : cells) table.rows.push_back(parse_double(c, lineno));
  }
  if (table.dim == 0) fail(ErrorCode::Parse, "missing 'dim,<d>' header");
  return table;
}

PointTable read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointTable& table) {
  out << "dim," << table.dim << '\n';
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (int k = 0; k < table.dim; ++k) {
      if (k) out << ',';
      out << fmt(table.rows[r * table.dim + k]);
    }
    out << '\n';
  }
}

void write_points_csv(const std::string& path, const PointTable& table) {
  std::ostringstream ss;
  write_points_csv(ss, table);
  spit(path, ss.str());
}

PointConfiguration read_configuration(const std::string& path, double distinctness_tol) {
  return build_configuration(read_points_csv(path).as_rows(), distinctness_tol);
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "epsilon,outer_dist,inner_dist,n_samples,wall_ms\n";
  for (const auto& r : report.rows) {
    out << fmt(r.epsilon) << ',' << fmt(r.outer_dist) << ',' << fmt(r.inner_dist) << ','
        << r.n_samples << ',' << fmt(r.wall_ms) << '\n';
  }
}

std::vector<SweepRow> parse_report_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (!header) {
      if (line != "epsilon,outer_dist,inner_dist,n_samples,wall_ms") fail(ErrorCode::Parse, "bad report header");
      header = true;
      continue;
    }
    if (cells.size() != 5) fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 5 columns");
    SweepRow r;
    r.epsilon = parse_double(cells[0], lineno);
    r.outer_dist = parse_double(cells[1], lineno);
    r.inner_dist = parse_double(cells[2], lineno);
    r.n_samples = static_cast<std::size_t>(parse_double(cells[3], lineno));
    r.wall_ms = parse_double(cells[4], lineno);
    rows.push_back(r);
  }
  if (!header) fail(ErrorCode::Parse, "empty report");
  return rows;
}

std::string report_summary(const ConvergenceReport& report) {
  json doc;
  doc["config"] = report.config_id;
  doc["diameter"] = report.diameter;
  doc["outer_slope"] = report.outer_slope.slope;
  doc["outer_intercept"] = report.outer_slope.intercept;
  doc["fit_residual"] = report.outer_slope.residual;
  doc["fit_points"] = std::min<std::size_t>(3, report.rows.size());
  return doc.dump(2) + "\n";
}

std::string hull_document(const HullDescription& hull) { return hull_json(hull).dump(2) + "\n"; }

HullDescription parse_hull_document(const std::string& text) {
  try {
    const json doc = json::parse(text);
    std::vector<Point> pts;
    for (const auto& p : doc.at("points")) pts.push_back(vec(p));
    auto config = build_configuration(pts);
    std::vector<Facet> facets;
    for (const auto& f : doc.at("facets")) {
      Facet facet;
      facet.points = f.at("points").get<std::vector<int>>();
      facet.vertex_indices = f.at("vertices").get<std::vector<int>>();
      facet.outward_normal = UnitDirection::from_unit(vec(f.at("normal")));
      facet.offset = f.at("offset").get<double>();
      for (int i : facet.points) {
        if (i < 0 || i >= config.size()) fail(ErrorCode::IndexOutOfRange, "facet point index");
      }
      facets.push_back(std::move(facet));
    }
    return assemble_hull(config, std::move(facets), doc.at("coplanarity_tol").get<double>(),
                         doc.at("tie_tol").get<double>());
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("hull document: ") + e.what());
  }
}

std::string dual_document(const HullDescription& hull) {
  json doc;
  const auto dual = spherical_dual(hull);
  json cells = json::array();
  for (const auto& c : dual.cells) {
    json verts = json::array();
    for (const auto& v : c.vertices) verts.push_back(coords(v.coords()));
    cells.push_back({{"face", c.face},
                     {"dimension", c.dimension},
                     {"facets", c.vertex_facets},
                     {"vertices", verts},
                     {"in_boundary_of", c.in_boundary_of}});
  }
  doc["spherical_dual"] = {{"f_vector", dual.f_vector}, {"cells", cells}};
  json flat = json::array();
  for (const auto& c : flattened_spherical_dual(hull)) {
    json corners = json::array();
    for (const auto& v : c.corners) corners.push_back({v.x(), v.y(), v.z()});
    flat.push_back({{"vertex", c.vertex}, {"facets", c.facets}, {"corners", corners}});
  }
  doc["flattened_dual"] = flat;
  const auto transform = outer_normal_transform(hull);
  doc["outer_normal_transform"] = hull_json(transform);
  const auto verdict = dual_combinatorics_check(hull);
  doc["verdict"] = {{"equivalent", verdict.equivalent},
                    {"flattened_convex", verdict.flattened_convex}};
  return doc.dump(2) + "\n";
}

void write_obj_points(std::ostream& out, int dim, const std::vector<double>& rows) {
  if (dim != 3) fail(ErrorCode::DimensionUnsupported, "OBJ export is for d = 3");
  for (std::size_t r = 0; r < rows.size() / 3; ++r) {
    out << "v " << fmt(rows[3 * r]) << ' ' << fmt(rows[3 * r + 1]) << ' ' << fmt(rows[3 * r + 2]) << '\n';
  }
}

void write_obj_cells(std::ostream& out, const HullDescription& hull,
                     const std::vector<FlatCell>& cells) {
  std::vector<double> rows;
  for (const auto& f : hull.facets()) {
    const auto c = coords(f.outward_normal.coords());
    rows.insert(rows.end(), c.begin(), c.end());
  }
  write_obj_points(out, hull.dim(), rows);
  for (const auto& cell : cells) {
    out << 'f';
    for (int k : cell.facets) out << ' ' << k + 1;
    out << '\n';
  }
}

ObjMesh parse_obj(std::istream& in) {
  ObjMesh mesh;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::string a, b, c;
      if (!(ss >> a >> b >> c)) fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": short vertex");
      for (const auto& t : {a, b, c}) mesh.vertices.push_back(parse_double(t, lineno));
    } else if (tag == "f") {
      std::vector<int> face;
      std::string t;
      while (ss >> t) {
        const int idx = std::atoi(t.substr(0, t.find('/')).c_str());
        if (idx < 1 || static_cast<std::size_t>(idx) > mesh.vertices.size() / 3) {
          fail(ErrorCode::IndexOutOfRange, "line " + std::to_string(lineno) + ": face index");
        }
        face.push_back(idx - 1);
      }
      mesh.faces.push_back(std::move(face));
    }
  }
  return mesh;
}

std::string render_svg(const HullDescription& hull, const std::vector<double>& images) {
  if (hull.dim() != 2) fail(ErrorCode::DimensionUnsupported, "SVG rendering is for d = 2");
  const auto& cfg = hull.config();
  Eigen::Vector2d lo = cfg.point(0), hi = cfg.point(0);
  for (int i = 1; i < cfg.size(); ++i) {
    lo = lo.cwiseMin(Eigen::Vector2d(cfg.point(i)));
    hi = hi.cwiseMax(Eigen::Vector2d(cfg.point(i)));
  }
  const Eigen::Vector2d margin = 0.1 * (hi - lo);
  lo -= margin;
  hi += margin;
  const double width = 600.0;
  const double scale = width / (hi.x() - lo.x());
  const double height = scale * (hi.y() - lo.y());
  auto px = [&](double x, double y) {
    return fmt(scale * (x - lo.x())) + "," + fmt(scale * (hi.y() - y));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& f : hull.facets()) {
    const Point a = cfg.point(f.vertex_indices.front());
    const Point b = cfg.point(f.vertex_indices.back());
    svg << "<line x1=\"" << fmt(scale * (a.x() - lo.x())) << "\" y1=\"" << fmt(scale * (hi.y() - a.y()))
        << "\" x2=\"" << fmt(scale * (b.x() - lo.x())) << "\" y2=\"" << fmt(scale * (hi.y() - b.y()))
        << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  }
  if (!images.empty()) {
    svg << "<polygon fill=\"none\" stroke=\"blue\" stroke-width=\"1\" points=\"";
    for (std::size_t r = 0; r < images.size() / 2; ++r) {
      if (r) svg << ' ';
      svg << px(images[2 * r], images[2 * r + 1]);
    }
    svg << "\"/>\n";
  }
  for (int i = 0; i < cfg.size(); ++i) {
    const Point p = cfg.point(i);
    svg << "<circle cx=\"" << fmt(scale * (p.x() - lo.x())) << "\" cy=\"" << fmt(scale * (hi.y() - p.y()))
        << "\" r=\"3\" fill=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

}  // namespace hullmap::io
