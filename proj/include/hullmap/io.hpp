#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hullmap/hull_oracle.hpp"
#include "hullmap/normal_fan_dual.hpp"
#include "hullmap/set_metrics.hpp"

namespace hullmap::io {

/// Rows of a `dim,<d>` CSV file.
struct PointTable {
  int dim = 0;
  std::vector<double> rows;  // row-major

  std::size_t size() const { return dim ? rows.size() / dim : 0; }
  std::vector<std::vector<double>> as_rows() const;
};

PointTable parse_points_csv(std::istream& in);
PointTable read_points_csv(const std::string& path);
void write_points_csv(std::ostream& out, const PointTable& table);
void write_points_csv(const std::string& path, const PointTable& table);

PointConfiguration read_configuration(const std::string& path, double distinctness_tol = -1.0);

/// epsilon,outer_dist,inner_dist,n_samples,wall_ms
void write_report_csv(std::ostream& out, const ConvergenceReport& report);
std::vector<SweepRow> parse_report_csv(std::istream& in);
std::string report_summary(const ConvergenceReport& report);

std::string hull_document(const HullDescription& hull);
HullDescription parse_hull_document(const std::string& text);

std::string dual_document(const HullDescription& hull);

/// `v` lines only.
void write_obj_points(std::ostream& out, int dim, const std::vector<double>& rows);
/// One polygon per flattened dual cell over the facet normals.
void write_obj_cells(std::ostream& out, const HullDescription& hull,
                     const std::vector<FlatCell>& cells);

struct ObjMesh {
  std::vector<double> vertices;  // n x 3
  std::vector<std::vector<int>> faces;  // 0-based
};
ObjMesh parse_obj(std::istream& in);

/// Planar picture: input points, hull edges and the image polyline in
/// sample order. Viewport is the hull bounding box plus a 10% margin.
std::string render_svg(const HullDescription& hull, const std::vector<double>& images);

std::string slurp(const std::string& path);
void spit(const std::string& path, const std::string& text);

}  // namespace hullmap::io
