#include "hullmap/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hullmap/error.hpp"

namespace hullmap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NumericalOverflow: return "NumericalOverflow";
    case ErrorCode::StrategyDimensionMismatch: return "StrategyDimensionMismatch";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::AmbiguousTie: return "AmbiguousTie";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptyProbe: return "EmptyProbe";
    case ErrorCode::RequiresDegenerate: return "RequiresDegenerate";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Parse: return "ParseError";
  }
  return "Unknown";
}

UnitDirection::UnitDirection(const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (v.size() == 0 || !(norm > 0.0) || !std::isfinite(norm)) {
    fail(ErrorCode::InvalidArgument, "direction must be a nonzero finite vector");
  }
  coords_ = v / norm;
}

UnitDirection UnitDirection::from_unit(const Eigen::VectorXd& v) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "vector is not unit length");
  }
  UnitDirection u;
  u.coords_ = v;
  return u;
}

Point PointConfiguration::point(int i) const {
  if (i < 0 || i >= count_) {
    fail(ErrorCode::IndexOutOfRange, "point index " + std::to_string(i));
  }
  return Eigen::Map<const Eigen::VectorXd>(
      coords_.data() + static_cast<std::size_t>(i) * dim_, dim_);
}

PointConfiguration build_configuration(
    const std::vector<std::vector<double>>& raw_points,
    double distinctness_tol) {
  if (raw_points.size() < 2) {
    fail(ErrorCode::InvalidArgument, "a configuration needs at least 2 points");
  }
  const std::size_t d = raw_points.front().size();
  if (d == 0) fail(ErrorCode::DimensionMismatch, "points have dimension 0");
  for (const auto& p : raw_points) {
    if (p.size() != d) {
      fail(ErrorCode::DimensionMismatch,
           "expected dimension " + std::to_string(d) + ", got " +
               std::to_string(p.size()));
    }
    for (double c : p) {
      if (!std::isfinite(c)) fail(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
  }

  PointConfiguration cfg;
  cfg.dim_ = static_cast<int>(d);
  cfg.count_ = static_cast<int>(raw_points.size());
  const int n = cfg.count_;
  cfg.coords_.reserve(n * d);
  for (const auto& p : raw_points) cfg.coords_.insert(cfg.coords_.end(), p.begin(), p.end());

  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  double diam = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = raw_points[j][k] - raw_points[i][k];
        s += diff * diff;
      }
      const double r = std::sqrt(s);
      dist[i * n + j] = dist[j * n + i] = r;
      diam = std::max(diam, r);
    }
  }
  cfg.diameter_ = diam;
  const double tol = distinctness_tol < 0.0 ? kDefaultRelativeTol * diam : distinctness_tol;

  double min_sep = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = dist[i * n + j];
      min_sep = std::min(min_sep, r);
      if (r <= tol || r == 0.0) {
        fail(ErrorCode::DuplicatePoints,
             "points " + std::to_string(i) + " and " + std::to_string(j) +
                 " are closer than the distinctness tolerance");
      }
    }
  }
  cfg.min_separation_ = min_sep;

  cfg.pair_dirs_.assign(static_cast<std::size_t>(n) * n * d, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = dist[i * n + j];
      double* ij = cfg.pair_dirs_.data() + (static_cast<std::size_t>(i) * n + j) * d;
      double* ji = cfg.pair_dirs_.data() + (static_cast<std::size_t>(j) * n + i) * d;
      for (std::size_t k = 0; k < d; ++k) {
        ij[k] = (raw_points[j][k] - raw_points[i][k]) / r;
        ji[k] = -ij[k];
      }
    }
  }
  return cfg;
}

PointConfiguration build_configuration(const std::vector<Point>& raw_points,
                                       double distinctness_tol) {
  std::vector<std::vector<double>> rows;
  rows.reserve(raw_points.size());
  for (const auto& p : raw_points) rows.emplace_back(p.data(), p.data() + p.size());
  return build_configuration(rows, distinctness_tol);
}

int affine_rank(const std::vector<Point>& pts, double rank_tol) {
  if (pts.size() < 2) return 0;
  const int d = static_cast<int>(pts.front().size());
  Eigen::MatrixXd diffs(static_cast<int>(pts.size()) - 1, d);
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.row(i - 1) = (pts[i] - pts[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv[k] > rank_tol * sv[0]) ++rank;
  }
  return rank;
}

int affine_rank(const PointConfiguration& config, double rank_tol) {
  std::vector<Point> pts;
  pts.reserve(config.size());
  for (int i = 0; i < config.size(); ++i) pts.push_back(config.point(i));
  return affine_rank(pts, rank_tol);
}

bool is_nondegenerate(const PointConfiguration& config, double rank_tol) {
  return affine_rank(config, rank_tol) == config.dim();
}

std::vector<std::vector<double>> to_rows(const PointConfiguration& config) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < config.size(); ++i) {
    auto s = config.point_span(i);
    rows.emplace_back(s.begin(), s.end());
  }
  return rows;
}

}  // namespace hullmap
