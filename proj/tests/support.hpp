#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "hullmap/geom_core.hpp"

namespace testing {

inline std::string data(const std::string& name) {
  return std::string(HULLMAP_DATA_DIR) + "/" + name;
}

inline hullmap::UnitDirection random_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(dim);
  do {
    for (int k = 0; k < dim; ++k) v[k] = g(rng);
  } while (v.norm() < 1e-6);
  return hullmap::UnitDirection(v);
}

inline hullmap::UnitDirection dir(std::initializer_list<double> c) {
  Eigen::VectorXd v(static_cast<int>(c.size()));
  int k = 0;
  for (double x : c) v[k++] = x;
  return hullmap::UnitDirection(v);
}

}  // namespace testing
