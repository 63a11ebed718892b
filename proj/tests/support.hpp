#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <string>

#include "hdsphere/vec3.hpp"

namespace testing {

inline double rel_err(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }
inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline hdsphere::Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  while (true) {
    hdsphere::Vec3 v{g(rng), g(rng), g(rng)};
    const double n = hdsphere::norm(v);
    if (n > 1e-3) return hdsphere::scaled(v, 1.0 / n);
  }
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("hdsphere_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testing
