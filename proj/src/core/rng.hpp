#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "matrix.hpp"

namespace spca {

// Deterministic standard-normal stream: mt19937_64 (fully specified by the
// standard, so identical across platforms) with an explicit Box-Muller
// transform. std::normal_distribution is implementation-defined and is
// deliberately not used.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next();
  std::vector<double> draw(std::size_t n);
  Matrix draw_matrix(std::size_t rows, std::size_t cols);

 private:
  double uniform01();  // in (0, 1]

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spca
