#include "rng.hpp"

#include <cmath>

namespace spca {

double GaussianStream::uniform01() {
  // 53-bit mantissa, shifted into (0, 1] so log() below is always finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> GaussianStream::draw(std::size_t n) {
  std::vector<double> out(n);
  for (double& x : out) x = next();
  return out;
}

Matrix GaussianStream::draw_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = next();
  return m;
}

}  // namespace spca
