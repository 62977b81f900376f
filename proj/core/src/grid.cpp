#include "qmetric/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace qmetric {

Grid::Grid(double half_length, std::size_t num_points)
    : half_length_(half_length), num_points_(num_points), spacing_(0.0) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("grid half length must be positive and finite");
  }
  if (num_points < 3) {
    throw std::invalid_argument("grid needs at least 3 points");
  }
  spacing_ = 2.0 * half_length / static_cast<double>(num_points - 1);
}

double Grid::x(std::size_t i) const noexcept {
  const double last = static_cast<double>(num_points_ - 1);
  const double ratio = (2.0 * static_cast<double>(i) - last) / last;
  return half_length_ * ratio;
}

Eigen::VectorXd Grid::points() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(num_points_));
  for (std::size_t i = 0; i < num_points_; ++i) out[static_cast<Eigen::Index>(i)] = x(i);
  return out;
}

}  // namespace qmetric
