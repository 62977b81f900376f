#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace qmetric {

/// Uniform mesh on [-L, +L], both end points included.
///
/// Points are evaluated as L * (2i - (N-1)) / (N-1), which makes the end
/// points exact and the mesh exactly symmetric about the origin.
class Grid {
 public:
  Grid(double half_length, std::size_t num_points);

  double half_length() const noexcept { return half_length_; }
  std::size_t num_points() const noexcept { return num_points_; }
  double spacing() const noexcept { return spacing_; }

  /// Number of points strictly inside the Dirichlet box.
  std::size_t interior_size() const noexcept { return num_points_ - 2; }

  double x(std::size_t i) const noexcept;
  Eigen::VectorXd points() const;

  bool operator==(const Grid& other) const noexcept {
    return half_length_ == other.half_length_ && num_points_ == other.num_points_;
  }

 private:
  double half_length_;
  std::size_t num_points_;
  double spacing_;
};

}  // namespace qmetric
