#include "qmetric/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qmetric/errors.hpp"
#include "qmetric/rng.hpp"

namespace qmetric {

namespace {

class RitzSpace {
 public:
  RitzSpace(const LinearOperator& apply, Eigen::Index n, Eigen::Index capacity)
      : apply_(apply), basis_(n, capacity), images_(n, capacity), gram_(capacity, capacity),
        scratch_(n) {}

  Eigen::Index size() const noexcept { return count_; }
  std::size_t matvecs() const noexcept { return matvecs_; }

  // Orthonormalizes v against the basis (two Gram-Schmidt passes) and appends
  // it with its image. Returns false when v lies in the current span.
  bool append(Eigen::VectorXd v) {
    const double initial = v.norm();
    if (!(initial > 0.0)) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (count_ > 0) {
        const Eigen::VectorXd coeffs = basis_.leftCols(count_).transpose() * v;
        v.noalias() -= basis_.leftCols(count_) * coeffs;
      }
    }
    const double remaining = v.norm();
    if (remaining <= 1e-10 * initial) return false;
    v /= remaining;
    basis_.col(count_) = v;
    apply_(v, scratch_);
    ++matvecs_;
    images_.col(count_) = scratch_;
    const Eigen::VectorXd column = basis_.leftCols(count_ + 1).transpose() * scratch_;
    gram_.col(count_).head(count_ + 1) = column;
    gram_.row(count_).head(count_ + 1) = column.transpose();
    ++count_;
    return true;
  }

  void rayleigh_ritz() {
    solver_.compute(gram_.topLeftCorner(count_, count_));
    if (solver_.info() != Eigen::Success) {
      throw SolverError("Rayleigh-Ritz eigensolve failed", matvecs_, std::nan(""));
    }
  }

  double ritz_value() const { return solver_.eigenvalues()[0]; }

  Eigen::VectorXd ritz_vector() const {
    return basis_.leftCols(count_) * solver_.eigenvectors().col(0);
  }

  Eigen::VectorXd ritz_residual() const {
    const Eigen::VectorXd y = solver_.eigenvectors().col(0);
    return images_.leftCols(count_) * y - ritz_value() * (basis_.leftCols(count_) * y);
  }

  Eigen::VectorXd last_image() const { return images_.col(count_ - 1); }

  // Compresses the basis onto the `keep` lowest Ritz vectors.
  void restart(Eigen::Index keep) {
    keep = std::min(keep, count_);
    const Eigen::MatrixXd y = solver_.eigenvectors().leftCols(keep);
    const Eigen::MatrixXd v = basis_.leftCols(count_) * y;
    const Eigen::MatrixXd w = images_.leftCols(count_) * y;
    basis_.leftCols(keep) = v;
    images_.leftCols(keep) = w;
    gram_.topLeftCorner(keep, keep) = v.transpose() * w;
    const Eigen::MatrixXd g = gram_.topLeftCorner(keep, keep);
    gram_.topLeftCorner(keep, keep) = 0.5 * (g + g.transpose());
    count_ = keep;
  }

 private:
  const LinearOperator& apply_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd images_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd scratch_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
  Eigen::Index count_ = 0;
  std::size_t matvecs_ = 0;
};

Eigen::VectorXd fresh_direction(Eigen::Index n, std::uint64_t stream) {
  Rng rng(derive_seed(0x1a2c05ULL, stream));
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

LanczosResult lowest_eigenpair(const LinearOperator& apply, const Eigen::VectorXd& start,
                               const LanczosOptions& options) {
  const Eigen::Index n = start.size();
  if (n == 0) throw std::invalid_argument("Lanczos needs a non-empty start vector");
  const auto capacity = static_cast<Eigen::Index>(
      std::clamp<std::size_t>(options.max_subspace, 2, static_cast<std::size_t>(n)));
  const auto keep = static_cast<Eigen::Index>(
      std::clamp<std::size_t>(options.restart_keep, 1, static_cast<std::size_t>(capacity - 1)));

  RitzSpace space(apply, n, capacity);
  std::uint64_t fresh = 0;
  if (!space.append(start)) space.append(fresh_direction(n, fresh++));

  double residual = std::numeric_limits<double>::infinity();
  while (true) {
    space.rayleigh_ritz();
    const Eigen::VectorXd r = space.ritz_residual();
    residual = r.norm();
    if (residual < options.tolerance || space.size() == n) {
      Eigen::VectorXd v = space.ritz_vector();
      v.normalize();
      return LanczosResult{space.ritz_value(), std::move(v), space.matvecs(), residual};
    }
    if (space.matvecs() >= options.max_matvecs) {
      throw SolverError("Lanczos did not converge: residual " + std::to_string(residual) +
                            " after " + std::to_string(space.matvecs()) + " matrix-vector products",
                        space.matvecs(), residual);
    }

    bool grown = false;
    if (space.size() == capacity) {
      space.restart(keep);
      grown = space.append(r);
    } else {
      grown = space.append(space.last_image());
    }
    // Invariant subspace or lost direction: continue from a new vector.
    while (!grown) {
      if (space.size() == capacity) space.restart(keep);
      grown = space.append(fresh_direction(n, fresh++));
    }
  }
}

}  // namespace qmetric
