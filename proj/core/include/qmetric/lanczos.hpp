#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Core>

namespace qmetric {

struct LanczosOptions {
  double tolerance = 1e-9;         // on ||A v - theta v||
  std::size_t max_matvecs = 20000;
  std::size_t max_subspace = 96;
  std::size_t restart_keep = 12;   // Ritz vectors kept across a restart
};

struct LanczosResult {
  double eigenvalue;
  Eigen::VectorXd eigenvector;  // unit 2-norm
  std::size_t matvecs;
  double residual;
};

using LinearOperator = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

/// Lowest eigenpair of a real symmetric operator by thick-restart Lanczos.
///
/// The Krylov basis is kept fully reorthogonalized. When it reaches
/// max_subspace vectors it is compressed onto the restart_keep lowest Ritz
/// vectors and expansion continues from the ground Ritz residual.
/// Throws SolverError when max_matvecs is exhausted.
LanczosResult lowest_eigenpair(const LinearOperator& apply, const Eigen::VectorXd& start,
                               const LanczosOptions& options = {});

}  // namespace qmetric
