#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absmin/plant.hpp"

namespace absmin {

struct PlacementResult {
  Controller controller;
  Poly achieved;
  /// || S theta - rhs ||_2 in coefficient space.
  double residual = 0.0;
};

enum class ClusterKind { kStable, kMarginal, kUnstable };

const char* to_string(ClusterKind kind);

/// All closed-loop poles at the single real point z.
struct ClusterSolution {
  double z = 0.0;
  Controller controller;
  /// Least-squares residual of the overdetermined system at z, relative to
  /// the norm of the coefficients of (s - z)^n.
  double consistency_residual = 0.0;
  ClusterKind kind = ClusterKind::kStable;
};

struct ClusterOptions {
  double bracket_lo = -5.0;
  double bracket_hi = 5.0;
  int grid_points = 10001;
  /// "consistent" means relative residual below this.
  double consistency_tol = 1e-8;
};

struct ClusterSearch {
  std::vector<ClusterSolution> solutions;
  /// Explains an empty result.
  std::string diagnostic;
};

/// Matrix taking theta = (x_0..x_{m-1}, y_0..y_m) to the closed-loop
/// coefficients p_0..p_{N-1} (N = deg a + m) that sit below the monic term
/// contributed by a(s) s^m. Shape N x (2m+1). Throws DomainError when a and
/// b share a root (the matrix would be singular).
Eigen::MatrixXd sylvester_matrix(const Poly& a, const Poly& b, int m);

/// Right-hand side target - a(s) s^m restricted to degrees 0..N-1.
Eigen::VectorXd placement_rhs(const Poly& a, int m, const Poly& target);

/// Solve for the order-m controller whose closed loop equals `target`
/// (monic, real, degree deg den + m). Requires m >= deg den - 1; for m above
/// that the minimum-norm controller is returned.
PlacementResult place_poles(const Plant& plant, int m, const Poly& target);

/// Real points z at which an order-m controller can put every closed-loop
/// pole, for the overdetermined regime m < deg den - 1. Scans the
/// least-squares residual over a grid and bisects each sign change of the
/// residual's signed component.
ClusterSearch cluster_all_poles(const Plant& plant, int m, const ClusterOptions& options = {});

/// Coefficients of (s - z)^n.
Poly clustered_poly(double z, int n);

}  // namespace absmin
