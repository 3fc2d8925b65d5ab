#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "absmin/plant.hpp"

namespace absmin {

struct OptOptions {
  int max_iters = 1000;
  /// Gradients sampled per iteration in the current ball; 0 means 2 (2m+1).
  int sample_count = 0;
  /// Sampling radii, strictly decreasing; empty means 0.1 * 2^-k, k = 0..17.
  std::vector<double> radius_schedule;
  double termination_tol = 1e-6;
  std::uint64_t seed = 0;
  /// Sufficient-decrease parameter of the backtracking line search.
  double armijo = 1e-4;
  double initial_step = 1.0;
  int max_backtracks = 60;
};

enum class OptStatus { kConverged, kIterationCap, kStalled };

const char* to_string(OptStatus status);

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double radius = 0.0;
};

struct OptResult {
  Controller controller;
  double objective = 0.0;
  std::vector<TraceEntry> trace;
  OptStatus status = OptStatus::kIterationCap;
};

/// Gradient of the closed-loop abscissa with respect to the controller
/// parameters (x_0..x_{m-1}, y_0..y_m), valid where the active root z is
/// simple: d alpha / d theta_j = Re(-e_j(z) / p'(z)) with e_j the parameter's
/// basis polynomial. Throws NonsmoothPointError when |p'(z)| is below 1e-6
/// times max|c|.
std::vector<double> abscissa_gradient(const Plant& plant, const Controller& k);

/// Minimum-norm point of the convex hull of the columns of `points`
/// (Wolfe's algorithm). Returns the hull point; `weights`, if given,
/// receives the convex combination.
Eigen::VectorXd min_norm_in_hull(const Eigen::MatrixXd& points, Eigen::VectorXd* weights = nullptr);

/// Gradient-sampling minimization of the closed-loop abscissa over
/// order-m controllers. Deterministic for a fixed seed; accepted iterates
/// never increase the objective.
OptResult minimize_abscissa(const Plant& plant, int m, const Controller& start,
                            const OptOptions& options = {});

/// Options with empty fields filled in for parameter dimension `dim`.
OptOptions resolved_options(const OptOptions& options, int dim);

}  // namespace absmin
