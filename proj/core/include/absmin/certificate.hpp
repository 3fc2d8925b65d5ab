#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "absmin/plant.hpp"

namespace absmin {

/// Linear part of the closed-loop map after recentering at the clustered
/// root: with t = s - z_star and d the parameter offset from the nominal
/// controller, the shifted closed loop is t^N + (matrix * d) read as
/// coefficients of t^0..t^{N-1}.
struct ShiftedMap {
  double z_star = 0.0;
  /// Closed-loop degree N.
  int degree = 0;
  /// N x P, P = 2m + 1.
  Eigen::MatrixXcd matrix;

  /// Wrap an arbitrary N x P matrix (used for audits and synthetic checks).
  static ShiftedMap from_matrix(double z_star, Eigen::MatrixXcd matrix);
};

struct QualificationResult {
  bool passed = false;
  /// Basis of the kernel of the adjoint restricted to c_{N-1} = 0 (columns).
  Eigen::MatrixXcd kernel;
};

enum class Verdict { kCertified, kFailed, kInconclusive };

const char* to_string(Verdict verdict);

struct CertificateReport {
  ShiftedMap map;
  Eigen::MatrixXcd adjoint;
  bool cq_passed = false;
  int cq_kernel_dim = 0;
  bool interiority_passed = false;
  /// c_0..c_{N-1} solving A^* c = 0 with c_{N-1} = -1/N (empty when no
  /// solution was determined).
  Eigen::VectorXcd c_solution;
  /// -Re c_{N-2}.
  double strictness_margin = 0.0;
  /// min over sampled unit directions d of (alpha(theta* + h d) - z_star) / h.
  double tau_estimate = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::string explanation;
};

struct CertifyOptions {
  int tau_samples = 1000;
  double tau_step = 1e-6;
  std::uint64_t seed = 0;
  double strictness_tol = 1e-8;
  /// Singular values below this times the largest are treated as zero.
  double rank_tol = 1e-10;
  /// Allowed |coefficient| of shift(p, z_star) - t^N at the nominal point.
  double cluster_tol = 1e-8;
};

/// Requires every closed-loop root at z_star = -c_{N-1}/N (checked on the
/// shifted coefficients); throws DomainError otherwise.
ShiftedMap build_shifted_map(const Plant& plant, const Controller& k, double cluster_tol = 1e-8);

/// Adjoint under Re sum c_j conj(d_j) on both sides: the conjugate transpose.
Eigen::MatrixXcd adjoint(const ShiftedMap& map);

/// N(A^*) intersected with {c : c_{N-1} = 0, Re c_{N-2} <= 0} must be {0}.
QualificationResult check_constraint_qualification(const ShiftedMap& map, double rank_tol = 1e-10);

/// The verdict steps of certify_local_min on a given map (no sampling;
/// tau_estimate stays 0).
CertificateReport certify_map(const ShiftedMap& map, const CertifyOptions& options = {});

/// Sharp local minimality test for the abscissa at a fully clustered
/// controller: constraint qualification, then 0 in the interior of
/// A^* {c : c_{N-1} = -1/N, Re c_{N-2} <= 0}.
CertificateReport certify_local_min(const Plant& plant, const Controller& k,
                                    const CertifyOptions& options = {});

}  // namespace absmin
