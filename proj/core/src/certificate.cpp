#include "absmin/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "absmin/error.hpp"

namespace absmin {

namespace {

int numerical_rank(const Eigen::JacobiSVD<Eigen::MatrixXcd>& svd, double rank_tol) {
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * sv(0)) ++rank;
  return rank;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kCertified:
      return "certified";
    case Verdict::kFailed:
      return "failed";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

ShiftedMap ShiftedMap::from_matrix(double z_star, Eigen::MatrixXcd matrix) {
  ShiftedMap map;
  map.z_star = z_star;
  map.degree = static_cast<int>(matrix.rows());
  map.matrix = std::move(matrix);
  return map;
}

ShiftedMap build_shifted_map(const Plant& plant, const Controller& k, double cluster_tol) {
  const Poly p = closed_loop_poly(plant, k);
  const int n = p.degree();
  const Complex lead = p.leading();
  const Poly monic = p.monic();
  const double z_star = (-monic[n - 1] / static_cast<double>(n)).real();

  const Poly shifted = shift(monic, z_star);
  const double scale = std::max(1.0, monic.max_abs_coeff());
  for (int j = 0; j < n; ++j) {
    if (std::abs(shifted[j]) > cluster_tol * scale)
      throw DomainError("certificate requires a fully clustered nominal point");
  }

  const int dim = k.param_count();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, dim);
  for (int j = 0; j < dim; ++j) {
    const Poly column = shift(parameter_basis(plant, k.order(), j) * (1.0 / lead), z_star);
    for (int i = 0; i < n; ++i) a(i, j) = column[i];
  }
  return ShiftedMap::from_matrix(z_star, std::move(a));
}

Eigen::MatrixXcd adjoint(const ShiftedMap& map) { return map.matrix.adjoint(); }

QualificationResult check_constraint_qualification(const ShiftedMap& map, double rank_tol) {
  const Eigen::MatrixXcd astar = adjoint(map);
  const Eigen::Index free = map.degree - 1;
  QualificationResult result;
  if (free <= 0) {
    result.passed = true;
    result.kernel = Eigen::MatrixXcd(std::max<Eigen::Index>(free, 0), 0);
    return result;
  }
  const Eigen::MatrixXcd restricted = astar.leftCols(free);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(restricted, Eigen::ComputeFullV);
  const int rank = numerical_rank(svd, rank_tol);
  result.kernel = svd.matrixV().rightCols(free - rank);

  // For any kernel vector v, one of v, -v has Re c_{N-2} <= 0 and so is a
  // nonzero element of the horizon subdifferential: CQ holds iff the
  // kernel is trivial.
  result.passed = result.kernel.cols() == 0;
  return result;
}

CertificateReport certify_map(const ShiftedMap& map, const CertifyOptions& options) {
  CertificateReport report;
  report.map = map;
  report.adjoint = adjoint(report.map);

  const QualificationResult cq = check_constraint_qualification(report.map, options.rank_tol);
  report.cq_passed = cq.passed;
  report.cq_kernel_dim = static_cast<int>(cq.kernel.cols());

  const int n = report.map.degree;
  const auto dim = static_cast<int>(report.adjoint.rows());
  const Complex top = -1.0 / static_cast<double>(n);
  std::ostringstream why;

  if (n < 2) {
    report.verdict = Verdict::kInconclusive;
    report.explanation = "closed-loop degree below 2 has no half-space constraint";
    return report;
  }

  const Eigen::MatrixXcd free = report.adjoint.leftCols(n - 1);
  const Eigen::VectorXcd rhs = -top * report.adjoint.col(n - 1);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(free, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int rank = numerical_rank(svd, options.rank_tol);

  bool interior = false;
  if (rank < n - 1) {
    report.verdict = Verdict::kInconclusive;
    why << "A^* c = 0 has a non-unique solution (rank " << rank << " < " << n - 1
        << "); interiority needs convex analysis beyond unique-solve";
  } else {
    const Eigen::VectorXcd c_free = svd.solve(rhs);
    const double mismatch = (free * c_free - rhs).norm();
    report.c_solution.resize(n);
    report.c_solution.head(n - 1) = c_free;
    report.c_solution(n - 1) = top;
    report.strictness_margin = -c_free(n - 2).real();

    const double consistency_tol = 1e-10 * std::max(1.0, rhs.norm()) * std::max(1.0, svd.singularValues()(0));
    if (mismatch > consistency_tol) {
      report.verdict = Verdict::kFailed;
      report.c_solution.resize(0);
      report.strictness_margin = 0.0;
      why << "A^* c = 0 with c_{N-1} = -1/N is inconsistent (residual " << mismatch
          << "): 0 is not in the subdifferential";
    } else if (report.strictness_margin <= options.strictness_tol) {
      report.verdict = report.strictness_margin < 0.0 ? Verdict::kFailed : Verdict::kInconclusive;
      why << "Re c_{N-2} = " << -report.strictness_margin << " does not satisfy the strict inequality";
    } else if (rank < dim) {
      report.verdict = Verdict::kFailed;
      why << "A^* restricted to the free coordinates is not onto the parameter space (rank " << rank
          << " < " << dim << "); the subdifferential image has empty interior";
    } else {
      interior = true;
    }
  }
  report.interiority_passed = interior;

  if (!report.cq_passed) {
    if (report.verdict != Verdict::kInconclusive) report.verdict = Verdict::kFailed;
    why << (why.tellp() > 0 ? "; " : "") << "constraint qualification fails (kernel dimension "
        << report.cq_kernel_dim << ")";
  } else if (interior) {
    report.verdict = Verdict::kCertified;
    why << "constraint qualification holds and 0 is interior to the subdifferential image";
  }
  report.explanation = why.str();
  return report;
}

CertificateReport certify_local_min(const Plant& plant, const Controller& k,
                                    const CertifyOptions& options) {
  CertificateReport report = certify_map(build_shifted_map(plant, k, options.cluster_tol), options);
  const auto dim = static_cast<int>(report.adjoint.rows());

  // Empirical growth constant along random unit directions.
  const std::vector<double> nominal = k.params();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double tau = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.tau_samples; ++s) {
    std::vector<double> d(dim);
    double norm = 0.0;
    for (double& v : d) {
      v = normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    std::vector<double> theta(nominal);
    for (int i = 0; i < dim; ++i) theta[i] += options.tau_step * d[i] / norm;
    const double alpha = objective(plant, Controller::from_params(k.order(), theta));
    tau = std::min(tau, (alpha - report.map.z_star) / options.tau_step);
  }
  report.tau_estimate = options.tau_samples > 0 ? tau : 0.0;
  return report;
}

}  // namespace absmin
