#include "absmin/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "absmin/error.hpp"

namespace absmin {

namespace {

constexpr double kRealTol = 1e-12;

std::vector<double> real_or_throw(const Poly& p, const char* what) {
  if (!p.is_real(kRealTol)) throw DomainError(std::string(what) + " must have real coefficients");
  return p.real_coeffs(kRealTol);
}

// Signed least-squares residual components: projection of rhs(z) onto the
// orthogonal complement of range(S).
struct ResidualField {
  Eigen::MatrixXd left_null;  // N x (N - P)
  Poly a_shifted;             // a(s) s^m
  int n = 0;

  Eigen::VectorXd rhs(double z) const {
    Eigen::VectorXd r(n);
    // (s - z)^n coefficient k is C(n, k) (-z)^(n-k)
    double binom = 1.0;
    for (int k = n; k >= 0; --k) {
      if (k < n) {
        binom = binom * (k + 1) / (n - k);
        r(k) = binom * std::pow(-z, n - k) - a_shifted[k].real();
      }
    }
    return r;
  }

  Eigen::VectorXd signed_residual(double z) const { return left_null.transpose() * rhs(z); }

  double relative_residual(double z) const {
    const Eigen::VectorXd r = rhs(z);
    // ||(s - z)^n|| including the leading one
    double target_norm2 = 1.0;
    for (int k = 0; k < n; ++k) {
      const double c = r(k) + a_shifted[k].real();
      target_norm2 += c * c;
    }
    return (left_null.transpose() * r).norm() / std::sqrt(target_norm2);
  }
};

}  // namespace

const char* to_string(ClusterKind kind) {
  switch (kind) {
    case ClusterKind::kStable:
      return "stable";
    case ClusterKind::kMarginal:
      return "marginal";
    case ClusterKind::kUnstable:
      return "unstable";
  }
  return "unknown";
}

Poly clustered_poly(double z, int n) {
  std::vector<Complex> r(n, Complex(z));
  return Poly::from_roots(r);
}

Eigen::MatrixXd sylvester_matrix(const Poly& a, const Poly& b, int m) {
  if (m < 0) throw DomainError("controller order must be non-negative");
  const std::vector<double> ac = real_or_throw(a, "plant denominator");
  const std::vector<double> bc = real_or_throw(b, "plant numerator");
  if (b.degree() >= a.degree()) throw DomainError("plant must be strictly proper");
  if (!coprime(b, a)) throw DomainError("plant num and den share a root: matrix would be singular");

  const int rows = a.degree() + m;
  const int cols = 2 * m + 1;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(rows, cols);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < static_cast<int>(ac.size()); ++i)
      if (i + j < rows) s(i + j, j) = ac[i];
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i < static_cast<int>(bc.size()); ++i)
      if (i + j < rows) s(i + j, m + j) = bc[i];
  return s;
}

Eigen::VectorXd placement_rhs(const Poly& a, int m, const Poly& target) {
  const int rows = a.degree() + m;
  const Poly lead = a * Poly::monomial(m);
  Eigen::VectorXd rhs(rows);
  for (int k = 0; k < rows; ++k) rhs(k) = (target[k] - lead[k]).real();
  return rhs;
}

PlacementResult place_poles(const Plant& plant, int m, const Poly& target) {
  const int n = plant.den().degree() + m;
  if (m < plant.den().degree() - 1)
    throw DomainError("place_poles needs m >= deg den - 1; use cluster_all_poles below that");
  if (target.degree() != n)
    throw DomainError("target degree must equal deg den + m = " + std::to_string(n));
  real_or_throw(target, "target");
  if (std::abs(target.leading() - Complex(1.0)) > kRealTol) throw DomainError("target must be monic");

  const Eigen::MatrixXd s = sylvester_matrix(plant.den(), plant.num(), m);
  const Eigen::VectorXd rhs = placement_rhs(plant.den(), m, target);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
  if (lu.rank() < std::min(s.rows(), s.cols())) throw DomainError("Sylvester system is singular");
  Eigen::VectorXd theta = lu.solve(rhs);
  // Iterative refinement with the residual accumulated in extended precision.
  for (int pass = 0; pass < 3; ++pass) {
    const Eigen::Matrix<long double, Eigen::Dynamic, 1> r =
        rhs.cast<long double>() - s.cast<long double>() * theta.cast<long double>();
    theta += lu.solve(r.cast<double>());
  }

  std::vector<double> params(theta.data(), theta.data() + theta.size());
  Controller k = Controller::from_params(m, params);
  Poly achieved = closed_loop_poly(plant, k);
  const double residual = (s * theta - rhs).norm();
  return {std::move(k), std::move(achieved), residual};
}

ClusterSearch cluster_all_poles(const Plant& plant, int m, const ClusterOptions& options) {
  const int deg_a = plant.den().degree();
  if (m < 0 || m >= deg_a - 1)
    throw DomainError("cluster_all_poles needs m < deg den - 1 (overdetermined); use place_poles");
  if (options.grid_points < 3 || !(options.bracket_lo < options.bracket_hi))
    throw DomainError("cluster scan needs a nonempty bracket and at least 3 grid points");

  const Eigen::MatrixXd s = sylvester_matrix(plant.den(), plant.num(), m);
  const int n = static_cast<int>(s.rows());
  const int p = static_cast<int>(s.cols());

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(s);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  ResidualField field{q.rightCols(n - p), plant.den() * Poly::monomial(m), n};

  const int g = options.grid_points;
  std::vector<double> zs(g), rs(g);
  const double step = (options.bracket_hi - options.bracket_lo) / (g - 1);
  for (int i = 0; i < g; ++i) {
    zs[i] = i == g - 1 ? options.bracket_hi : options.bracket_lo + i * step;
    rs[i] = field.relative_residual(zs[i]);
  }

  ClusterSearch out;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver(s);
  double best_r = std::numeric_limits<double>::infinity();
  double best_z = zs[0];

  for (int i = 0; i < g; ++i) {
    if (rs[i] < best_r) {
      best_r = rs[i];
      best_z = zs[i];
    }
    const bool left_ok = i == 0 || rs[i] <= rs[i - 1];
    const bool right_ok = i == g - 1 || rs[i] <= rs[i + 1];
    if (!left_ok || !right_ok) continue;

    double lo = zs[std::max(i - 1, 0)];
    double hi = zs[std::min(i + 1, g - 1)];
    double z = zs[i];
    if (rs[i] > 0.0) {
      Eigen::VectorXd dir = field.signed_residual(hi) - field.signed_residual(lo);
      if (dir.norm() == 0.0) continue;
      dir.normalize();
      auto h = [&](double t) { return field.signed_residual(t).dot(dir); };
      double hlo = h(lo);
      const double hhi = h(hi);
      if (hlo * hhi > 0.0) continue;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double hm = h(mid);
        if (hm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((hm < 0.0) == (hlo < 0.0)) {
          lo = mid;
          hlo = hm;
        } else {
          hi = mid;
        }
      }
      z = field.relative_residual(lo) <= field.relative_residual(hi) ? lo : hi;
    }

    const double r = field.relative_residual(z);
    if (!(r < options.consistency_tol)) continue;
    const bool duplicate = std::any_of(out.solutions.begin(), out.solutions.end(),
                                       [&](const ClusterSolution& c) {
                                         return std::abs(c.z - z) <= 1e-9 * (1.0 + std::abs(z));
                                       });
    if (duplicate) continue;

    const Eigen::VectorXd theta = solver.solve(field.rhs(z));
    std::vector<double> params(theta.data(), theta.data() + theta.size());
    ClusterSolution sol{z, Controller::from_params(m, params), r, ClusterKind::kStable};
    if (std::abs(z) <= 1e-9)
      sol.kind = ClusterKind::kMarginal;
    else if (z > 0.0)
      sol.kind = ClusterKind::kUnstable;
    out.solutions.push_back(std::move(sol));
  }

  if (out.solutions.empty()) {
    std::ostringstream msg;
    msg << "no consistent z in [" << options.bracket_lo << ", " << options.bracket_hi
        << "]; smallest relative residual " << best_r << " at z = " << best_z;
    out.diagnostic = msg.str();
  }
  return out;
}

}  // namespace absmin
