#include "absmin/hurwitz.hpp"

#include <cmath>

#include "absmin/error.hpp"

namespace absmin {

namespace {

constexpr double kRealTol = 1e-12;
constexpr double kMinorTol = 1e-10;

std::vector<double> normalized_real_coeffs(const Poly& p) {
  if (p.degree() < 1) throw DomainError("Hurwitz test requires degree >= 1");
  if (!p.is_real(kRealTol)) throw DomainError("Hurwitz test requires real coefficients");
  std::vector<double> c = p.real_coeffs(kRealTol);
  if (c.back() < 0.0)
    for (double& v : c) v = -v;
  return c;
}

Eigen::MatrixXd matrix_from_coeffs(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int power = n - 2 * i + j;
      if (power >= 0 && power <= n) h(i - 1, j - 1) = c[power];
    }
  }
  return h;
}

}  // namespace

double bareiss_determinant(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  double sign = 1.0;
  double prev = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Eigen::Index pivot = k;
    for (Eigen::Index r = k + 1; r < n; ++r)
      if (std::abs(m(r, k)) > std::abs(m(pivot, k))) pivot = r;
    if (m(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0.0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Eigen::MatrixXd hurwitz_matrix(const Poly& p) { return matrix_from_coeffs(normalized_real_coeffs(p)); }

HurwitzReport is_hurwitz_stable(const Poly& p) {
  HurwitzReport report;
  report.matrix = hurwitz_matrix(p);
  const Eigen::Index n = report.matrix.rows();
  report.stable = true;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const Eigen::MatrixXd block = report.matrix.topLeftCorner(k, k);
    const double minor = bareiss_determinant(block);
    double scale = 1.0;
    for (Eigen::Index r = 0; r < k; ++r) scale *= block.row(r).norm();
    report.minors.push_back(minor);
    if (!(minor > kMinorTol * scale)) report.stable = false;
  }
  return report;
}

}  // namespace absmin
