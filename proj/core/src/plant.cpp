#include "absmin/plant.hpp"

#include <cmath>
#include <string>

#include "absmin/error.hpp"

namespace absmin {

namespace {

constexpr double kRealTol = 1e-12;

Poly strip_imag(const Poly& p) {
  const std::vector<double> c = p.real_coeffs(kRealTol);
  return Poly::from_real(c);
}

}  // namespace

bool coprime(const Poly& a, const Poly& b, double radius) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.degree() < 1 || b.degree() < 1) return true;
  const RootSet ra = roots(a);
  const RootSet rb = roots(b);
  for (const RootCluster& ca : ra.clusters) {
    for (const RootCluster& cb : rb.clusters) {
      const double tol = radius * (1.0 + std::abs(ca.center)) + ca.spread + cb.spread;
      if (std::abs(ca.center - cb.center) <= tol) return false;
    }
  }
  return true;
}

Plant::Plant(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) throw DomainError("plant: numerator must be nonzero");
  if (den_.degree() <= num_.degree())
    throw DomainError("plant: deg den > deg num (strictly proper) violated");
  if (!coprime(num_, den_)) throw DomainError("plant: num and den must be coprime");
}

Plant Plant::two_mass_spring() { return Plant(Poly{1.0}, Poly{0.0, 0.0, 2.0, 0.0, 1.0}); }

Controller::Controller(Poly x, Poly y) {
  if (x.is_zero()) throw DomainError("controller: x must be monic, got the zero polynomial");
  if (!x.is_real(kRealTol) || !y.is_real(kRealTol))
    throw DomainError("controller: coefficients must be real");
  if (std::abs(x.leading() - Complex(1.0)) > kRealTol)
    throw DomainError("controller: x must be monic");
  if (y.degree() > x.degree())
    throw DomainError("controller: deg y <= m (proper transfer function) violated");
  std::vector<double> xc = x.real_coeffs(kRealTol);
  xc.back() = 1.0;
  x_ = Poly::from_real(xc);
  y_ = strip_imag(y);
}

Controller Controller::from_params(int order, std::span<const double> theta) {
  if (order < 0) throw DomainError("controller: order must be non-negative");
  if (static_cast<int>(theta.size()) != 2 * order + 1)
    throw DomainError("controller: expected " + std::to_string(2 * order + 1) +
                      " parameters for order " + std::to_string(order));
  std::vector<double> x(theta.begin(), theta.begin() + order);
  x.push_back(1.0);
  std::vector<double> y(theta.begin() + order, theta.end());
  return Controller(Poly::from_real(x), Poly::from_real(y));
}

std::vector<double> Controller::params() const {
  const int m = order();
  std::vector<double> theta;
  theta.reserve(2 * m + 1);
  for (int j = 0; j < m; ++j) theta.push_back(x_[j].real());
  for (int j = 0; j <= m; ++j) theta.push_back(y_[j].real());
  return theta;
}

Poly closed_loop_poly(const Plant& plant, const Controller& k) {
  return plant.den() * k.x() + plant.num() * k.y();
}

double objective(const Plant& plant, const Controller& k) {
  return abscissa(closed_loop_poly(plant, k));
}

Poly parameter_basis(const Plant& plant, int order, int index) {
  if (index < 0 || index > 2 * order) throw DomainError("parameter index out of range");
  if (index < order) return plant.den() * Poly::monomial(index);
  return plant.num() * Poly::monomial(index - order);
}

}  // namespace absmin
