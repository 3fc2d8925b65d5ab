#pragma once

#include <span>
#include <vector>

#include "absmin/poly.hpp"

namespace absmin {

/// SISO plant num(s)/den(s), strictly proper with coprime num and den.
class Plant {
 public:
  /// Throws DomainError naming the violated invariant.
  Plant(Poly num, Poly den);

  /// Two masses joined by a spring, unit masses and stiffness: 1/(s^4 + 2 s^2).
  static Plant two_mass_spring();

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

 private:
  Poly num_;
  Poly den_;
};

/// Proper controller y(s)/x(s) of order m: x monic of degree m, deg y <= m,
/// real coefficients.
///
/// The real parameter vector is theta = (x_0, ..., x_{m-1}, y_0, ..., y_m),
/// so there are 2m+1 free parameters.
class Controller {
 public:
  Controller(Poly x, Poly y);

  static Controller from_params(int order, std::span<const double> theta);

  int order() const { return x_.degree(); }
  int param_count() const { return 2 * order() + 1; }
  const Poly& x() const { return x_; }
  const Poly& y() const { return y_; }
  std::vector<double> params() const;

 private:
  Poly x_;
  Poly y_;
};

/// den * x + num * y.
Poly closed_loop_poly(const Plant& plant, const Controller& k);

/// Abscissa of the closed-loop polynomial.
double objective(const Plant& plant, const Controller& k);

/// Polynomial multiplying parameter theta_index in closed_loop_poly, i.e.
/// den * s^j for x_j and num * s^j for y_j.
Poly parameter_basis(const Plant& plant, int order, int index);

/// True when a and b share no root within `radius` (relative to 1+|z|,
/// widened by the numerical spread of clustered roots).
bool coprime(const Poly& a, const Poly& b, double radius = 1e-8);

}  // namespace absmin
