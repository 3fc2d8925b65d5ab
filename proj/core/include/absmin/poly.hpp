#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace absmin {

using Complex = std::complex<double>;

/// Dense polynomial with complex coefficients, ascending powers:
/// coeffs()[j] multiplies s^j. Trailing exact zeros are trimmed on
/// construction, so the zero polynomial has an empty representation and
/// degree() == -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly from_real(std::span<const double> coeffs);
  static Poly constant(Complex c);
  /// c * s^degree
  static Poly monomial(int degree, Complex c = 1.0);
  /// prod (s - r_k)
  static Poly from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  /// Coefficient of s^j; zero outside [0, degree].
  Complex operator[](int j) const;
  Complex leading() const;
  double max_abs_coeff() const;

  /// True when every imaginary part is within tol of zero, relative to the
  /// largest coefficient magnitude.
  bool is_real(double tol = 1e-12) const;
  /// Real parts; throws DomainError when is_real(tol) fails.
  std::vector<double> real_coeffs(double tol = 1e-12) const;

  Complex operator()(Complex z) const;
  Poly derivative() const;
  /// Divide through by the leading coefficient.
  Poly monic() const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(Complex scale);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, Complex s) { return a *= s; }
  friend Poly operator*(Complex s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

/// Horner evaluation of (p(z), p'(z)). Throws DomainError for the zero
/// polynomial.
std::pair<Complex, Complex> eval_and_derivative(const Poly& p, Complex z);

/// Taylor recentering: returns q with q(t) = p(t + z0).
Poly shift(const Poly& p, Complex z0);

struct RootOptions {
  /// Stop updating a root once its Aberth correction is below this times (1+|z|).
  double correction_tol = 1e-12;
  int max_iterations = 500;
  /// Accepted value of RootSet::residual when the iteration cap is reached.
  double residual_tol = 1e-10;
};

struct RootCluster {
  Complex center;
  int multiplicity = 1;
  /// Largest distance from a member root to the center.
  double spread = 0.0;
};

struct RootSet {
  /// One entry per root counted with multiplicity; size() == degree.
  std::vector<Complex> roots;
  /// max_k |p(z_k)| / (max|c_j| (1+|z_k|)^n)
  double residual = 0.0;
  int iterations = 0;
  /// Groups of numerically coincident roots (multiplicity 1 entries included).
  std::vector<RootCluster> clusters;
};

/// All complex roots by Aberth-Ehrlich simultaneous iteration. Deterministic.
/// Throws DomainError for degree < 1 and ConvergenceError when the cap is
/// reached with residual above options.residual_tol.
RootSet roots(const Poly& p, const RootOptions& options = {});

/// Maximum real part over the roots of p (computed on the monic rescaling).
/// Throws DomainError for constant or zero polynomials.
double abscissa(const Poly& p, const RootOptions& options = {});

}  // namespace absmin
