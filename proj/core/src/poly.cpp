#include "absmin/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "absmin/error.hpp"

namespace absmin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Horner for p, p' and the running bound sum |c_j| |z|^j used to decide
// whether |p(z)| is already at rounding-error level.
struct HornerValue {
  Complex value;
  Complex derivative;
  double abs_bound;
};

HornerValue horner(std::span<const Complex> c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex v = c[n];
  Complex d = 0.0;
  double bound = std::abs(c[n]);
  const double az = std::abs(z);
  for (int j = n - 1; j >= 0; --j) {
    d = d * z + v;
    v = v * z + c[j];
    bound = bound * az + std::abs(c[j]);
  }
  return {v, d, bound};
}

// Groups roots that sit within 10 * rho^(1/k) (1+|z|) of each other, trying
// the largest multiplicities first. rho is the relative evaluation residual.
std::vector<RootCluster> detect_clusters(const std::vector<Complex>& roots, double rho) {
  const int n = static_cast<int>(roots.size());
  std::vector<bool> used(n, false);
  std::vector<RootCluster> clusters;
  for (int k = n; k >= 2; --k) {
    const double base = 10.0 * std::pow(rho, 1.0 / k);
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double radius = base * (1.0 + std::abs(roots[i]));
      std::vector<std::pair<double, int>> near;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double dist = std::abs(roots[j] - roots[i]);
        if (dist <= radius) near.emplace_back(dist, j);
      }
      if (static_cast<int>(near.size()) < k) continue;
      std::sort(near.begin(), near.end());
      RootCluster cluster;
      cluster.multiplicity = k;
      Complex sum = 0.0;
      for (int m = 0; m < k; ++m) sum += roots[near[m].second];
      cluster.center = sum / static_cast<double>(k);
      for (int m = 0; m < k; ++m) {
        used[near[m].second] = true;
        cluster.spread = std::max(cluster.spread, std::abs(roots[near[m].second] - cluster.center));
      }
      clusters.push_back(cluster);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!used[i]) clusters.push_back({roots[i], 1, 0.0});
  }
  return clusters;
}

bool root_order(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs.begin(), coeffs.end()) {
  trim();
}

Poly Poly::from_real(std::span<const double> coeffs) {
  return Poly(std::vector<Complex>(coeffs.begin(), coeffs.end()));
}

Poly Poly::constant(Complex c) { return Poly(std::vector<Complex>{c}); }

Poly Poly::monomial(int degree, Complex c) {
  if (degree < 0) throw DomainError("monomial degree must be non-negative");
  std::vector<Complex> coeffs(degree + 1, 0.0);
  coeffs[degree] = c;
  return Poly(std::move(coeffs));
}

Poly Poly::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex r : roots) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
  }
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

Complex Poly::operator[](int j) const {
  if (j < 0 || j > degree()) return 0.0;
  return coeffs_[j];
}

Complex Poly::leading() const {
  if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool Poly::is_real(double tol) const {
  const double scale = std::max(max_abs_coeff(), 1.0);
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [&](Complex c) { return std::abs(c.imag()) <= tol * scale; });
}

std::vector<double> Poly::real_coeffs(double tol) const {
  if (!is_real(tol)) throw DomainError("polynomial has non-real coefficients");
  std::vector<double> out(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), out.begin(), [](Complex c) { return c.real(); });
  return out;
}

Complex Poly::operator()(Complex z) const {
  Complex v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + *it;
  return v;
}

Poly Poly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = static_cast<double>(j) * coeffs_[j];
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  const Complex lead = leading();
  if (lead == Complex(1.0)) return *this;
  std::vector<Complex> c(coeffs_);
  for (Complex& v : c) v /= lead;
  c.back() = 1.0;
  return Poly(std::move(c));
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  trim();
  return *this;
}

Poly& Poly::operator*=(Complex scale) {
  for (Complex& c : coeffs_) c *= scale;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

std::pair<Complex, Complex> eval_and_derivative(const Poly& p, Complex z) {
  if (p.is_zero()) throw DomainError("cannot evaluate the zero polynomial");
  const HornerValue h = horner(p.coeffs(), z);
  return {h.value, h.derivative};
}

Poly shift(const Poly& p, Complex z0) {
  if (p.is_zero()) return {};
  // Repeated synthetic division by (t - z0); after pass k, c[k] is the k-th
  // Taylor coefficient.
  std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
  const int n = p.degree();
  for (int k = 0; k < n; ++k)
    for (int j = n - 1; j >= k; --j) c[j] += z0 * c[j + 1];
  return Poly(std::move(c));
}

RootSet roots(const Poly& p, const RootOptions& options) {
  if (p.degree() < 1) throw DomainError("root finding requires degree >= 1");
  const Poly q = p.monic();
  const int n = q.degree();

  // Exact zero roots are deflated first; they are common in plant
  // denominators like s^4 + 2 s^2.
  int zeros = 0;
  while (q[zeros] == Complex(0.0)) ++zeros;
  std::vector<Complex> reduced(q.coeffs().begin() + zeros, q.coeffs().end());
  const int m = n - zeros;

  RootSet result;
  std::vector<Complex> z(m);
  if (m == 1) {
    z[0] = -reduced[0];
  } else if (m > 1) {
    double radius = 0.0;
    for (int j = 0; j < m; ++j) radius = std::max(radius, std::abs(reduced[j]));
    radius += 1.0;
    for (int k = 0; k < m; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / m + 0.4;
      z[k] = std::polar(radius, angle);
    }

    std::vector<bool> done(m, false);
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
      bool all_done = true;
      for (int k = 0; k < m; ++k) {
        if (done[k]) continue;
        const HornerValue h = horner(reduced, z[k]);
        if (std::abs(h.value) <= 8.0 * kEps * h.abs_bound) {
          done[k] = true;
          continue;
        }
        Complex sum = 0.0;
        for (int j = 0; j < m; ++j) {
          if (j == k) continue;
          const Complex diff = z[k] - z[j];
          if (diff != Complex(0.0)) sum += 1.0 / diff;
        }
        const Complex denom = h.derivative - h.value * sum;
        Complex step;
        if (denom == Complex(0.0)) {
          step = Complex(1e-8, 1e-8) * (1.0 + std::abs(z[k]));
        } else {
          step = h.value / denom;
        }
        z[k] -= step;
        if (std::abs(step) < options.correction_tol * (1.0 + std::abs(z[k]))) {
          done[k] = true;
        } else {
          all_done = false;
        }
      }
      if (all_done) break;
    }
    result.iterations = iter;
  }

  z.insert(z.end(), zeros, Complex(0.0));
  std::sort(z.begin(), z.end(), root_order);

  double residual = 0.0;
  double rho = kEps;
  const double scale = p.max_abs_coeff();
  for (const Complex r : z) {
    const HornerValue h = horner(q.coeffs(), r);
    residual = std::max(residual, std::abs(p(r)) / (scale * std::pow(1.0 + std::abs(r), n)));
    if (h.abs_bound > 0.0) rho = std::max(rho, std::abs(h.value) / h.abs_bound);
  }
  result.residual = residual;
  if (result.iterations >= options.max_iterations && residual > options.residual_tol) {
    std::ostringstream msg;
    msg << "root finder did not converge in " << options.max_iterations
        << " iterations (residual " << residual << ")";
    throw ConvergenceError(msg.str(), z, residual);
  }
  result.clusters = detect_clusters(z, rho);
  result.roots = std::move(z);
  return result;
}

double abscissa(const Poly& p, const RootOptions& options) {
  if (p.degree() < 1) throw DomainError("abscissa of a constant polynomial is undefined");
  const RootSet rs = roots(p.monic(), options);
  double best = -std::numeric_limits<double>::infinity();
  for (const Complex r : rs.roots) best = std::max(best, r.real());
  return best;
}

}  // namespace absmin
