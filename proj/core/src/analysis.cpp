#include "absmin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absmin/error.hpp"

namespace absmin {

namespace {

constexpr double kRealTol = 1e-12;

}  // namespace

double settling_time(const std::vector<double>& times, const std::vector<double>& values,
                     double final_value, double band_fraction, bool* settled) {
  double band = band_fraction * std::abs(final_value);
  if (band == 0.0) {
    for (double v : values) band = std::max(band, band_fraction * std::abs(v));
  }
  std::size_t first_inside = 0;
  for (std::size_t i = values.size(); i-- > 0;) {
    if (std::abs(values[i] - final_value) > band) {
      first_inside = i + 1;
      break;
    }
  }
  const bool ok = first_inside < values.size();
  if (settled != nullptr) *settled = ok;
  return ok ? times[first_inside] : times.back();
}

StepResponse step_response(const Plant& plant, const Controller& k, double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw DomainError("step response needs dt > 0 and horizon > 0");
  const Poly den = closed_loop_poly(plant, k);
  const Poly num = plant.num() * k.x();
  if (!den.is_real(kRealTol) || !num.is_real(kRealTol))
    throw DomainError("step response needs real coefficients");
  if (den[0] == Complex(0.0)) throw DomainError("closed loop has a pole at 0: no DC gain");
  if (!(abscissa(den) < 0.0)) throw DomainError("closed loop is not stable");

  const std::vector<double> d = den.real_coeffs(kRealTol);
  const int n = den.degree();
  const double lead = d.back();
  Eigen::VectorXd a(n), c = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) a(j) = d[j] / lead;
  for (int j = 0; j <= num.degree() && j < n; ++j) c(j) = num[j].real() / lead;

  // x' = companion(a) x + e_n u, y = c^T x
  auto deriv = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd dx(n);
    for (int i = 0; i + 1 < n; ++i) dx(i) = x(i + 1);
    dx(n - 1) = 1.0 - a.dot(x);
    return dx;
  };

  StepResponse out;
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  out.times.reserve(steps + 1);
  out.values.reserve(steps + 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t s = 0; s <= steps; ++s) {
    out.times.push_back(static_cast<double>(s) * dt);
    out.values.push_back(c.dot(x));
    if (s == steps) break;
    const Eigen::VectorXd k1 = deriv(x);
    const Eigen::VectorXd k2 = deriv(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = deriv(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = deriv(x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  out.final_value = c(0) / a(0);
  out.settling_time = settling_time(out.times, out.values, out.final_value, 0.02, &out.settled);
  return out;
}

Eigen::VectorXd pseudozero_perturbation(const Poly& p, Complex z, const PseudozeroOptions& options) {
  if (p.degree() < 1) throw DomainError("pseudozero distance needs degree >= 1");
  if (!p.is_real(kRealTol)) throw DomainError("pseudozero distance needs real coefficients");
  const int n = p.degree();
  const int free = options.perturb_leading ? n + 1 : n;

  Eigen::VectorXd re(n + 1), im(n + 1);
  Complex power = 1.0;
  for (int j = 0; j <= n; ++j) {
    re(j) = power.real();
    im(j) = power.imag();
    power *= z;
  }
  if (free == n) {
    re(n) = 0.0;
    im(n) = 0.0;
  }
  const Complex value = p(z);
  const double b1 = -value.real();
  const double b2 = -value.imag();

  // Orthonormalize the two constraint rows; the minimum-norm solution lies
  // in their span.
  const double n1 = re.norm();
  const Eigen::VectorXd e1 = re / n1;
  const double proj = im.dot(e1);
  Eigen::VectorXd r2 = im - proj * e1;
  const double n2 = r2.norm();
  const double a1 = b1 / n1;
  Eigen::VectorXd d = a1 * e1;
  if (n2 > 1e-15 * std::max(n1, im.norm())) {
    const double a2 = (b2 - proj * a1) / n2;
    d += a2 * (r2 / n2);
  }
  return d;
}

double pseudozero_distance(const Poly& p, Complex z, const PseudozeroOptions& options) {
  return pseudozero_perturbation(p, z, options).norm();
}

Complex PseudozeroGrid::point(int ix, int iy) const {
  const double re = nx > 1 ? region.re_min + ix * (region.re_max - region.re_min) / (nx - 1) : region.re_min;
  const double im = ny > 1 ? region.im_min + iy * (region.im_max - region.im_min) / (ny - 1) : region.im_min;
  return {re, im};
}

PseudozeroGrid pseudozero_grid(const Poly& p, const Region& region, int nx, int ny, double epsilon,
                               const PseudozeroOptions& options) {
  if (nx < 2 || ny < 2) throw DomainError("pseudozero grid needs resolution at least 2 x 2");
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max))
    throw DomainError("pseudozero region must have positive extent");
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
  PseudozeroGrid grid{region, nx, ny, Eigen::MatrixXd(ny, nx), epsilon};
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) grid.distances(iy, ix) = pseudozero_distance(p, grid.point(ix, iy), options);
  return grid;
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  if (digits < 1) throw DomainError("digits must be >= 1");
  if (digits >= 17) return value;
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const int shift = digits - 1 - exponent;
  const double scale = std::pow(10.0, std::abs(shift));
  return shift >= 0 ? std::round(value * scale) / scale : std::round(value / scale) * scale;
}

FragilityReport fragility_experiment(const Plant& plant, const Controller& k, int digits) {
  const Poly nominal_poly = closed_loop_poly(plant, k);
  if (!(abscissa(nominal_poly) < 0.0)) throw DomainError("nominal closed loop is not stable");

  std::vector<double> theta = k.params();
  for (double& v : theta) v = round_significant(v, digits);
  Controller rounded = Controller::from_params(k.order(), theta);

  const RootSet nominal_roots = roots(nominal_poly);
  const RootSet rounded_roots = roots(closed_loop_poly(plant, rounded));

  double displacement = 0.0;
  for (const Complex r : rounded_roots.roots) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const RootCluster& c : nominal_roots.clusters) nearest = std::min(nearest, std::abs(r - c.center));
    displacement = std::max(displacement, nearest);
  }
  return {digits, k, std::move(rounded), nominal_roots.roots, rounded_roots.roots, displacement};
}

}  // namespace absmin
