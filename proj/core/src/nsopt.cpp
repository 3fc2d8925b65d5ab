#include "absmin/nsopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "absmin/error.hpp"

namespace absmin {

const char* to_string(OptStatus status) {
  switch (status) {
    case OptStatus::kConverged:
      return "converged";
    case OptStatus::kIterationCap:
      return "iteration-cap";
    case OptStatus::kStalled:
      return "stalled";
  }
  return "unknown";
}

std::vector<double> abscissa_gradient(const Plant& plant, const Controller& k) {
  const Poly p = closed_loop_poly(plant, k);
  const RootSet rs = roots(p);
  const Complex z = *std::max_element(rs.roots.begin(), rs.roots.end(),
                                      [](Complex a, Complex b) { return a.real() < b.real(); });
  const auto [value, slope] = eval_and_derivative(p, z);
  const double scale = p.max_abs_coeff();
  if (std::abs(slope) <= 1e-6 * scale) {
    std::ostringstream msg;
    msg << "nonsmooth point: active root " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
        << "i is multiple (|p'(z)| = " << std::abs(slope) << ")";
    throw NonsmoothPointError(msg.str());
  }
  const int m = k.order();
  std::vector<double> grad(k.param_count());
  for (int j = 0; j < k.param_count(); ++j) {
    const Complex basis = parameter_basis(plant, m, j)(z);
    grad[j] = (-basis / slope).real();
  }
  return grad;
}

Eigen::VectorXd min_norm_in_hull(const Eigen::MatrixXd& points, Eigen::VectorXd* weights) {
  const Eigen::Index count = points.cols();
  if (count == 0) throw DomainError("min_norm_in_hull needs at least one point");
  const double scale = points.colwise().squaredNorm().maxCoeff();
  const double tol = 1e-12 * std::max(scale, std::numeric_limits<double>::min());

  Eigen::Index first;
  points.colwise().squaredNorm().minCoeff(&first);
  std::vector<Eigen::Index> active{first};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = points.col(first);

  auto combine = [&](const std::vector<double>& w) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(points.rows());
    for (std::size_t i = 0; i < active.size(); ++i) v += w[i] * points.col(active[i]);
    return v;
  };

  for (int major = 0; major < 10 * static_cast<int>(count) + 50; ++major) {
    Eigen::Index j;
    (points.transpose() * x).minCoeff(&j);
    if (x.dot(points.col(j)) >= x.squaredNorm() - tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 10 * static_cast<int>(count) + 50; ++minor) {
      // Affine minimizer over the active set: [P^T P  1; 1^T 0] [mu; nu] = [0; 1].
      const auto k = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b)
          kkt(a, b) = points.col(active[a]).dot(points.col(active[b]));
        kkt(a, k) = 1.0;
        kkt(k, a) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs(k) = 1.0;
      const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      std::vector<double> mu(sol.data(), sol.data() + k);

      if (std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-14; })) {
        lambda = mu;
        x = combine(lambda);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index a = 0; a < k; ++a)
        if (mu[a] <= 1e-14 && lambda[a] - mu[a] > 0.0)
          theta = std::min(theta, lambda[a] / (lambda[a] - mu[a]));
      for (Eigen::Index a = 0; a < k; ++a) lambda[a] += theta * (mu[a] - lambda[a]);
      for (Eigen::Index a = k - 1; a >= 0; --a) {
        if (lambda[a] <= 1e-14) {
          active.erase(active.begin() + a);
          lambda.erase(lambda.begin() + a);
        }
      }
      double total = 0.0;
      for (double v : lambda) total += v;
      for (double& v : lambda) v /= total;
      x = combine(lambda);
      if (active.size() <= 1) break;
    }
  }

  if (weights != nullptr) {
    *weights = Eigen::VectorXd::Zero(count);
    for (std::size_t i = 0; i < active.size(); ++i) (*weights)(active[i]) = lambda[i];
  }
  return x;
}

OptOptions resolved_options(const OptOptions& options, int dim) {
  OptOptions o = options;
  if (o.sample_count <= 0) o.sample_count = 2 * dim;
  if (o.radius_schedule.empty())
    for (int k = 0; k <= 17; ++k) o.radius_schedule.push_back(0.1 * std::ldexp(1.0, -k));
  if (o.sample_count < dim + 1) throw DomainError("sample_count must be >= parameter dimension + 1");
  for (std::size_t i = 0; i < o.radius_schedule.size(); ++i) {
    if (!(o.radius_schedule[i] > 0.0)) throw DomainError("sampling radii must be positive");
    if (i > 0 && !(o.radius_schedule[i] < o.radius_schedule[i - 1]))
      throw DomainError("sampling radii must be strictly decreasing");
  }
  if (o.max_iters < 0) throw DomainError("max_iters must be non-negative");
  return o;
}

OptResult minimize_abscissa(const Plant& plant, int m, const Controller& start,
                            const OptOptions& options) {
  if (start.order() != m) throw DomainError("start controller order does not match m");
  const int dim = 2 * m + 1;
  const OptOptions opts = resolved_options(options, dim);

  auto eval = [&](const Eigen::VectorXd& theta) {
    const std::vector<double> t(theta.data(), theta.data() + theta.size());
    return objective(plant, Controller::from_params(m, t));
  };
  auto gradient = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& out) {
    const std::vector<double> t(theta.data(), theta.data() + theta.size());
    try {
      const std::vector<double> g = abscissa_gradient(plant, Controller::from_params(m, t));
      out = Eigen::Map<const Eigen::VectorXd>(g.data(), dim);
      return out.allFinite();
    } catch (const NonsmoothPointError&) {
      return false;
    } catch (const ConvergenceError&) {
      return false;
    }
  };

  const std::vector<double> start_params = start.params();
  Eigen::VectorXd theta = Eigen::Map<const Eigen::VectorXd>(start_params.data(), dim);
  double f;
  try {
    f = eval(theta);
  } catch (const std::exception& e) {
    throw DomainError(std::string("objective failed at the starting controller: ") + e.what());
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto sample_ball = [&](double radius) {
    Eigen::VectorXd u(dim);
    for (int i = 0; i < dim; ++i) u(i) = normal(rng);
    const double scale = radius * std::pow(uniform(rng), 1.0 / dim) / u.norm();
    return Eigen::VectorXd(u * scale);
  };

  OptResult result{start, f, {}, OptStatus::kIterationCap};
  std::size_t level = 0;
  result.trace.push_back({0, f, opts.radius_schedule[0]});

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    const double radius = opts.radius_schedule[level];
    const bool last_level = level + 1 == opts.radius_schedule.size();

    Eigen::MatrixXd bundle(dim, opts.sample_count + 1);
    Eigen::Index filled = 0;
    Eigen::VectorXd g(dim);
    if (gradient(theta, g)) bundle.col(filled++) = g;
    // Samples landing on nonsmooth points are redrawn, up to a fixed budget.
    for (int draws = 0; filled <= opts.sample_count && draws < 4 * opts.sample_count; ++draws) {
      const Eigen::VectorXd point = theta + sample_ball(radius);
      if (gradient(point, g)) bundle.col(filled++) = g;
    }

    bool shrink = filled == 0;
    double step = 0.0;
    Eigen::VectorXd direction;
    double fnew = f;
    if (!shrink) {
      const Eigen::VectorXd hull_min = min_norm_in_hull(bundle.leftCols(filled));
      const double norm = hull_min.norm();
      if (norm <= opts.termination_tol) {
        if (last_level) {
          result.status = OptStatus::kConverged;
          result.trace.push_back({iter, f, radius});
          break;
        }
        shrink = true;
      } else {
        direction = -hull_min / norm;
        double t = opts.initial_step;
        for (int bt = 0; bt < opts.max_backtracks; ++bt, t *= 0.5) {
          double ft;
          try {
            ft = eval(theta + t * direction);
          } catch (const ConvergenceError&) {
            continue;
          }
          if (ft < f - opts.armijo * t * norm) {
            step = t;
            fnew = ft;
            break;
          }
        }
        if (step == 0.0) shrink = true;
      }
    }

    if (shrink) {
      if (last_level) {
        result.status = OptStatus::kStalled;
        result.trace.push_back({iter, f, radius});
        break;
      }
      ++level;
    } else {
      theta += step * direction;
      f = fnew;
    }
    result.trace.push_back({iter, f, opts.radius_schedule[level]});
  }

  const std::vector<double> final_params(theta.data(), theta.data() + dim);
  result.controller = Controller::from_params(m, final_params);
  result.objective = f;
  return result;
}

}  // namespace absmin
