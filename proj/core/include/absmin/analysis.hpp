#pragma once

#include <vector>

#include <Eigen/Dense>

#include "absmin/plant.hpp"

namespace absmin {

struct StepResponse {
  std::vector<double> times;
  std::vector<double> values;
  double final_value = 0.0;
  /// First sample time after which the output stays within 2% of
  /// final_value up to the horizon; equals the horizon when unsettled.
  double settling_time = 0.0;
  bool settled = false;
};

/// Unit step of the negative-feedback loop T = num x / (den x + num y),
/// simulated by fixed-step RK4 on a controllable canonical realization.
/// Throws DomainError when the loop is not stable or has no DC gain.
StepResponse step_response(const Plant& plant, const Controller& k, double horizon = 30.0,
                           double dt = 1e-3);

/// Settling time of a sampled response against a band of band_fraction * |final|.
double settling_time(const std::vector<double>& times, const std::vector<double>& values,
                     double final_value, double band_fraction, bool* settled = nullptr);

struct PseudozeroOptions {
  /// Whether the leading coefficient may be perturbed.
  bool perturb_leading = true;
};

/// Minimum 2-norm real perturbation d of the coefficients with
/// (p + d)(z) = 0. With perturb_leading off the last entry is zero.
Eigen::VectorXd pseudozero_perturbation(const Poly& p, Complex z,
                                        const PseudozeroOptions& options = {});

double pseudozero_distance(const Poly& p, Complex z, const PseudozeroOptions& options = {});

struct Region {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
};

struct PseudozeroGrid {
  Region region;
  int nx = 0;
  int ny = 0;
  /// distances(iy, ix) at re = re_min + ix * dre, im = im_min + iy * dim.
  Eigen::MatrixXd distances;
  double epsilon = 0.0;

  Complex point(int ix, int iy) const;
  bool member(int ix, int iy) const { return distances(iy, ix) <= epsilon; }
};

PseudozeroGrid pseudozero_grid(const Poly& p, const Region& region, int nx, int ny, double epsilon,
                               const PseudozeroOptions& options = {});

/// Round to `digits` significant decimal digits, halves away from zero.
double round_significant(double value, int digits);

struct FragilityReport {
  int digits = 0;
  Controller nominal;
  Controller rounded;
  std::vector<Complex> nominal_roots;
  std::vector<Complex> rounded_roots;
  /// max over rounded roots of the distance to the nearest nominal root
  /// (clusters represented by their centers).
  double max_displacement = 0.0;
};

FragilityReport fragility_experiment(const Plant& plant, const Controller& k, int digits);

}  // namespace absmin
