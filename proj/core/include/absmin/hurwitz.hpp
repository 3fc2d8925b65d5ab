#pragma once

#include <vector>

#include <Eigen/Dense>

#include "absmin/poly.hpp"

namespace absmin {

struct HurwitzReport {
  /// n x n Hurwitz matrix of the (sign-normalized) degree-n polynomial.
  Eigen::MatrixXd matrix;
  /// Leading principal minors, minors[k] is the determinant of the
  /// (k+1) x (k+1) north-west block.
  std::vector<double> minors;
  bool stable = false;
};

/// Hurwitz matrix with entry (i, j) = coefficient of s^(n - 2i + j)
/// (1-based i, j; zero outside [0, n]). The polynomial must be real; a
/// negative leading coefficient is flipped first.
Eigen::MatrixXd hurwitz_matrix(const Poly& p);

/// Routh-Hurwitz verdict: stable iff every leading principal minor is
/// strictly positive, with "strictly" meaning above 1e-10 times the
/// product of the block's row norms.
HurwitzReport is_hurwitz_stable(const Poly& p);

/// Determinant by fraction-free (Bareiss) elimination with partial pivoting.
double bareiss_determinant(Eigen::MatrixXd m);

}  // namespace absmin
