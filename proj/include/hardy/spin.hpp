#pragma once

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "hardy/linalg.hpp"

namespace hardy {

/// Spin projection stored as the exact integer 2m, so half-integer outcomes
/// never touch floating point.
struct SpinLabel {
  int two_m = 0;

  double value() const { return two_m / 2.0; }
  bool valid_for(int two_s) const {
    return std::abs(two_m) <= two_s && (two_m - two_s) % 2 == 0;
  }
  /// Exact rendering: "-1", "0", "3/2", ...
  std::string str() const;

  friend bool operator==(SpinLabel a, SpinLabel b) = default;
  friend auto operator<=>(SpinLabel a, SpinLabel b) = default;
};

/// Unit 3-vector.
struct Direction {
  double x = 0, y = 0, z = 1;

  static Direction from_angles(double theta, double phi);
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double theta() const;  // polar angle in [0, pi]
  double phi() const;    // azimuth in [0, 2*pi)
};

/// Uniform direction on the sphere: cos(theta) ~ U[-1,1], phi ~ U[0,2*pi).
/// Uses raw generator output, so results are identical across platforms.
Direction random_direction(std::mt19937_64& gen);

/// Uniform double in [0,1) from the top 53 bits of one generator draw.
double uniform_unit(std::mt19937_64& gen);

struct SpinOperators {
  CMat sx, sy, sz;
};

/// Spin-s component operators in the ascending-m product basis: index k of
/// the (2s+1)-dimensional space carries m = -s + k, so sz = diag(-s..+s).
/// Ladder elements <m+-1|S+-|m> = sqrt(s(s+1) - m(m+-1)).
SpinOperators spin_operators(int two_s);

/// Eigenvectors of the spin component along one direction, ordered by m
/// ascending from -s to +s. Column k is the eigenvector for m = -s + k.
struct MeasurementBasis {
  int two_s = 1;
  Direction direction;
  CMat vectors;

  Eigen::Index dim() const { return vectors.cols(); }
  Eigen::Index index_of(SpinLabel m) const { return (m.two_m + two_s) / 2; }
  CVec eigenvector(SpinLabel m) const;
};

/// Diagonalizes n.S and labels eigenvectors by the half-integer nearest to
/// each eigenvalue; the match doubles as a self-test of the construction.
MeasurementBasis direction_basis(int two_s, const Direction& n);

/// Tensor product of selected eigenvectors, party 0 as the leftmost
/// (slowest-varying) factor. Unit norm.
CVec joint_vector(const std::vector<MeasurementBasis>& bases,
                  const std::vector<SpinLabel>& outcomes);

/// Index of the product-basis state with the given outcomes:
/// sum_k (m_k + s) * (2s+1)^(n-1-k).
Eigen::Index joint_index(int two_s, const std::vector<SpinLabel>& outcomes);

/// Inverse of joint_index.
std::vector<SpinLabel> outcomes_from_index(int n, int two_s,
                                           Eigen::Index index);

}  // namespace hardy
