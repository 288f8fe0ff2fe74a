#include "hardy/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/errors.hpp"

namespace hardy {

std::string SpinLabel::str() const {
  if (two_m % 2 == 0) return std::to_string(two_m / 2);
  return std::to_string(two_m) + "/2";
}

Direction Direction::from_angles(double theta, double phi) {
  return Direction{std::sin(theta) * std::cos(phi),
                   std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double Direction::theta() const { return std::acos(std::clamp(z, -1.0, 1.0)); }

double Direction::phi() const {
  double p = std::atan2(y, x);
  if (p < 0) p += 2 * std::numbers::pi;
  return p;
}

double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Direction random_direction(std::mt19937_64& gen) {
  const double c = 2.0 * uniform_unit(gen) - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform_unit(gen);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return Direction{s * std::cos(phi), s * std::sin(phi), c};
}

SpinOperators spin_operators(int two_s) {
  if (two_s < 1) throw PreconditionError("spin_operators: two_s must be >= 1");
  const Eigen::Index d = two_s + 1;
  const double s = two_s / 2.0;

  CMat sz = CMat::Zero(d, d);
  CMat sp = CMat::Zero(d, d);  // raising operator
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = -s + static_cast<double>(k);
    sz(k, k) = m;
    if (k + 1 < d) sp(k + 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const CMat sm = sp.adjoint();
  SpinOperators ops;
  ops.sx = (sp + sm) / 2.0;
  ops.sy = (sp - sm) / Complex(0, 2);
  ops.sz = std::move(sz);
  return ops;
}

CVec MeasurementBasis::eigenvector(SpinLabel m) const {
  if (!m.valid_for(two_s)) {
    throw PreconditionError("eigenvector: outcome " + m.str() +
                            " invalid for two_s=" + std::to_string(two_s));
  }
  return vectors.col(index_of(m));
}

MeasurementBasis direction_basis(int two_s, const Direction& n) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    throw PreconditionError("direction_basis: direction is not a unit vector");
  }
  const auto ops = spin_operators(two_s);
  const CMat h = n.x * ops.sx + n.y * ops.sy + n.z * ops.sz;
  auto eig = hermitian_eig(h);

  const double s = two_s / 2.0;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double expected = -s + static_cast<double>(k);
    if (std::abs(eig.eigenvalues(k) - expected) > 1e-8) {
      throw InternalConsistencyError(
          "direction_basis: eigenvalue does not match a half-integer");
    }
  }
  return MeasurementBasis{two_s, n, std::move(eig.eigenvectors.vectors)};
}

CVec joint_vector(const std::vector<MeasurementBasis>& bases,
                  const std::vector<SpinLabel>& outcomes) {
  if (bases.empty() || bases.size() != outcomes.size()) {
    throw PreconditionError("joint_vector: one outcome per basis required");
  }
  CVec v = bases[0].eigenvector(outcomes[0]);
  for (std::size_t k = 1; k < bases.size(); ++k) {
    const CVec f = bases[k].eigenvector(outcomes[k]);
    CVec out(v.size() * f.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out.segment(i * f.size(), f.size()) = v(i) * f;
    }
    v = std::move(out);
  }
  return v;
}

Eigen::Index joint_index(int two_s, const std::vector<SpinLabel>& outcomes) {
  const Eigen::Index d = two_s + 1;
  Eigen::Index idx = 0;
  for (const SpinLabel& m : outcomes) {
    if (!m.valid_for(two_s)) {
      throw PreconditionError("joint_index: invalid outcome " + m.str());
    }
    idx = idx * d + (m.two_m + two_s) / 2;
  }
  return idx;
}

std::vector<SpinLabel> outcomes_from_index(int n, int two_s,
                                           Eigen::Index index) {
  const Eigen::Index d = two_s + 1;
  std::vector<SpinLabel> out(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] =
        SpinLabel{static_cast<int>(index % d) * 2 - two_s};
    index /= d;
  }
  return out;
}

}  // namespace hardy
