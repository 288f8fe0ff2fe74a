#pragma once

#include <cstdint>
#include <utility>

#include "hardy/scenario.hpp"

namespace hardy {

/// Dimensions of the constraint span M, its complement M_bar, and the
/// complement M_bar_prime after adjoining the target vector.
struct SubspaceReport {
  SubspaceBasis basis_m_bar;
  Eigen::Index dim_m = 0;
  Eigen::Index dim_m_bar = 0;
  Eigen::Index dim_m_bar_prime = 0;

  Eigen::Index ambient_dim() const { return basis_m_bar.ambient_dim; }
};

struct DensityMatrix {
  CMat matrix;

  Eigen::Index dim() const { return matrix.rows(); }
  double trace_error() const { return std::abs(matrix.trace() - 1.0); }
  double min_eigenvalue() const;
};

/// Extremal state of one argument: the zero constraints hold up to
/// max_zero_residual, the target probability is p, and (cabello mode) the
/// anchor probability is q. nondegenerate is false when q fell below 1e-12,
/// i.e. the solution collapsed to the plain Hardy case.
struct HardySolution {
  CVec state;
  double p = 0;
  double q = 0;
  double max_zero_residual = 0;
  bool nondegenerate = true;
};

SubspaceReport hardy_subspace(const ConstraintSet& cs, Eigen::Index ambient_dim,
                              const CVec& target,
                              double tol = kDefaultRankTol);

/// The p-maximizing member of M_bar - M_bar_prime: the normalized projection
/// of the target onto M_bar, with p its squared norm. Throws NoHardyState
/// when the projection vanishes (the target lies inside M).
HardySolution max_hardy_state(const SubspaceReport& rep, const CVec& target,
                              const ConstraintSet& cs);

/// Maximizes p - q = <psi|(|D><D| - |A><A|)|psi> over unit states in M_bar
/// via the compressed eigenproblem. Throws NoCabelloGap when the top
/// eigenvalue is not positive.
HardySolution max_cabello_state(const SubspaceReport& rep, const CVec& anchor_a,
                                const CVec& target_d, const ConstraintSet& cs);

/// Two distinct unit states in M_bar, each with strictly positive objective
/// value p - q, for mixed-state demonstrations. The first is the maximizer;
/// the second is rotated inside M_bar until its value drops to half the
/// maximum, so both remain genuine solutions.
std::pair<CVec, CVec> cabello_solution_pair(const SubspaceReport& rep,
                                            const CVec& anchor_a,
                                            const CVec& target_d);

double quantum_probability(const CVec& state,
                           const std::vector<MeasurementBasis>& bases,
                           const Event& event);
double quantum_probability(const DensityMatrix& rho,
                           const std::vector<MeasurementBasis>& bases,
                           const Event& event);
/// Convenience overload picking each party's basis from the event settings.
double quantum_probability(const CVec& state, const Scenario& sc,
                           const Event& event);
double quantum_probability(const DensityMatrix& rho, const Scenario& sc,
                           const Event& event);

DensityMatrix mix(const std::vector<CVec>& states,
                  const std::vector<double>& weights);

/// Counts per outcome tuple, indexed by joint_index order.
struct SampleCounts {
  int n = 0;
  int two_s = 0;
  std::vector<std::int64_t> counts;
};

/// Multinomial draw from the exact joint distribution under the given
/// per-party bases; deterministic for a fixed seed.
SampleCounts sample_outcomes(const CVec& state,
                             const std::vector<MeasurementBasis>& bases,
                             std::int64_t shots, std::uint64_t seed);

}  // namespace hardy
