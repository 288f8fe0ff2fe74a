#include "hardy/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

double max_residual(const ConstraintSet& cs, const CVec& state) {
  double r = 0;
  for (const auto& tv : cs.zero_vectors) {
    r = std::max(r, std::abs(tv.vector.dot(state)));
  }
  return r;
}

double clamp_probability(double raw) {
  if (raw < -1e-12 || raw > 1 + 1e-12) {
    throw InternalConsistencyError(
        "quantum_probability: value outside [0,1] beyond tolerance");
  }
  return std::clamp(raw, 0.0, 1.0);
}

void check_event(const std::vector<MeasurementBasis>& bases,
                 const Event& event, Eigen::Index state_dim) {
  if (bases.empty() || bases.size() != event.settings.size()) {
    throw PreconditionError(
        "quantum_probability: event settings do not match supplied bases");
  }
  if (event.outcome_set.empty()) {
    throw PreconditionError("quantum_probability: empty event");
  }
  Eigen::Index dim = 1;
  for (const auto& b : bases) dim *= b.dim();
  if (dim != state_dim) {
    throw PreconditionError("quantum_probability: dimension mismatch");
  }
  for (const auto& tuple : event.outcome_set) {
    if (tuple.size() != bases.size()) {
      throw PreconditionError("quantum_probability: malformed outcome tuple");
    }
  }
}

std::vector<MeasurementBasis> bases_for(const Scenario& sc,
                                        const Event& event) {
  if (event.settings.size() != static_cast<std::size_t>(sc.n)) {
    throw PreconditionError(
        "quantum_probability: event party count does not match scenario");
  }
  std::vector<MeasurementBasis> bases;
  bases.reserve(event.settings.size());
  for (std::size_t k = 0; k < event.settings.size(); ++k) {
    const auto& p = sc.parties[k];
    const Direction& d =
        event.settings[k] == Setting::Unprimed ? p.unprimed : p.primed;
    bases.push_back(direction_basis(sc.two_s, d));
  }
  return bases;
}

}  // namespace

double DensityMatrix::min_eigenvalue() const {
  return hermitian_eig(matrix).eigenvalues.minCoeff();
}

SubspaceReport hardy_subspace(const ConstraintSet& cs,
                              Eigen::Index ambient_dim, const CVec& target,
                              double tol) {
  if (target.size() != ambient_dim) {
    throw PreconditionError("hardy_subspace: target dimension mismatch");
  }
  auto vectors = cs.vectors();
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) {
      throw PreconditionError("hardy_subspace: constraint dimension mismatch");
    }
  }

  SubspaceReport rep;
  rep.basis_m_bar = orthonormal_complement(vectors, ambient_dim, tol);
  rep.dim_m = ambient_dim - rep.basis_m_bar.size();
  rep.dim_m_bar = rep.basis_m_bar.size();

  vectors.push_back(target);
  rep.dim_m_bar_prime = ambient_dim - numeric_rank(vectors, tol);
  return rep;
}

HardySolution max_hardy_state(const SubspaceReport& rep, const CVec& target,
                              const ConstraintSet& cs) {
  if (target.size() != rep.ambient_dim()) {
    throw PreconditionError("max_hardy_state: target dimension mismatch");
  }
  const CVec proj = project_onto_span(target, rep.basis_m_bar);
  const double norm = proj.norm();
  if (norm < 1e-12) {
    throw NoHardyState(
        "target vector lies in the constraint span; no state with p > 0");
  }
  HardySolution sol;
  sol.state = proj / norm;
  fix_phase(sol.state);
  sol.p = norm * norm;
  sol.q = 0;
  sol.max_zero_residual = max_residual(cs, sol.state);
  return sol;
}

HardySolution max_cabello_state(const SubspaceReport& rep,
                                const CVec& anchor_a, const CVec& target_d,
                                const ConstraintSet& cs) {
  if (anchor_a.size() != rep.ambient_dim() ||
      target_d.size() != rep.ambient_dim()) {
    throw PreconditionError("max_cabello_state: dimension mismatch");
  }
  const auto& basis = rep.basis_m_bar.vectors;
  if (basis.cols() == 0) {
    throw NoCabelloGap("solution space M_bar is empty");
  }
  const CVec d_red = basis.adjoint() * target_d;
  const CVec a_red = basis.adjoint() * anchor_a;
  const CMat objective =
      d_red * d_red.adjoint() - a_red * a_red.adjoint();

  const auto eig = hermitian_eig(objective);
  const Eigen::Index top = eig.eigenvalues.size() - 1;
  if (eig.eigenvalues(top) <= 1e-12) {
    throw NoCabelloGap("objective has no positive direction in M_bar");
  }

  HardySolution sol;
  sol.state = basis * eig.eigenvectors.vectors.col(top);
  fix_phase(sol.state);
  sol.p = std::norm(target_d.dot(sol.state));
  sol.q = std::norm(anchor_a.dot(sol.state));
  sol.max_zero_residual = max_residual(cs, sol.state);
  sol.nondegenerate = sol.q >= 1e-12;
  return sol;
}

std::pair<CVec, CVec> cabello_solution_pair(const SubspaceReport& rep,
                                            const CVec& anchor_a,
                                            const CVec& target_d) {
  const auto& basis = rep.basis_m_bar.vectors;
  if (basis.cols() < 2) {
    throw NoCabelloGap("M_bar has dimension < 2; no distinct solution pair");
  }
  const CVec d_red = basis.adjoint() * target_d;
  const CVec a_red = basis.adjoint() * anchor_a;
  const CMat objective = d_red * d_red.adjoint() - a_red * a_red.adjoint();

  const auto eig = hermitian_eig(objective);
  const Eigen::Index top = eig.eigenvalues.size() - 1;
  const double l1 = eig.eigenvalues(top);
  const double l2 = eig.eigenvalues(top - 1);
  if (l1 <= 1e-12) {
    throw NoCabelloGap("objective has no positive direction in M_bar");
  }

  const CVec v1 = eig.eigenvectors.vectors.col(top);
  const CVec v2 = eig.eigenvectors.vectors.col(top - 1);
  // Rotate away from the maximizer while keeping the objective value at
  // l1/2 > 0: value(t) = l1 cos^2 t + l2 sin^2 t along the v1-v2 circle.
  double t = std::numbers::pi / 4;
  if (l2 < l1 / 2) {
    t = std::acos(std::sqrt((l1 / 2 - l2) / (l1 - l2)));
  }
  CVec psi1 = basis * v1;
  CVec psi2 = basis * (std::cos(t) * v1 + std::sin(t) * v2);
  fix_phase(psi1);
  fix_phase(psi2);
  return {std::move(psi1), std::move(psi2)};
}

double quantum_probability(const CVec& state,
                           const std::vector<MeasurementBasis>& bases,
                           const Event& event) {
  check_event(bases, event, state.size());
  double total = 0;
  for (const auto& tuple : event.outcome_set) {
    total += std::norm(joint_vector(bases, tuple).dot(state));
  }
  return clamp_probability(total);
}

double quantum_probability(const DensityMatrix& rho,
                           const std::vector<MeasurementBasis>& bases,
                           const Event& event) {
  check_event(bases, event, rho.dim());
  double total = 0;
  for (const auto& tuple : event.outcome_set) {
    const CVec w = joint_vector(bases, tuple);
    total += w.dot(rho.matrix * w).real();
  }
  return clamp_probability(total);
}

double quantum_probability(const CVec& state, const Scenario& sc,
                           const Event& event) {
  return quantum_probability(state, bases_for(sc, event), event);
}

double quantum_probability(const DensityMatrix& rho, const Scenario& sc,
                           const Event& event) {
  return quantum_probability(rho, bases_for(sc, event), event);
}

DensityMatrix mix(const std::vector<CVec>& states,
                  const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw PreconditionError("mix: one weight per state required");
  }
  double sum = 0;
  for (double w : weights) {
    if (w < 0) throw PreconditionError("mix: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw PreconditionError("mix: weights must sum to 1");
  }
  const Eigen::Index dim = states.front().size();
  CMat rho = CMat::Zero(dim, dim);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].size() != dim) {
      throw PreconditionError("mix: inconsistent state dimensions");
    }
    rho += weights[k] * (states[k] * states[k].adjoint());
  }
  return DensityMatrix{std::move(rho)};
}

SampleCounts sample_outcomes(const CVec& state,
                             const std::vector<MeasurementBasis>& bases,
                             std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw PreconditionError("sample_outcomes: shots must be >= 1");
  if (bases.empty()) {
    throw PreconditionError("sample_outcomes: at least one basis required");
  }
  const int n = static_cast<int>(bases.size());
  const int two_s = bases.front().two_s;

  Eigen::Index dim = 1;
  for (const auto& b : bases) {
    if (b.two_s != two_s) {
      throw PreconditionError("sample_outcomes: mixed spins not supported");
    }
    dim *= b.dim();
  }
  if (dim != state.size()) {
    throw PreconditionError("sample_outcomes: dimension mismatch");
  }

  std::vector<double> cdf(static_cast<std::size_t>(dim));
  double acc = 0;
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const auto tuple = outcomes_from_index(n, two_s, idx);
    acc += std::norm(joint_vector(bases, tuple).dot(state));
    cdf[static_cast<std::size_t>(idx)] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-9) {
    throw InternalConsistencyError("sample_outcomes: distribution sum far from 1");
  }
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;

  SampleCounts out;
  out.n = n;
  out.two_s = two_s;
  out.counts.assign(static_cast<std::size_t>(dim), 0);
  std::mt19937_64 gen(seed);
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    const double u = uniform_unit(gen);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(), dim - 1));
    ++out.counts[idx];
  }
  return out;
}

}  // namespace hardy
