#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hardy/solver.hpp"

namespace hardy {

/// Deterministic assignment: one outcome per party and setting. These are
/// the vertices of the local polytope, so maximizing a linear objective
/// over them yields the exact LHV optimum.
struct LhvStrategy {
  // outcomes[party][setting]
  std::vector<std::array<SpinLabel, 2>> outcomes;

  SpinLabel outcome(std::size_t party, Setting s) const {
    return outcomes[party][static_cast<std::size_t>(s)];
  }
};

int strategy_indicator(const LhvStrategy& strategy, const Event& event);

inline constexpr std::uint64_t kLhvStrategyGuard = 10'000'000;

/// (2s+1)^(2n), saturating just above the guard.
std::uint64_t lhv_strategy_count(int n, int two_s);

struct LhvResult {
  double max_value = 0;
  std::optional<LhvStrategy> argmax;
  std::uint64_t strategies_total = 0;
  std::uint64_t surviving = 0;
};

/// Enumerates all (2s+1)^(2n) deterministic strategies, discards those
/// hitting any zero event, and maximizes sum(weight * indicator) over the
/// survivors. Throws ResourceLimit when the strategy space exceeds 10^7.
/// With no survivors, max_value is 0 and argmax is empty.
LhvResult lhv_max(int n, int two_s, const std::vector<Event>& zero_events,
                  const std::vector<std::pair<Event, double>>& objective);

struct Certificate {
  ArgumentMode mode = ArgumentMode::Relaxed;
  double quantum_value = 0;
  double lhv_bound = 0;
  double gap = 0;
  Eigen::Index dim_m = 0;
  Eigen::Index dim_m_bar = 0;
  Eigen::Index dim_m_bar_prime = 0;
  std::uint64_t strategies_total = 0;
  std::uint64_t strategies_surviving = 0;
  bool certified = false;
};

/// Quantum value (p, or p-q in cabello mode) against the exact LHV bound
/// under the same zero constraints. Certified iff the gap exceeds 1e-10 and
/// the solution's zero residuals pass.
Certificate certify(const Scenario& sc, ArgumentMode mode,
                    const HardySolution& solution,
                    double tol = kDefaultRankTol);

struct MinimalSubset {
  std::vector<std::size_t> indices;
  bool exact = true;
};

/// Smallest subset of zero events that still forbids every surviving
/// strategy from hitting the target. Exhaustive (ordered by size, then
/// lexicographic) up to 20 events; greedy beyond that. Throws
/// NoContradiction when even the full set leaves a target-hitting survivor.
MinimalSubset minimal_zero_subset(int n, int two_s,
                                  const std::vector<Event>& zero_events,
                                  const Event& target);

}  // namespace hardy
