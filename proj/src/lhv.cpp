#include "hardy/lhv.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

// Event with outcomes flattened to 0..d-1 indices for fast comparison.
struct CompiledEvent {
  std::vector<Setting> settings;
  std::vector<std::vector<int>> tuples;
};

CompiledEvent compile_event(const Event& ev, int n, int two_s) {
  if (ev.settings.size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("lhv: event party count mismatch");
  }
  if (ev.outcome_set.empty()) {
    throw PreconditionError("lhv: empty event");
  }
  CompiledEvent out;
  out.settings = ev.settings;
  for (const auto& tuple : ev.outcome_set) {
    if (tuple.size() != static_cast<std::size_t>(n)) {
      throw PreconditionError("lhv: malformed outcome tuple");
    }
    std::vector<int> t;
    for (SpinLabel m : tuple) {
      if (!m.valid_for(two_s)) {
        throw PreconditionError("lhv: outcome invalid for two_s");
      }
      t.push_back((m.two_m + two_s) / 2);
    }
    out.tuples.push_back(std::move(t));
  }
  return out;
}

// strategy[2k + setting] is party k's outcome index under that setting.
bool hits(const std::vector<int>& strategy, const CompiledEvent& ev) {
  for (const auto& tuple : ev.tuples) {
    bool match = true;
    for (std::size_t k = 0; k < ev.settings.size(); ++k) {
      const std::size_t slot = 2 * k + static_cast<std::size_t>(ev.settings[k]);
      if (strategy[slot] != tuple[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

void decode(std::uint64_t index, int d, std::vector<int>& slots) {
  for (auto& s : slots) {
    s = static_cast<int>(index % static_cast<std::uint64_t>(d));
    index /= static_cast<std::uint64_t>(d);
  }
}

LhvStrategy to_strategy(const std::vector<int>& slots, int n, int two_s) {
  LhvStrategy st;
  st.outcomes.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    st.outcomes[ku][0] = SpinLabel{slots[2 * ku] * 2 - two_s};
    st.outcomes[ku][1] = SpinLabel{slots[2 * ku + 1] * 2 - two_s};
  }
  return st;
}

}  // namespace

std::uint64_t lhv_strategy_count(int n, int two_s) {
  const auto d = static_cast<std::uint64_t>(two_s + 1);
  std::uint64_t total = 1;
  for (int i = 0; i < 2 * n; ++i) {
    if (total > kLhvStrategyGuard) return total;
    total *= d;
  }
  return total;
}

int strategy_indicator(const LhvStrategy& strategy, const Event& event) {
  if (event.settings.size() != strategy.outcomes.size()) {
    throw PreconditionError("strategy_indicator: party count mismatch");
  }
  std::vector<SpinLabel> tuple;
  tuple.reserve(event.settings.size());
  for (std::size_t k = 0; k < event.settings.size(); ++k) {
    tuple.push_back(strategy.outcome(k, event.settings[k]));
  }
  return event.contains(tuple) ? 1 : 0;
}

LhvResult lhv_max(int n, int two_s, const std::vector<Event>& zero_events,
                  const std::vector<std::pair<Event, double>>& objective) {
  if (n < 1 || two_s < 1) {
    throw PreconditionError("lhv_max: need n >= 1 and two_s >= 1");
  }
  const std::uint64_t total = lhv_strategy_count(n, two_s);
  if (total > kLhvStrategyGuard) {
    throw ResourceLimit("lhv_max: strategy space exceeds 10^7");
  }

  std::vector<CompiledEvent> zeros;
  for (const auto& ev : zero_events) zeros.push_back(compile_event(ev, n, two_s));
  std::vector<std::pair<CompiledEvent, double>> obj;
  for (const auto& [ev, w] : objective) {
    obj.emplace_back(compile_event(ev, n, two_s), w);
  }

  LhvResult res;
  res.strategies_total = total;
  const int d = two_s + 1;
  std::vector<int> slots(static_cast<std::size_t>(2 * n));
  bool first = true;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode(idx, d, slots);
    bool killed = false;
    for (const auto& z : zeros) {
      if (hits(slots, z)) {
        killed = true;
        break;
      }
    }
    if (killed) continue;
    ++res.surviving;
    double value = 0;
    for (const auto& [ev, w] : obj) {
      if (hits(slots, ev)) value += w;
    }
    if (first || value > res.max_value) {
      res.max_value = value;
      res.argmax = to_strategy(slots, n, two_s);
      first = false;
    }
  }
  if (first) {
    res.max_value = 0;
    res.argmax.reset();
  }
  return res;
}

Certificate certify(const Scenario& sc, ArgumentMode mode,
                    const HardySolution& solution, double tol) {
  const auto events = expand_events(sc, mode);
  std::vector<Event> zeros;
  std::vector<std::pair<Event, double>> objective;
  for (const auto& se : events) {
    switch (se.requirement) {
      case Requirement::Zero:
        zeros.push_back(se.event);
        break;
      case Requirement::TargetP:
        objective.emplace_back(se.event, 1.0);
        break;
      case Requirement::AnchorQ:
        objective.emplace_back(se.event, -1.0);
        break;
    }
  }
  const LhvResult lhv = lhv_max(sc.n, sc.two_s, zeros, objective);

  Certificate cert;
  cert.mode = mode;
  cert.quantum_value = mode == ArgumentMode::Cabello
                           ? solution.p - solution.q
                           : solution.p;
  cert.lhv_bound = lhv.max_value;
  cert.gap = cert.quantum_value - cert.lhv_bound;
  cert.strategies_total = lhv.strategies_total;
  cert.strategies_surviving = lhv.surviving;

  const auto sys = mode_system(sc, mode);
  const auto rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target, tol);
  cert.dim_m = rep.dim_m;
  cert.dim_m_bar = rep.dim_m_bar;
  cert.dim_m_bar_prime = rep.dim_m_bar_prime;

  cert.certified = cert.gap > 1e-10 && solution.max_zero_residual < 1e-10;
  return cert;
}

MinimalSubset minimal_zero_subset(int n, int two_s,
                                  const std::vector<Event>& zero_events,
                                  const Event& target) {
  const std::uint64_t total = lhv_strategy_count(n, two_s);
  if (total > kLhvStrategyGuard) {
    throw ResourceLimit("minimal_zero_subset: strategy space exceeds 10^7");
  }
  const std::size_t z = zero_events.size();

  std::vector<CompiledEvent> zeros;
  for (const auto& ev : zero_events) zeros.push_back(compile_event(ev, n, two_s));
  const CompiledEvent tgt = compile_event(target, n, two_s);

  // For every strategy that hits the target, record which zero events would
  // kill it. A subset works iff it intersects every such mask.
  std::vector<std::uint32_t> masks;
  const int d = two_s + 1;
  std::vector<int> slots(static_cast<std::size_t>(2 * n));
  const bool exact = z <= 20;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode(idx, d, slots);
    if (!hits(slots, tgt)) continue;
    std::uint32_t mask = 0;
    bool any = false;
    for (std::size_t j = 0; j < z; ++j) {
      if (hits(slots, zeros[j])) {
        if (exact) mask |= (1u << j);
        any = true;
      }
    }
    if (!any) {
      throw NoContradiction(
          "a strategy hits the target and no zero event excludes it");
    }
    if (exact) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  if (!exact) {
    // Greedy hitting set over per-strategy kill sets.
    std::vector<std::vector<std::size_t>> kill_sets;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      decode(idx, d, slots);
      if (!hits(slots, tgt)) continue;
      std::vector<std::size_t> ks;
      for (std::size_t j = 0; j < z; ++j) {
        if (hits(slots, zeros[j])) ks.push_back(j);
      }
      kill_sets.push_back(std::move(ks));
    }
    std::vector<bool> covered(kill_sets.size(), false);
    std::vector<std::size_t> chosen;
    std::size_t remaining = kill_sets.size();
    while (remaining > 0) {
      std::vector<std::size_t> gain(z, 0);
      for (std::size_t i = 0; i < kill_sets.size(); ++i) {
        if (covered[i]) continue;
        for (std::size_t j : kill_sets[i]) ++gain[j];
      }
      const std::size_t best = static_cast<std::size_t>(
          std::max_element(gain.begin(), gain.end()) - gain.begin());
      chosen.push_back(best);
      for (std::size_t i = 0; i < kill_sets.size(); ++i) {
        if (covered[i]) continue;
        if (std::find(kill_sets[i].begin(), kill_sets[i].end(), best) !=
            kill_sets[i].end()) {
          covered[i] = true;
          --remaining;
        }
      }
    }
    std::sort(chosen.begin(), chosen.end());
    return MinimalSubset{std::move(chosen), false};
  }

  if (masks.empty()) return MinimalSubset{{}, true};

  // Subsets ordered by size, then lexicographically by index set.
  const auto next_combination = [z](std::vector<std::size_t>& comb) {
    const std::size_t size = comb.size();
    std::size_t i = size;
    while (i-- > 0) {
      if (comb[i] != i + z - size) {
        ++comb[i];
        for (std::size_t j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> comb;
  for (std::size_t size = 1; size <= z; ++size) {
    comb.resize(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    do {
      std::uint32_t subset = 0;
      for (std::size_t i : comb) subset |= (1u << i);
      bool ok = true;
      for (std::uint32_t m : masks) {
        if ((m & subset) == 0) {
          ok = false;
          break;
        }
      }
      if (ok) return MinimalSubset{comb, true};
    } while (next_combination(comb));
  }
  throw NoContradiction("no zero-event subset excludes the target");
}

}  // namespace hardy
