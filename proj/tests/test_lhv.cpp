#include <doctest.h>

#include "hardy/errors.hpp"
#include "hardy/io.hpp"
#include "hardy/lhv.hpp"
#include "test_util.hpp"

using namespace hardy;
using namespace hardy::testutil;

namespace {

struct EventSplit {
  std::vector<Event> zeros;
  std::vector<ConstraintTag> tags;
  Event target;
  Event anchor;
};

EventSplit split_events(const Scenario& sc, ArgumentMode mode) {
  EventSplit out;
  for (const auto& se : expand_events(sc, mode)) {
    switch (se.requirement) {
      case Requirement::Zero:
        out.zeros.push_back(se.event);
        out.tags.push_back(se.tag);
        break;
      case Requirement::TargetP:
        out.target = se.event;
        break;
      case Requirement::AnchorQ:
        out.anchor = se.event;
        break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("strategy_indicator") {
  // spin-1 strategy: unprimed (+1, 0), primed (-1, -1)
  LhvStrategy st;
  st.outcomes = {{SpinLabel{2}, SpinLabel{-2}}, {SpinLabel{0}, SpinLabel{-2}}};

  Event full;
  full.settings = {Setting::Unprimed, Setting::Unprimed};
  for (int i = 0; i < 9; ++i) full.outcome_set.push_back(outcomes_from_index(2, 2, i));
  CHECK(strategy_indicator(st, full) == 1);

  Event target;  // primed pair at (-1, -1)
  target.settings = {Setting::Primed, Setting::Primed};
  target.outcome_set = {{SpinLabel{-2}, SpinLabel{-2}}};
  CHECK(strategy_indicator(st, target) == 1);

  Event mixed;  // requires s_a = -1, s_b' = -1 but the strategy has s_a = +1
  mixed.settings = {Setting::Unprimed, Setting::Primed};
  mixed.outcome_set = {{SpinLabel{-2}, SpinLabel{-2}}};
  CHECK(strategy_indicator(st, mixed) == 0);

  Event bad;
  bad.settings = {Setting::Unprimed};
  bad.outcome_set = {{SpinLabel{0}}};
  CHECK_THROWS_AS(strategy_indicator(st, bad), PreconditionError);
}

TEST_CASE("lhv_max forbids the hardy target under the relaxed zeros") {
  const Scenario sc = generic_scenario(2, 2, 61);
  const auto ev = split_events(sc, ArgumentMode::Relaxed);
  const auto res = lhv_max(2, 2, ev.zeros, {{ev.target, 1.0}});
  CHECK(res.max_value == 0.0);
  CHECK(res.strategies_total == 81);
  CHECK(res.surviving > 0);
}

TEST_CASE("lhv_max bounds the cabello objective at zero") {
  const Scenario sc = generic_scenario(2, 2, 62);
  const auto ev = split_events(sc, ArgumentMode::Cabello);
  const auto res =
      lhv_max(2, 2, ev.zeros, {{ev.target, 1.0}, {ev.anchor, -1.0}});
  CHECK(res.max_value == 0.0);
  // the bound is attained: some survivor hits both anchor and target
  REQUIRE(res.argmax.has_value());
  CHECK(strategy_indicator(*res.argmax, ev.target) ==
        strategy_indicator(*res.argmax, ev.anchor));
}

TEST_CASE("lhv_max with no zero events reaches any single event") {
  Event target;
  target.settings = {Setting::Primed, Setting::Unprimed};
  target.outcome_set = {{SpinLabel{1}, SpinLabel{-1}}};
  const auto res = lhv_max(2, 1, {}, {{target, 1.0}});
  CHECK(res.max_value == 1.0);
  CHECK(res.surviving == 16);
  REQUIRE(res.argmax.has_value());
  CHECK(strategy_indicator(*res.argmax, target) == 1);
}

TEST_CASE("lhv_max enforces the strategy-space guard") {
  Event t;
  t.settings = {Setting::Unprimed, Setting::Unprimed};
  t.outcome_set = {{SpinLabel{56}, SpinLabel{56}}};
  CHECK_THROWS_AS(lhv_max(2, 56, {}, {{t, 1.0}}), ResourceLimit);
}

TEST_CASE("random survivor mixtures never beat the deterministic optimum") {
  const Scenario sc = generic_scenario(2, 1, 63);
  const auto ev = split_events(sc, ArgumentMode::Relaxed);
  const auto res = lhv_max(2, 1, ev.zeros, {{ev.target, 1.0}});

  // independent re-enumeration of survivor values
  std::vector<double> values;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
          LhvStrategy st;
          st.outcomes = {{SpinLabel{2 * a0 - 1}, SpinLabel{2 * a1 - 1}},
                         {SpinLabel{2 * b0 - 1}, SpinLabel{2 * b1 - 1}}};
          bool killed = false;
          for (const auto& z : ev.zeros) {
            if (strategy_indicator(st, z)) {
              killed = true;
              break;
            }
          }
          if (!killed) values.push_back(strategy_indicator(st, ev.target));
        }
  CHECK(values.size() == res.surviving);

  std::mt19937_64 gen(606);
  for (int rep = 0; rep < 200; ++rep) {
    double wsum = 0, mixture = 0;
    std::vector<double> w(values.size());
    for (auto& wi : w) {
      wi = uniform_unit(gen);
      wsum += wi;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      mixture += w[i] / wsum * values[i];
    }
    CHECK(mixture <= res.max_value + 1e-12);
  }
}

TEST_CASE("certify the hardy argument for two qubits") {
  const Scenario sc = generic_scenario(2, 1, 64);
  const auto sys = mode_system(sc, ArgumentMode::Relaxed);
  const auto rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target);
  const auto sol = max_hardy_state(rep, sys.target, sys.zeros);
  const auto cert = certify(sc, ArgumentMode::Relaxed, sol);
  CHECK(cert.lhv_bound == 0.0);
  CHECK(cert.quantum_value == doctest::Approx(sol.p));
  CHECK(cert.gap > 1e-10);
  CHECK(cert.certified);
  CHECK(cert.dim_m_bar == 1);
  CHECK(cert.strategies_total == 16);
}

TEST_CASE("certify the cabello argument for spin-1") {
  const Scenario sc = generic_scenario(2, 2, 65);
  const auto sys = mode_system(sc, ArgumentMode::Cabello);
  const auto rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target);
  const auto sol = max_cabello_state(rep, sys.anchor, sys.target, sys.zeros);
  const auto cert = certify(sc, ArgumentMode::Cabello, sol);
  CHECK(cert.lhv_bound == 0.0);
  CHECK(cert.quantum_value == doctest::Approx(sol.p - sol.q));
  CHECK(cert.certified);
  CHECK(cert.dim_m_bar == 5);
}

TEST_CASE("certify refuses to mark a gapless solution") {
  const Scenario sc = generic_scenario(2, 1, 66);
  HardySolution flat;
  flat.state = CVec::Zero(4);
  flat.p = 0;
  flat.max_zero_residual = 0;
  const auto cert = certify(sc, ArgumentMode::Relaxed, flat);
  CHECK(cert.gap == 0.0);
  CHECK_FALSE(cert.certified);
}

TEST_CASE("minimal_zero_subset reproduces the spin-1 redundancy") {
  const Scenario sc = generic_scenario(2, 2, 67);
  const auto ev = split_events(sc, ArgumentMode::Legacy);
  REQUIRE(ev.zeros.size() == 7);
  const auto sub = minimal_zero_subset(2, 2, ev.zeros, ev.target);
  CHECK(sub.exact);
  CHECK(sub.indices == std::vector<std::size_t>{0, 1, 3, 4, 5});
  std::vector<std::string> labels;
  for (auto i : sub.indices) labels.push_back(ev.tags[i].label());
  CHECK(labels ==
        std::vector<std::string>{"Eq5", "Eq6", "Eq8", "Eq9", "Eq10"});
}

TEST_CASE("all proper subsets of the minimal set fail") {
  const Scenario sc = generic_scenario(2, 2, 68);
  const auto ev = split_events(sc, ArgumentMode::Legacy);
  const auto sub = minimal_zero_subset(2, 2, ev.zeros, ev.target);
  for (std::size_t drop = 0; drop < sub.indices.size(); ++drop) {
    std::vector<Event> fewer;
    for (std::size_t i = 0; i < sub.indices.size(); ++i) {
      if (i != drop) fewer.push_back(ev.zeros[sub.indices[i]]);
    }
    const auto res = lhv_max(2, 2, fewer, {{ev.target, 1.0}});
    CHECK(res.max_value == 1.0);
  }
}

TEST_CASE("minimal_zero_subset needs every zero event for two qubits") {
  const Scenario sc = generic_scenario(2, 1, 69);
  const auto ev = split_events(sc, ArgumentMode::Relaxed);
  REQUIRE(ev.zeros.size() == 3);
  const auto sub = minimal_zero_subset(2, 1, ev.zeros, ev.target);
  CHECK(sub.indices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("minimal_zero_subset without zero events has no contradiction") {
  const Scenario sc = generic_scenario(2, 1, 70);
  const auto ev = split_events(sc, ArgumentMode::Relaxed);
  CHECK_THROWS_AS(minimal_zero_subset(2, 1, {}, ev.target), NoContradiction);
}

TEST_CASE("minimal_zero_subset falls back to greedy beyond 20 events") {
  // legacy spin-5/2 has 1 + 2s(2s+1) = 31 zero events
  const Scenario sc = generic_scenario(2, 5, 73);
  const auto ev = split_events(sc, ArgumentMode::Legacy);
  REQUIRE(ev.zeros.size() == 31);
  const auto sub = minimal_zero_subset(2, 5, ev.zeros, ev.target);
  CHECK_FALSE(sub.exact);
  CHECK(std::is_sorted(sub.indices.begin(), sub.indices.end()));
  // the greedy pick must still be a valid excluding set
  std::vector<Event> chosen;
  for (auto i : sub.indices) chosen.push_back(ev.zeros[i]);
  CHECK(lhv_max(2, 5, chosen, {{ev.target, 1.0}}).max_value == 0.0);
}

TEST_CASE("minimal_zero_subset respects the strategy-space guard") {
  Event t;
  t.settings = {Setting::Primed, Setting::Primed};
  t.outcome_set = {{SpinLabel{-60}, SpinLabel{-60}}};
  CHECK_THROWS_AS(minimal_zero_subset(2, 60, {}, t), ResourceLimit);
}

TEST_CASE("n-party relaxed zeros force the LHV bound to zero") {
  for (int two_s : {1, 2}) {
    const Scenario sc = generic_scenario(3, two_s, 71 + two_s);
    const auto ev = split_events(sc, ArgumentMode::Relaxed);
    const auto res = lhv_max(3, two_s, ev.zeros, {{ev.target, 1.0}});
    CHECK(res.max_value == 0.0);
    CHECK(res.surviving > 0);
  }
}
