#include "hardy/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

std::string to_string(ArgumentMode mode) {
  switch (mode) {
    case ArgumentMode::Relaxed: return "hardy";
    case ArgumentMode::Legacy: return "legacy";
    case ArgumentMode::Cabello: return "cabello";
  }
  return "?";
}

ArgumentMode parse_mode(const std::string& name) {
  if (name == "hardy" || name == "relaxed") return ArgumentMode::Relaxed;
  if (name == "legacy") return ArgumentMode::Legacy;
  if (name == "cabello") return ArgumentMode::Cabello;
  throw PreconditionError("unknown mode '" + name + "'");
}

Eigen::Index Scenario::ambient_dim() const {
  Eigen::Index d = 1;
  for (int k = 0; k < n; ++k) d *= (two_s + 1);
  return d;
}

void Scenario::validate() const {
  if (n < 2) throw PreconditionError("scenario: n must be >= 2");
  if (two_s < 1) throw PreconditionError("scenario: two_s must be >= 1");
  if (parties.size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("scenario: expected one settings block per party");
  }
  for (const auto& p : parties) {
    if (std::abs(p.unprimed.norm() - 1.0) > 1e-12 ||
        std::abs(p.primed.norm() - 1.0) > 1e-12) {
      throw PreconditionError("scenario: directions must be unit vectors");
    }
    if (!p.zero_label.valid_for(two_s) || !p.target_label.valid_for(two_s)) {
      throw PreconditionError("scenario: selector label invalid for two_s=" +
                              std::to_string(two_s));
    }
  }
}

Scenario Scenario::with_legacy_selectors() const {
  Scenario out = *this;
  for (auto& p : out.parties) {
    p.zero_label = SpinLabel{two_s};
    p.target_label = SpinLabel{-two_s};
  }
  return out;
}

ScenarioBases make_bases(const Scenario& sc) {
  sc.validate();
  ScenarioBases bases;
  bases.unprimed.reserve(sc.parties.size());
  bases.primed.reserve(sc.parties.size());
  for (const auto& p : sc.parties) {
    bases.unprimed.push_back(direction_basis(sc.two_s, p.unprimed));
    bases.primed.push_back(direction_basis(sc.two_s, p.primed));
  }
  return bases;
}

bool Event::contains(const std::vector<SpinLabel>& tuple) const {
  return std::find(outcome_set.begin(), outcome_set.end(), tuple) !=
         outcome_set.end();
}

std::string ConstraintTag::label() const {
  switch (kind) {
    case Kind::JointZero:
      return "JOINT_ZERO";
    case Kind::SideZero:
      return "A_SIDE_ZERO(" + std::to_string(party) + ")[m=" + outcome.str() +
             "]";
    case Kind::Legacy:
      return "Eq" + std::to_string(eq_index);
  }
  return "?";
}

std::vector<CVec> ConstraintSet::vectors() const {
  std::vector<CVec> out;
  out.reserve(zero_vectors.size());
  for (const auto& tv : zero_vectors) out.push_back(tv.vector);
  return out;
}

namespace {

std::vector<SpinLabel> all_labels(int two_s) {
  std::vector<SpinLabel> out;
  for (int tm = -two_s; tm <= two_s; tm += 2) out.push_back(SpinLabel{tm});
  return out;
}

// Joint vector with party `up` unprimed at outcome m and everyone else
// primed at their target label; up = -1 means all unprimed at zero labels.
CVec mixed_setting_vector(const Scenario& sc, const ScenarioBases& bases,
                          int up, SpinLabel m) {
  std::vector<MeasurementBasis> bs;
  std::vector<SpinLabel> outs;
  for (int k = 0; k < sc.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (up < 0) {
      bs.push_back(bases.unprimed[ku]);
      outs.push_back(sc.parties[ku].zero_label);
    } else if (k == up) {
      bs.push_back(bases.unprimed[ku]);
      outs.push_back(m);
    } else {
      bs.push_back(bases.primed[ku]);
      outs.push_back(sc.parties[ku].target_label);
    }
  }
  return joint_vector(bs, outs);
}

Event single_tuple_event(std::vector<Setting> settings,
                         std::vector<SpinLabel> tuple) {
  return Event{std::move(settings), {std::move(tuple)}};
}

}  // namespace

ConstraintSet relaxed_constraints(const Scenario& sc) {
  sc.validate();
  const auto bases = make_bases(sc);
  ConstraintSet cs;
  cs.ambient_dim = sc.ambient_dim();

  cs.zero_vectors.push_back(
      {mixed_setting_vector(sc, bases, -1, SpinLabel{}),
       ConstraintTag{ConstraintTag::Kind::JointZero, -1, -1, SpinLabel{}}});
  for (int k = 0; k < sc.n; ++k) {
    for (SpinLabel m : all_labels(sc.two_s)) {
      if (m == sc.parties[static_cast<std::size_t>(k)].zero_label) continue;
      cs.zero_vectors.push_back(
          {mixed_setting_vector(sc, bases, k, m),
           ConstraintTag{ConstraintTag::Kind::SideZero, k, -1, m}});
    }
  }
  return cs;
}

ConstraintSet legacy_constraints(const Scenario& sc) {
  if (sc.n != 2) throw PreconditionError("legacy_constraints: n must be 2");
  const Scenario lsc = sc.with_legacy_selectors();
  lsc.validate();
  const auto bases = make_bases(lsc);
  const SpinLabel top{lsc.two_s};

  ConstraintSet cs;
  cs.ambient_dim = lsc.ambient_dim();
  int eq = 5;  // numbering follows the explicit s=1 list

  cs.zero_vectors.push_back(
      {joint_vector({bases.unprimed[0], bases.unprimed[1]}, {top, top}),
       ConstraintTag{ConstraintTag::Kind::Legacy, -1, eq++, SpinLabel{}}});

  std::vector<std::pair<SpinLabel, SpinLabel>> pairs;
  for (SpinLabel m : all_labels(lsc.two_s)) {
    for (SpinLabel mp : all_labels(lsc.two_s)) {
      if (m.two_m + mp.two_m < 0) pairs.emplace_back(m, mp);
    }
  }
  for (auto [m, mp] : pairs) {  // settings (a, b')
    cs.zero_vectors.push_back(
        {joint_vector({bases.unprimed[0], bases.primed[1]}, {m, mp}),
         ConstraintTag{ConstraintTag::Kind::Legacy, -1, eq++, SpinLabel{}}});
  }
  for (auto [m, mp] : pairs) {  // settings (a', b)
    cs.zero_vectors.push_back(
        {joint_vector({bases.primed[0], bases.unprimed[1]}, {m, mp}),
         ConstraintTag{ConstraintTag::Kind::Legacy, -1, eq++, SpinLabel{}}});
  }
  return cs;
}

CabelloParts cabello_constraints(const Scenario& sc) {
  if (sc.n != 2) throw PreconditionError("cabello_constraints: n must be 2");
  sc.validate();
  const auto bases = make_bases(sc);

  CabelloParts parts;
  parts.zeros.ambient_dim = sc.ambient_dim();
  for (int k = 0; k < 2; ++k) {
    for (SpinLabel m : all_labels(sc.two_s)) {
      if (m == sc.parties[static_cast<std::size_t>(k)].zero_label) continue;
      parts.zeros.zero_vectors.push_back(
          {mixed_setting_vector(sc, bases, k, m),
           ConstraintTag{ConstraintTag::Kind::SideZero, k, -1, m}});
    }
  }
  parts.anchor_a = mixed_setting_vector(sc, bases, -1, SpinLabel{});
  parts.target_d = target_vector(sc);
  return parts;
}

CVec target_vector(const Scenario& sc) {
  sc.validate();
  std::vector<MeasurementBasis> bs;
  std::vector<SpinLabel> outs;
  for (const auto& p : sc.parties) {
    bs.push_back(direction_basis(sc.two_s, p.primed));
    outs.push_back(p.target_label);
  }
  return joint_vector(bs, outs);
}

ModeSystem mode_system(const Scenario& sc, ArgumentMode mode) {
  ModeSystem sys;
  switch (mode) {
    case ArgumentMode::Relaxed:
      sys.zeros = relaxed_constraints(sc);
      sys.target = target_vector(sc);
      break;
    case ArgumentMode::Legacy:
      sys.zeros = legacy_constraints(sc);
      sys.target = target_vector(sc.with_legacy_selectors());
      break;
    case ArgumentMode::Cabello: {
      auto parts = cabello_constraints(sc);
      sys.zeros = std::move(parts.zeros);
      sys.target = std::move(parts.target_d);
      sys.anchor = std::move(parts.anchor_a);
      break;
    }
  }
  return sys;
}

namespace {

std::vector<SpinLabel> selector_tuple(const Scenario& sc, bool target) {
  std::vector<SpinLabel> out;
  for (const auto& p : sc.parties) {
    out.push_back(target ? p.target_label : p.zero_label);
  }
  return out;
}

ScenarioEvent side_zero_event(const Scenario& sc, int k, SpinLabel m) {
  std::vector<Setting> settings(static_cast<std::size_t>(sc.n),
                                Setting::Primed);
  settings[static_cast<std::size_t>(k)] = Setting::Unprimed;
  auto tuple = selector_tuple(sc, true);
  tuple[static_cast<std::size_t>(k)] = m;
  return ScenarioEvent{
      single_tuple_event(std::move(settings), std::move(tuple)),
      Requirement::Zero,
      ConstraintTag{ConstraintTag::Kind::SideZero, k, -1, m}};
}

}  // namespace

std::vector<ScenarioEvent> expand_events(const Scenario& sc,
                                         ArgumentMode mode) {
  const Scenario use =
      mode == ArgumentMode::Legacy ? sc.with_legacy_selectors() : sc;
  use.validate();
  if (mode != ArgumentMode::Relaxed && use.n != 2) {
    throw PreconditionError("expand_events: this mode requires n = 2");
  }

  const std::vector<Setting> all_unprimed(static_cast<std::size_t>(use.n),
                                          Setting::Unprimed);
  const std::vector<Setting> all_primed(static_cast<std::size_t>(use.n),
                                        Setting::Primed);
  std::vector<ScenarioEvent> events;

  if (mode == ArgumentMode::Legacy) {
    const SpinLabel top{use.two_s};
    int eq = 5;
    events.push_back(
        {single_tuple_event(all_unprimed, {top, top}), Requirement::Zero,
         ConstraintTag{ConstraintTag::Kind::Legacy, -1, eq++, SpinLabel{}}});
    std::vector<std::pair<SpinLabel, SpinLabel>> pairs;
    for (SpinLabel m : all_labels(use.two_s)) {
      for (SpinLabel mp : all_labels(use.two_s)) {
        if (m.two_m + mp.two_m < 0) pairs.emplace_back(m, mp);
      }
    }
    for (auto [m, mp] : pairs) {
      events.push_back(
          {single_tuple_event({Setting::Unprimed, Setting::Primed}, {m, mp}),
           Requirement::Zero,
           ConstraintTag{ConstraintTag::Kind::Legacy, -1, eq++, SpinLabel{}}});
    }
    for (auto [m, mp] : pairs) {
      events.push_back(
          {single_tuple_event({Setting::Primed, Setting::Unprimed}, {m, mp}),
           Requirement::Zero,
           ConstraintTag{ConstraintTag::Kind::Legacy, -1, eq++, SpinLabel{}}});
    }
  } else {
    if (mode == ArgumentMode::Relaxed) {
      events.push_back(
          {single_tuple_event(all_unprimed, selector_tuple(use, false)),
           Requirement::Zero,
           ConstraintTag{ConstraintTag::Kind::JointZero, -1, -1, SpinLabel{}}});
    }
    for (int k = 0; k < use.n; ++k) {
      for (SpinLabel m : all_labels(use.two_s)) {
        if (m == use.parties[static_cast<std::size_t>(k)].zero_label) continue;
        events.push_back(side_zero_event(use, k, m));
      }
    }
    if (mode == ArgumentMode::Cabello) {
      events.push_back(
          {single_tuple_event(all_unprimed, selector_tuple(use, false)),
           Requirement::AnchorQ, ConstraintTag{}});
    }
  }

  events.push_back({single_tuple_event(all_primed, selector_tuple(use, true)),
                    Requirement::TargetP, ConstraintTag{}});
  return events;
}

}  // namespace hardy
