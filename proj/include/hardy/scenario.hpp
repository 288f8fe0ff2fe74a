#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardy/spin.hpp"

namespace hardy {

enum class Setting : std::uint8_t { Unprimed = 0, Primed = 1 };

enum class ArgumentMode { Relaxed, Legacy, Cabello };

std::string to_string(ArgumentMode mode);
/// Accepts "hardy", "relaxed", "legacy", "cabello".
ArgumentMode parse_mode(const std::string& name);

struct PartySettings {
  Direction unprimed;        // a_k
  Direction primed;          // a'_k
  SpinLabel zero_label;      // s^k_i, the unprimed joint-zero outcome
  SpinLabel target_label;    // s^k_j, the primed target outcome
};

/// n spin-s parties, each with one unprimed and one primed direction and the
/// selector pair (s^k_i, s^k_j). For n=2 the four selectors are the usual
/// (s_i, s_j) unprimed and (s_k, s_l) primed.
struct Scenario {
  int n = 2;
  int two_s = 1;
  std::vector<PartySettings> parties;

  Eigen::Index ambient_dim() const;
  /// Throws PreconditionError if counts or selector labels are inconsistent.
  void validate() const;
  /// Copy with all selectors forced to the legacy choice (+s, -s).
  Scenario with_legacy_selectors() const;
};

/// Per-party measurement bases for both settings, built once per scenario.
struct ScenarioBases {
  std::vector<MeasurementBasis> unprimed;
  std::vector<MeasurementBasis> primed;

  const MeasurementBasis& at(std::size_t party, Setting s) const {
    return s == Setting::Unprimed ? unprimed[party] : primed[party];
  }
};

ScenarioBases make_bases(const Scenario& sc);

/// One joint probability: a setting choice per party and the set of outcome
/// tuples it sums over.
struct Event {
  std::vector<Setting> settings;
  std::vector<std::vector<SpinLabel>> outcome_set;

  bool contains(const std::vector<SpinLabel>& tuple) const;
};

struct ConstraintTag {
  enum class Kind { JointZero, SideZero, Legacy };
  Kind kind = Kind::JointZero;
  int party = -1;      // SideZero: which party is unprimed
  int eq_index = -1;   // Legacy: equation number, 5-based like the s=1 list
  SpinLabel outcome;   // SideZero: the m != s^k_i outcome

  std::string label() const;
};

struct TaggedVector {
  CVec vector;
  ConstraintTag tag;
};

/// Product vectors the solution state must annihilate.
struct ConstraintSet {
  std::vector<TaggedVector> zero_vectors;
  Eigen::Index ambient_dim = 0;

  std::vector<CVec> vectors() const;
};

/// The compact constraint family: one all-unprimed joint vector at the
/// s^k_i labels, plus per party k the 2s vectors with party k unprimed at
/// m != s^k_i and everyone else primed at their s^k_j labels. Total 2ns+1.
ConstraintSet relaxed_constraints(const Scenario& sc);

/// The original cumulative conditions for n=2 with selectors fixed to
/// (+s,+s | -s,-s): the joint (+s,+s) vector plus one vector per pair
/// m+m' < 0 in settings (a,b') and (a',b). Total 1 + 2s(2s+1).
ConstraintSet legacy_constraints(const Scenario& sc);

struct CabelloParts {
  ConstraintSet zeros;  // the 4s side vectors
  CVec anchor_a;        // |s_a=s_i> x |s_b=s_j>, probability q
  CVec target_d;        // |s_a'=s_k> x |s_b'=s_l>, probability p
};

CabelloParts cabello_constraints(const Scenario& sc);

/// All-primed product vector at the s^k_j labels.
CVec target_vector(const Scenario& sc);

/// Constraint system of one argument mode: zero vectors, target vector,
/// and (cabello only) the anchor vector.
struct ModeSystem {
  ConstraintSet zeros;
  CVec target;
  CVec anchor;  // empty outside cabello mode
};

ModeSystem mode_system(const Scenario& sc, ArgumentMode mode);

enum class Requirement { Zero, TargetP, AnchorQ };

struct ScenarioEvent {
  Event event;
  Requirement requirement = Requirement::Zero;
  ConstraintTag tag;  // meaningful for zero events only
};

/// Event view of the same conditions, one event per constraint vector, plus
/// the target event (and the anchor event in cabello mode).
std::vector<ScenarioEvent> expand_events(const Scenario& sc,
                                         ArgumentMode mode);

}  // namespace hardy
