#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

// Violated documented precondition (bad caller input).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed quantity failed an internal consistency check (e.g. an
// eigenvalue of a spin component not matching any half-integer).
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The target vector lies inside the constraint span: no state with p > 0.
class NoHardyState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Cabello objective has no positive direction inside the solution space.
class NoCabelloGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Even the full zero-event set leaves a classical strategy hitting the target.
class NoContradiction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds the enumeration guard.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardy
