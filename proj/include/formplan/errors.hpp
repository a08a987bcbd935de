#pragma once

#include <stdexcept>
#include <string>

namespace formplan {

/// Malformed or invalid scenario file.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The planning problem cannot be set up (e.g. start inside an obstacle).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reconfiguration windows that cannot be placed on the planned path.
class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace formplan
