#pragma once

#include <stdexcept>
#include <string>

namespace activesep {

/// A position in the (x, z) workspace, meters.
struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

/// A workspace position with a label in {-1, 0, +1}.
///
/// Label 0 is only ever produced by the label oracle for points lying on the
/// classifier; datasets fed to the version-space code carry +-1 labels only.
struct LabeledPoint {
  double x = 0.0;
  double z = 0.0;
  int label = 0;

  Point2 position() const { return {x, z}; }
};

/// A classifier candidate z = rho * x + c.
struct ParamPoint {
  double rho = 0.0;
  double c = 0.0;
};

// Error types. Each maps to a distinct CLI exit code.

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ControllerStuck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BeliefCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientSpread : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace activesep
