#pragma once

#include <stdexcept>
#include <string>

namespace ruled4 {

enum class ErrorKind {
  // jetcalc
  OrderMismatch,
  NonzeroConstant,
  NonUnitLinear,
  // surface
  SingularRuling,
  DependentFrame,
  NotSmooth,
  // classify
  UnexpectedClass,
  DegenerateRuling,
  NotInflection,
  // projection
  InvalidPlane,
  CorankTwo,
  EllipticPoint,
  ParabolicTangency,
  DegenerateQuadratic,
  BothBranchesDegenerate,
  // normalform
  NotParabolic,
  GaugeFailure,
  ResidualNonzero,
  Gamma31Zero,
  NonConvergent,
  // bde
  NotOnDiscriminant,
  NonRegularDiscriminant,
  SideConditionViolated,
  // foliation
  SeedOnDiscriminant,
  EmptyCurve,
  // io
  Parse,
};

const char* error_kind_name(ErrorKind k);

// 1 = input problem, 2 = geometric precondition, 3 = internal consistency.
int exit_code_for(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ruled4
