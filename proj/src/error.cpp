#include "ruled4/error.hpp"

namespace ruled4 {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NonzeroConstant: return "NonzeroConstant";
    case ErrorKind::NonUnitLinear: return "NonUnitLinear";
    case ErrorKind::SingularRuling: return "SingularRuling";
    case ErrorKind::DependentFrame: return "DependentFrame";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::UnexpectedClass: return "UnexpectedClass";
    case ErrorKind::DegenerateRuling: return "DegenerateRuling";
    case ErrorKind::NotInflection: return "NotInflection";
    case ErrorKind::InvalidPlane: return "InvalidPlane";
    case ErrorKind::CorankTwo: return "CorankTwo";
    case ErrorKind::EllipticPoint: return "EllipticPoint";
    case ErrorKind::ParabolicTangency: return "ParabolicTangency";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::BothBranchesDegenerate: return "BothBranchesDegenerate";
    case ErrorKind::NotParabolic: return "NotParabolic";
    case ErrorKind::GaugeFailure: return "GaugeFailure";
    case ErrorKind::ResidualNonzero: return "ResidualNonzero";
    case ErrorKind::Gamma31Zero: return "Gamma31Zero";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NotOnDiscriminant: return "NotOnDiscriminant";
    case ErrorKind::NonRegularDiscriminant: return "NonRegularDiscriminant";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::SeedOnDiscriminant: return "SeedOnDiscriminant";
    case ErrorKind::EmptyCurve: return "EmptyCurve";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return 1;
    case ErrorKind::ResidualNonzero:
    case ErrorKind::NonConvergent:
    case ErrorKind::OrderMismatch:
    case ErrorKind::NonzeroConstant:
    case ErrorKind::NonUnitLinear:
      return 3;
    default:
      return 2;
  }
}

}  // namespace ruled4
