#include "djcg/errors.hpp"

namespace djcg {

const char* code_name(Code c) {
  switch (c) {
    case Code::PoleAtSpinLevel: return "PoleAtSpinLevel";
    case Code::DegenerateBethe: return "DegenerateBethe";
    case Code::OscillatorZero: return "OscillatorZero";
    case Code::NearDegenerateDivisor: return "NearDegenerateDivisor";
    case Code::NegativeBB: return "NegativeBB";
    case Code::DivisionRemainder: return "DivisionRemainder";
    case Code::InvalidM: return "InvalidM";
    case Code::Inconsistent: return "Inconsistent";
    case Code::NoSolution: return "NoSolution";
    case Code::SingularSystem: return "SingularSystem";
    case Code::RealityViolation: return "RealityViolation";
    case Code::StepFailure: return "StepFailure";
    case Code::PoleAtHalfLine: return "PoleAtHalfLine";
    case Code::DegenerateAlpha: return "DegenerateAlpha";
    case Code::BadColumns: return "BadColumns";
    case Code::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_input_error(Code c) {
  switch (c) {
    case Code::InvalidM:
    case Code::RealityViolation:
    case Code::BadColumns:
    case Code::InvalidInput:
    case Code::PoleAtSpinLevel:
    case Code::PoleAtHalfLine:
    case Code::DegenerateAlpha:
      return true;
    default:
      return false;
  }
}

}  // namespace djcg
