#pragma once

#include <stdexcept>
#include <string>

namespace djcg {

enum class Code {
  PoleAtSpinLevel,
  DegenerateBethe,
  OscillatorZero,
  NearDegenerateDivisor,
  NegativeBB,
  DivisionRemainder,
  InvalidM,
  Inconsistent,
  NoSolution,
  SingularSystem,
  RealityViolation,
  StepFailure,
  PoleAtHalfLine,
  DegenerateAlpha,
  BadColumns,
  InvalidInput,
};

const char* code_name(Code c);

// Input errors map to CLI exit code 2, numerical failures to 3.
bool is_input_error(Code c);

class Error : public std::runtime_error {
 public:
  Error(Code c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace djcg
