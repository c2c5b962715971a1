#pragma once

#include <stdexcept>
#include <string>

namespace compop {

enum class ErrorCode {
  DegenerateMap,
  IdentityMap,
  NotSelfMap,
  ParamOutOfRange,
  OrderMismatch,
  ZeroConstantTerm,
  PoleInsideDisk,
  NegativeParameter,
  PointOutsideDomain,
  SymbolNotAdmissible,
  BadShift,
  CenterOutsideDisk,
  WrongSpace,
  DimensionMismatch,
  SingularTruncation,
  TooLarge,
  EmptyGrid,
  BadAnnulus,
  Unresolved,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the C
// layer can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace compop
