#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locint {

enum class ErrorCode {
  NotAPartialOrder,
  NotDirected,
  UnknownElement,
  DimensionMismatch,
  NonMonotoneDims,
  InclusionViolation,
  NotOrthonormal,
  FiberPosetMismatch,
  LevelIncomparable,
  NotAChain,
  NotLocallyBounded,
  BlockIncompatible,
  VectorOutsideDomain,
  DomainMismatch,
  DepthExceeded,
  FiberMismatch,
  MissingAtomValue,
  LevelMismatch,
  GeneratorOutsideAmbient,
  ParseError,
  UnresolvedReference,
  CapExceeded,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the scenario runner) can branch on the kind of violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace locint
