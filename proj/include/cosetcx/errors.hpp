#pragma once

#include <stdexcept>
#include <string>

namespace cosetcx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COSETCX_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

COSETCX_DEFINE_ERROR(CapExceeded);
COSETCX_DEFINE_ERROR(DegreeMismatch);
COSETCX_DEFINE_ERROR(NotASubgroup);
COSETCX_DEFINE_ERROR(ParentMismatch);
COSETCX_DEFINE_ERROR(ParseError);
COSETCX_DEFINE_ERROR(SimplexNotInComplex);
COSETCX_DEFINE_ERROR(UnknownVertex);
COSETCX_DEFINE_ERROR(NotPure);
COSETCX_DEFINE_ERROR(InvalidColoring);
COSETCX_DEFINE_ERROR(Disconnected);
COSETCX_DEFINE_ERROR(NotACover);
COSETCX_DEFINE_ERROR(NotSimplicialAction);
COSETCX_DEFINE_ERROR(PreconditionFailed);
COSETCX_DEFINE_ERROR(NotChamberComplex);
COSETCX_DEFINE_ERROR(UnreachableChamber);
COSETCX_DEFINE_ERROR(NotFullFlag);
COSETCX_DEFINE_ERROR(DimensionMismatch);
COSETCX_DEFINE_ERROR(UnknownExample);
COSETCX_DEFINE_ERROR(DuplicateSubgroup);

#undef COSETCX_DEFINE_ERROR

/// Raised when an internal cross-check between two independent routes fails.
/// Seeing one of these means a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::logic_error("InvariantViolation: " + what) {}
};

}  // namespace cosetcx
