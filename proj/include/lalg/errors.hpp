#ifndef LALG_ERRORS_HPP
#define LALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lalg {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define LALG_DECLARE_ERROR(Name)            \
  class Name : public Error {               \
  public:                                   \
    using Error::Error;                     \
  }

LALG_DECLARE_ERROR(MalformedTable);
LALG_DECLARE_ERROR(NotAnLAlgebra);
LALG_DECLARE_ERROR(IndexOutOfRange);
LALG_DECLARE_ERROR(NotProper);
LALG_DECLARE_ERROR(NotAnIdeal);
LALG_DECLARE_ERROR(CongruenceUndefined);
LALG_DECLARE_ERROR(ActionInvalid);
LALG_DECLARE_ERROR(ActionClassTooWeak);
LALG_DECLARE_ERROR(NotRhoIdeal);
LALG_DECLARE_ERROR(BaseMismatch);
LALG_DECLARE_ERROR(ResourceBound);
LALG_DECLARE_ERROR(TooLarge);

// A computed statement that should hold by a theorem of the theory failed.
// Carries the witness in its message; the CLI maps it to exit status 1.
LALG_DECLARE_ERROR(Falsified);

#undef LALG_DECLARE_ERROR

}  // namespace lalg

#endif  // LALG_ERRORS_HPP
