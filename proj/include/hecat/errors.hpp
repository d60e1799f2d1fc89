#pragma once

#include <stdexcept>
#include <string>

namespace hecat {

/// Base class of every error raised by the library. `kind()` is the stable
/// error name used by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define HECAT_DEFINE_ERROR(Name)                                                 \
  class Name : public Error {                                                    \
   public:                                                                       \
    explicit Name(const std::string& what = #Name) : Error(#Name, what) {}       \
  };

HECAT_DEFINE_ERROR(NotPure)
HECAT_DEFINE_ERROR(InvalidObject)
HECAT_DEFINE_ERROR(NonHalfIntegerTwist)
HECAT_DEFINE_ERROR(LevelMismatch)
HECAT_DEFINE_ERROR(BadLevels)
HECAT_DEFINE_ERROR(SystemMismatch)
HECAT_DEFINE_ERROR(BoundExceeded)
HECAT_DEFINE_ERROR(UnknownGenerator)
HECAT_DEFINE_ERROR(BasisMismatch)
HECAT_DEFINE_ERROR(NotTypeA)
HECAT_DEFINE_ERROR(RingMismatch)
HECAT_DEFINE_ERROR(WindowTooSmall)
HECAT_DEFINE_ERROR(NonSemiperfect)
HECAT_DEFINE_ERROR(ImpureQuotient)
HECAT_DEFINE_ERROR(SearchExhausted)

#undef HECAT_DEFINE_ERROR

}  // namespace hecat
