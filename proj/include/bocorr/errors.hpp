#pragma once

#include <stdexcept>
#include <string>

namespace bocorr {

// Base for all library failures. kind() is the stable identifier used in reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define BOCORR_ERROR(Name)                                            \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

BOCORR_ERROR(NotInvertible)
BOCORR_ERROR(IllegalPower)
BOCORR_ERROR(DegenerateParameter)
BOCORR_ERROR(NonTruncatable)
BOCORR_ERROR(CapExceeded)
BOCORR_ERROR(ParseError)
BOCORR_ERROR(InvalidArgument)

#undef BOCORR_ERROR

}  // namespace bocorr
