// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace seriation {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SERIATION_DEFINE_ERROR(Name)            \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(std::string(#Name ": ") + what) {} \
  }

SERIATION_DEFINE_ERROR(DimensionMismatch);
SERIATION_DEFINE_ERROR(LengthMismatch);
SERIATION_DEFINE_ERROR(InvalidInput);
SERIATION_DEFINE_ERROR(InvalidDimension);
SERIATION_DEFINE_ERROR(ConvergenceFailure);
SERIATION_DEFINE_ERROR(InfeasibleParameters);
SERIATION_DEFINE_ERROR(UnknownSetting);
SERIATION_DEFINE_ERROR(TooManyPairs);
SERIATION_DEFINE_ERROR(BudgetExceeded);
SERIATION_DEFINE_ERROR(DegenerateDegree);
SERIATION_DEFINE_ERROR(IoError);

#undef SERIATION_DEFINE_ERROR

}  // namespace seriation
