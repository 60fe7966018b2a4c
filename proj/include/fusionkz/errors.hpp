#pragma once

#include <stdexcept>
#include <string>

namespace fusionkz {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define FUSIONKZ_ERROR(Name)                                                   \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what) : Error(#Name ": " + what) {}   \
    }

FUSIONKZ_ERROR(UnsupportedAlgebra);
FUSIONKZ_ERROR(DimensionError);
FUSIONKZ_ERROR(DomainError);
FUSIONKZ_ERROR(InvarianceError);
FUSIONKZ_ERROR(NotInCategory);
FUSIONKZ_ERROR(NotAMorphism);
FUSIONKZ_ERROR(InternalInvariantViolation);
FUSIONKZ_ERROR(PrecisionExhausted);
FUSIONKZ_ERROR(VerificationFailure);

#undef FUSIONKZ_ERROR

} // namespace fusionkz
