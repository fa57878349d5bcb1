#pragma once

#include <stdexcept>
#include <string>

namespace ldlcpkc {

// All library errors derive from Error so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DimensionTooLarge : Error {
    using Error::Error;
};
struct ParameterViolation : Error {
    using Error::Error;
};
struct GenerationFailure : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};
struct ConfigViolation : Error {
    using Error::Error;
};
struct NonFinite : Error {
    using Error::Error;
};

}  // namespace ldlcpkc
