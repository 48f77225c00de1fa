#pragma once

#include <stdexcept>
#include <string>

namespace sandrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SANDRANK_DEFINE_ERROR(Name)                 \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

SANDRANK_DEFINE_ERROR(DimensionMismatch);
SANDRANK_DEFINE_ERROR(SingularBlock);
SANDRANK_DEFINE_ERROR(NotPrime);
SANDRANK_DEFINE_ERROR(InvalidParams);
SANDRANK_DEFINE_ERROR(IndexOutOfRange);
SANDRANK_DEFINE_ERROR(Disconnected);
SANDRANK_DEFINE_ERROR(OutOfSupport);
SANDRANK_DEFINE_ERROR(EmptyConditioningEvent);
SANDRANK_DEFINE_ERROR(OutOfRange);
SANDRANK_DEFINE_ERROR(InvalidShape);
SANDRANK_DEFINE_ERROR(TooSmall);
SANDRANK_DEFINE_ERROR(GuardExceeded);
SANDRANK_DEFINE_ERROR(EmptyInput);
SANDRANK_DEFINE_ERROR(InvalidConfig);

#undef SANDRANK_DEFINE_ERROR

} // namespace sandrank
