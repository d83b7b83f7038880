#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resolvent {

// Base for every failure raised by the library. The CLI maps subclasses to
// exit codes: infeasibility (guard) -> 2, bad input -> 3, everything else -> 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define RESOLVENT_ERROR(Name, Base)                                      \
    class Name : public Base {                                           \
    public:                                                              \
        explicit Name(const std::string& what) : Base(what) {}           \
        const char* kind() const noexcept override { return #Name; }     \
    };

// Caller handed in something malformed.
RESOLVENT_ERROR(InputError, Error)
RESOLVENT_ERROR(DimensionMismatch, InputError)
RESOLVENT_ERROR(ModulusMismatch, InputError)
RESOLVENT_ERROR(DegreeOutOfRange, InputError)
RESOLVENT_ERROR(WindowTooSmall, InputError)
RESOLVENT_ERROR(TruncationTooShallow, InputError)
RESOLVENT_ERROR(InvalidHorn, InputError)
RESOLVENT_ERROR(IncompatibleFamily, InputError)
RESOLVENT_ERROR(NotEpi, InputError)

// A mathematical check failed where the theory says it cannot.
RESOLVENT_ERROR(VerificationError, Error)
RESOLVENT_ERROR(ConstraintViolation, VerificationError)

#undef RESOLVENT_ERROR

// An element enumeration would exceed the configured guard.
class EnumerationTooLarge : public Error {
public:
    EnumerationTooLarge(const std::string& what, int level = -2)
        : Error(what), level_(level) {}
    const char* kind() const noexcept override { return "EnumerationTooLarge"; }
    // Resolution level that overflowed, or -2 when not level-specific.
    int level() const noexcept { return level_; }

private:
    int level_;
};

}  // namespace resolvent
