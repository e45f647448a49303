#pragma once

#include <stdexcept>
#include <string>

namespace nss {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input-contract violations (bad shapes, mismatched fields, bad parameters).
struct InputError : Error {
    using Error::Error;
};

struct NonSquareError : InputError {
    using InputError::InputError;
};
struct ShapeMismatchError : InputError {
    using InputError::InputError;
};
struct FieldMismatchError : InputError {
    using InputError::InputError;
};
struct IndexOutOfRangeError : InputError {
    using InputError::InputError;
};
struct SizeMismatchError : InputError {
    using InputError::InputError;
};
struct EmptyFamilyError : InputError {
    using InputError::InputError;
};
struct NonPrimeModulusError : InputError {
    using InputError::InputError;
};
struct CharacteristicTwoError : InputError {
    using InputError::InputError;
};
struct SingularMemberError : InputError {
    SingularMemberError(const std::string& msg, int idx) : InputError(msg), index(idx) {}
    int index;
};
struct InvalidParameterError : InputError {
    using InputError::InputError;
};
struct OddDimensionError : InputError {
    using InputError::InputError;
};
struct DimensionMismatchError : InputError {
    using InputError::InputError;
};
struct DivisionByZeroError : InputError {
    using InputError::InputError;
};
struct ParallelFlatsError : InputError {
    ParallelFlatsError(const std::string& msg, int a, int b) : InputError(msg), first(a), second(b) {}
    int first, second;
};
struct PreconditionViolatedError : InputError {
    using InputError::InputError;
};
struct TooFewSurvivorsError : InputError {
    using InputError::InputError;
};
struct InvariantViolationError : Error {
    InvariantViolationError(const std::string& msg, int idx = -1) : Error(msg), index(idx) {}
    int index;
};

// Search exceeded its configured node budget. Reported, never silent.
struct BudgetExceededError : Error {
    BudgetExceededError(const std::string& msg, unsigned long long used) : Error(msg), nodes_used(used) {}
    unsigned long long nodes_used;
};

}  // namespace nss
