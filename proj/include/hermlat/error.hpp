#pragma once

#include <stdexcept>
#include <string>

namespace hermlat {

enum class ErrorCode {
    InvalidInput,
    InsufficientPrecision,
    NoRoot,
    SingularGram,
    NonHermitian,
    NotSelfDual,
    NotModular,
    Inconsistent,
    IntegralityViolation,
    NotPerfect,
    NotEvenDiagonal,
    ConstructionFailed,
    NoSuchGenus,
    FactorizationBound,
    UsageError,
    IOError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hermlat
