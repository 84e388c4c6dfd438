#pragma once

#include <stdexcept>
#include <string>

namespace bcinv {

enum class ErrorCode {
    InvalidInput,
    EigenFailure,
    NotNegativeDefinite,
    GridMismatch,
    WrongKind,
    InsufficientHorizon,
    ZeroOperator,
    NotInRange,
    IllConditionedGram,
    NonPositiveA,
    NoTermination,
    NonPositiveLength,
    NonPositiveMass,
    InconsistentB,
    IndefiniteHankel,
    SizeExhausted,
    DegenerateGram,
    ParseError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace bcinv
