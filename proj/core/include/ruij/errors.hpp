#pragma once

#include <stdexcept>
#include <string>

namespace ruij {

enum class ErrorKind {
    InvalidParams,
    StripViolation,
    QuadratureFailure,
    PoleProximity,
    PrecisionLoss,
    ConeProximity,
    CoincidentPoints,
    ContourViolation,
    ConditionViolation,
    DimensionTooLarge,
    NonPositiveDecay,
    ShapeMismatch,
    ScheduleTooShort,
    UnknownSuite,
    ConfigError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ruij
