#include "ruij/errors.hpp"

namespace ruij {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::StripViolation: return "StripViolation";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::ConeProximity: return "ConeProximity";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::ContourViolation: return "ContourViolation";
    case ErrorKind::ConditionViolation: return "ConditionViolation";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NonPositiveDecay: return "NonPositiveDecay";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ScheduleTooShort: return "ScheduleTooShort";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace ruij
