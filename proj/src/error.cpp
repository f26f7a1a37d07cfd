#include "hcat/error.hpp"

namespace hcat {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DegenerateVertex: return "DegenerateVertex";
        case ErrorCode::PerimeterTooLarge: return "PerimeterTooLarge";
        case ErrorCode::AntipodalPoints: return "AntipodalPoints";
        case ErrorCode::NotIntermediate: return "NotIntermediate";
        case ErrorCode::InconsistentLengths: return "InconsistentLengths";
        case ErrorCode::NonUniqueGeodesic: return "NonUniqueGeodesic";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::CrossSpace: return "CrossSpace";
        case ErrorCode::SamplingFailed: return "SamplingFailed";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotSemiconvex: return "NotSemiconvex";
        case ErrorCode::KnotPoint: return "KnotPoint";
        case ErrorCode::ConstantCurve: return "ConstantCurve";
        case ErrorCode::NotCat0: return "NotCat0";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::NodePoint: return "NodePoint";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::RigidityViolation: return "RigidityViolation";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hcat
