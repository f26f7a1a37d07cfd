#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcat {

enum class ErrorCode {
    InvalidArgument,
    DegenerateVertex,
    PerimeterTooLarge,
    AntipodalPoints,
    NotIntermediate,
    InconsistentLengths,
    NonUniqueGeodesic,
    PreconditionFailed,
    CrossSpace,
    SamplingFailed,
    NoConvergence,
    NotSemiconvex,
    KnotPoint,
    ConstantCurve,
    NotCat0,
    NonConvergence,
    NotConvex,
    NodePoint,
    QuadratureFailure,
    RigidityViolation,
    ConfigError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace hcat
