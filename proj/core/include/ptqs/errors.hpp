// errors.hpp - error kinds raised by the ptqs library.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptqs {

enum class ErrorCode {
    InvalidMatrix,
    NotSu2Like,
    EigFailure,
    InvalidParams,
    InvalidStep,
    NormUnderflow,
    MetricSingular,
    EmptyBranch,
    EpLimitBranch,
    GainOverflow,
    InvalidScheme,
    StepCrossesEp,
    InvalidDerivative,
    UndefinedResourceMetrics,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ptqs
