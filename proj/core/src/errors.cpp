#include "ptqs/errors.hpp"

namespace ptqs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidMatrix: return "InvalidMatrix";
        case ErrorCode::NotSu2Like: return "NotSu2Like";
        case ErrorCode::EigFailure: return "EigFailure";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::InvalidStep: return "InvalidStep";
        case ErrorCode::NormUnderflow: return "NormUnderflow";
        case ErrorCode::MetricSingular: return "MetricSingular";
        case ErrorCode::EmptyBranch: return "EmptyBranch";
        case ErrorCode::EpLimitBranch: return "EpLimitBranch";
        case ErrorCode::GainOverflow: return "GainOverflow";
        case ErrorCode::InvalidScheme: return "InvalidScheme";
        case ErrorCode::StepCrossesEp: return "StepCrossesEp";
        case ErrorCode::InvalidDerivative: return "InvalidDerivative";
        case ErrorCode::UndefinedResourceMetrics: return "UndefinedResourceMetrics";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace ptqs
