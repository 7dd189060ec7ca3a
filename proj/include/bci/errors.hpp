#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bci {

enum class ErrorCode {
    ZeroInput,
    OnBranchCut,
    PoleHit,
    InvalidAngle,
    InvalidC,
    DomainError,
    NoConvergence,
    AlphaOnCircle,
    AlphaOnCut,
    IntegerBeta,
    BetaNonNegativeInteger,
    SingularPath,
    DivergentAtZero,
    RegimeStraddle,
    ZeroArgument,
    InvalidRational,
    NotApplicable,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type; `code()` is
/// what the CLI prints as a per-method or per-row status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bci
