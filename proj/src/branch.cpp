#include "bci/branch.hpp"

#include <cmath>
#include <limits>

#include "bci/errors.hpp"

namespace bci {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::OnBranchCut: return "OnBranchCut";
        case ErrorCode::PoleHit: return "PoleHit";
        case ErrorCode::InvalidAngle: return "InvalidAngle";
        case ErrorCode::InvalidC: return "InvalidC";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::AlphaOnCircle: return "AlphaOnCircle";
        case ErrorCode::AlphaOnCut: return "AlphaOnCut";
        case ErrorCode::IntegerBeta: return "IntegerBeta";
        case ErrorCode::BetaNonNegativeInteger: return "BetaNonNegativeInteger";
        case ErrorCode::SingularPath: return "SingularPath";
        case ErrorCode::DivergentAtZero: return "DivergentAtZero";
        case ErrorCode::RegimeStraddle: return "RegimeStraddle";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::InvalidRational: return "InvalidRational";
        case ErrorCode::NotApplicable: return "NotApplicable";
    }
    return "Unknown";
}

BranchAngle::BranchAngle(double theta) : theta_(theta) {
    if (!(theta > 0.0 && theta < kTwoPi)) {
        throw Error(ErrorCode::InvalidAngle, "branch angle must lie in (0, 2pi)");
    }
}

namespace {

// Offset of arg(z) below θ, in (−2π, 0), or nullopt when z sits on the cut.
std::optional<double> offset_below_cut(double principal_arg, double theta) {
    double r = principal_arg - theta;  // in (−3π, π]
    if (r >= 0.0) r -= kTwoPi;
    if (r <= -kTwoPi) r += kTwoPi;
    if (std::abs(r) < kCutGuard || std::abs(r + kTwoPi) < kCutGuard) return std::nullopt;
    return r;
}

}  // namespace

BranchValue branch_log(cplx z, BranchAngle theta) {
    if (z == cplx(0.0, 0.0)) throw Error(ErrorCode::ZeroInput, "log of zero");
    const auto offset = offset_below_cut(std::arg(z), theta.value());
    if (!offset) throw Error(ErrorCode::OnBranchCut, "argument lies on the branch cut");
    const double arg = theta.value() + *offset;
    return {cplx(std::log(std::abs(z)), arg), arg};
}

std::optional<long> as_integer(cplx beta) {
    const double r = std::round(beta.real());
    if (std::abs(beta.real() - r) < kIntegerTol && std::abs(beta.imag()) < kIntegerTol &&
        std::abs(r) < 1e15) {
        return static_cast<long>(r);
    }
    return std::nullopt;
}

cplx integer_pow(cplx z, long n) {
    if (n == 0) return {1.0, 0.0};
    if (z == cplx(0.0, 0.0)) {
        if (n < 0) throw Error(ErrorCode::ZeroInput, "negative power of zero");
        return {0.0, 0.0};
    }
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    cplx base = z;
    cplx acc(1.0, 0.0);
    while (e != 0) {
        if (e & 1UL) acc *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return n < 0 ? cplx(1.0, 0.0) / acc : acc;
}

cplx branch_pow(cplx z, cplx beta, BranchAngle theta) {
    if (const auto n = as_integer(beta)) return integer_pow(z, *n);
    return std::exp(beta * branch_log(z, theta).log_value);
}

cplx integrand_m(cplx z, const ProblemInstance& inst) {
    const cplx d = z - inst.alpha;
    const double guard = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(inst.alpha));
    if (std::abs(d) < guard) throw Error(ErrorCode::PoleHit, "evaluation point hits the pole alpha");
    return branch_pow(z, inst.beta, inst.theta) / d;
}

cplx cut_jump(cplx beta, BranchAngle theta) {
    const cplx i(0.0, 1.0);
    return std::exp(i * beta * theta.value()) * (1.0 - std::exp(-i * kTwoPi * beta));
}

double arg_0_2pi(cplx z) {
    double a = std::arg(z);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

bool on_unit_circle(const ProblemInstance& inst) {
    return std::abs(std::abs(inst.alpha) - 1.0) < inst.exclusion_band;
}

bool alpha_on_cut(const ProblemInstance& inst) {
    if (inst.alpha == cplx(0.0, 0.0)) return false;
    return !offset_below_cut(std::arg(inst.alpha), inst.theta.value());
}

}  // namespace bci
