#pragma once

// Second-order ODEs satisfied by I(α) = ∫_{|z|=1} z^β/(z−α) dz in each regime,
// a finite-difference residual check, and singular-point classification.

#include <optional>
#include <string_view>
#include <vector>

#include "bci/branch.hpp"

namespace bci {

/// Coefficients are ascending: p[k] multiplies α^k.
using Polynomial = std::vector<cplx>;

/// p2(α) I'' + p1(α) I' + zero_order · I = rhs.
struct OdeCoefficients {
    Polynomial p2;
    Polynomial p1;
    cplx zero_order;
    cplx rhs;
};

/// |α| > 1: (α² − α³e^{−iθ}) I'' − (βα + (1−β)e^{−iθ}α²) I' + βI = cut_jump(β, θ).
OdeCoefficients outer_coefficients(cplx beta, BranchAngle theta);

/// |α| < 1: (αe^{iθ} − α²) I'' + ((1−β)e^{iθ} − (2−β)α) I' + βI = 0.
OdeCoefficients inner_coefficients(cplx beta, BranchAngle theta);

/// The coefficient sets as usually quoted for this integral:
///   outer  (α² − α³e^{−iθ}) I'' + (α(β+4) − α²(β+3)e^{−iθ}) I' − βI = e^{iβθ}(1 − e^{2πiβ}),
///   inner  (α² − αe^{iθ}) I'' + ((1−β)e^{iθ} − (2−β)α) I' + βI = 0.
/// I(α) does not satisfy these; they are kept for comparison.
OdeCoefficients quoted_outer_coefficients(cplx beta, BranchAngle theta);
OdeCoefficients quoted_inner_coefficients(cplx beta, BranchAngle theta);

/// The regime's coefficients for the instance (by |α| vs 1).
OdeCoefficients coefficients_for(const ProblemInstance& inst);

cplx poly_eval(const Polynomial& p, cplx x);

struct OdeResidual {
    cplx lhs_minus_rhs;
    double relative_residual = 0.0;
    double step = 0.0;
};

inline constexpr double kDefaultOdeStep = 1e-3;

/// Plugs eval_theorem values at α, α±h, α±2h (real direction) into the
/// equation using 4th-order central differences.  relative_residual is
/// |lhs − rhs| / max(|rhs|, max|coefficient| · max|derivative|, 1).
/// Throws IntegerBeta for integer β and RegimeStraddle when the stencil
/// leaves the instance's regime or enters the exclusion band.
OdeResidual ode_residual(const ProblemInstance& inst, double h = kDefaultOdeStep);
OdeResidual ode_residual(const ProblemInstance& inst, double h, const OdeCoefficients& coeffs);

/// k = β / cut_jump(β, θ), so that k·I(α) = ₂F₁(1, −β; 1−β; αe^{−iθ}) for
/// |α| < 1.  Throws IntegerBeta.
cplx scaling_constant_k(cplx beta, BranchAngle theta);

enum class SingularKind { Ordinary, Regular, Irregular };

std::string_view to_string(SingularKind kind);

struct SingularPoint {
    std::optional<cplx> location;  // nullopt is the point at infinity
    SingularKind kind = SingularKind::Ordinary;
    int multiplicity = 0;          // order of the zero of the leading coefficient
};

/// Roots of p2 (exact zeros stripped first, the rest from the companion
/// matrix), each classified by the order of vanishing of p1 and zero_order
/// there, followed by the point at infinity classified through x = 1/α.
std::vector<SingularPoint> singular_points(const OdeCoefficients& coeffs);

}  // namespace bci
