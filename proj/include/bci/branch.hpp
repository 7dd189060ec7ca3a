#pragma once

// Branch-aware logarithm and power on the plane slit along the ray
// {r e^{iθ} : r >= 0}, normalised by log_θ(1) = 0.

#include <complex>
#include <numbers>
#include <optional>

namespace bci {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Inputs whose argument is within this many radians of the cut are rejected.
inline constexpr double kCutGuard = 1e-12;
/// A complex number is treated as an integer when both components are this
/// close to (round(re), 0).
inline constexpr double kIntegerTol = 1e-12;

/// Cut direction θ, restricted to the open interval (0, 2π).
class BranchAngle {
public:
    explicit BranchAngle(double theta);

    double value() const noexcept { return theta_; }

private:
    double theta_;
};

/// One evaluation of ∫_{|z|=1} z^β/(z−α) dz.  `tol` is the relative tolerance
/// used when comparing methods; `exclusion_band` is the minimum | |α| − 1 |.
struct ProblemInstance {
    cplx alpha;
    cplx beta;
    BranchAngle theta;
    double tol = 1e-8;
    double exclusion_band = 0.02;
};

struct BranchValue {
    cplx log_value;
    double arg_value;  // in (θ − 2π, θ)
};

/// log_θ(z) = ln|z| + i·arg_θ(z), arg_θ(z) ∈ (θ − 2π, θ).
/// Throws ZeroInput for z = 0 and OnBranchCut within kCutGuard of the cut.
BranchValue branch_log(cplx z, BranchAngle theta);

/// exp(β·log_θ(z)).  Integer β (per kIntegerTol) is computed by repeated
/// multiplication and does not depend on θ.
cplx branch_pow(cplx z, cplx beta, BranchAngle theta);

/// z^β/(z − α) with the instance's branch.
cplx integrand_m(cplx z, const ProblemInstance& inst);

/// Rounded integer value of β when β is an integer within kIntegerTol.
std::optional<long> as_integer(cplx beta);

/// z^n for integer n by binary powering; 0^0 = 1, 0^{n<0} throws ZeroInput.
cplx integer_pow(cplx z, long n);

/// (e^{iθ})^β taken from the θ side of the cut minus the same power taken
/// from the θ − 2π side: e^{iβθ}(1 − e^{−2πiβ}).  This is the factor every
/// closed form picks up from the jump of z^β across the cut.
cplx cut_jump(cplx beta, BranchAngle theta);

/// Arg(z) in [0, 2π).
double arg_0_2pi(cplx z);

/// The instance's α lies in the band | |α| − 1 | < exclusion_band.
bool on_unit_circle(const ProblemInstance& inst);

/// Arg(α) coincides with θ within kCutGuard (α on the cut ray).
bool alpha_on_cut(const ProblemInstance& inst);

}  // namespace bci
