#pragma once

// Independent numerical oracle: adaptive Gauss–Kronrod quadrature of the
// circle integral and of the [0,1] integrals the closed forms reduce to.

#include <functional>

#include "bci/branch.hpp"

namespace bci {

struct QuadratureOptions {
    double tol = 1e-10;     // absolute-or-relative: err <= tol·max(|I|, 1)
    int max_panels = 20000;
    int initial_panels = 8;
};

struct QuadratureResult {
    cplx value;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

/// Offset from each end of the circle parameter interval (θ, θ + 2π).
inline constexpr double kCircleEndpointOffset = 1e-9;

/// Global adaptive G7/K15 on [a, b].  Panels are summed left to right by
/// pairwise reduction, so results do not depend on refinement order.
QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// ∫_{|z|=1} z^β/(z−α) dz as ∫ m(e^{it}) i e^{it} dt over (θ, θ + 2π).
/// Throws AlphaOnCircle inside the exclusion band.
QuadratureResult circle_integral(const ProblemInstance& inst, const QuadratureOptions& opts = {});

/// ∫₀¹ t^{β−1} (1 − w t)^{−1} dt.  For Re β < 1 the endpoint singularity is
/// removed with t = u^{1/Re β}.  Throws DivergentAtZero for Re β <= 0 and
/// SingularPath for w ∈ [1, ∞).
QuadratureResult core_integral(cplx w, cplx beta, const QuadratureOptions& opts = {});

/// ∫₀¹ t^β / (t − p) dt for Re β > 0.  Throws SingularPath for p ∈ [0, 1].
QuadratureResult pole_integral(cplx p, cplx beta, const QuadratureOptions& opts = {});

/// Relative discrepancy between the two sides of
///   ∫₀¹ t^β/(t − αe^{−iθ}) dt = 1/β − ∫₀¹ t^{β−1}/(1 − (e^{iθ}/α) t) dt,
/// both by quadrature.
double lemma_core_relation(const ProblemInstance& inst, const QuadratureOptions& opts = {});

/// Relative discrepancy between the circle integral and
///   [2πi α^β if |α| < 1] + cut_jump(β, θ) · ∫₀¹ t^β/(t − αe^{−iθ}) dt,
/// all integrals by quadrature.  Requires Re β > 0 and Arg α ≠ θ.
double lemma_circle_relation(const ProblemInstance& inst, const QuadratureOptions& opts = {});

}  // namespace bci
