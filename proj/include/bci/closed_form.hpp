#pragma once

// Closed-form evaluations of ∫_{|z|=1} z^β/(z−α) dz for the branch log_θ with
// log_θ(1) = 0.  Non-integer β values carry the factor cut_jump(β, θ).

#include <map>
#include <string>
#include <string_view>

#include "bci/branch.hpp"
#include "bci/hyp2f1.hpp"

namespace bci {

enum class Method { TheoremHypergeometric, RationalLogSum, Quadrature, SeriesDirect };

std::string_view to_string(Method method);

struct MethodResult {
    cplx value;
    Method method = Method::TheoremHypergeometric;
    double error_estimate = 0.0;
    std::map<std::string, std::string> diagnostics;  // includes "regime" and "beta_class"
};

/// β = m/n in lowest terms with n >= 2.
class RationalBeta {
public:
    /// Normalises sign and gcd; throws InvalidRational for n = 0 and
    /// IntegerBeta when m/n is an integer.
    RationalBeta(long m, long n);

    long m() const noexcept { return m_; }
    long n() const noexcept { return n_; }
    double value() const noexcept { return static_cast<double>(m_) / static_cast<double>(n_); }

private:
    long m_;
    long n_;
};

/// Case-split closed form: residues for integer β, ₂F₁(1, β; 1+β; e^{iθ}/α)
/// for |α| > 1 and ₂F₁(1, −β; 1−β; αe^{−iθ}) for |α| < 1 otherwise.
MethodResult eval_theorem(const ProblemInstance& inst, double series_tol = kDefaultSeriesTol);

/// cut_jump(β, θ) · Σ_k (αe^{−iθ})^k/(β − k), summed directly (|α| < 1).
/// Non-negative integer β returns the residue 2πiα^β.
MethodResult eval_mortini_rupp_series(const ProblemInstance& inst, long max_terms = kDefaultMaxTerms,
                                      double tol = kDefaultSeriesTol);

/// (1/n) Σ_{j<n} e^{2πi j d/n}: exactly 1 when n | d, else 0.
double roots_of_unity_delta(long n, long d);

/// The same average summed in floating point (angles reduced mod n first).
cplx roots_of_unity_average(long n, long d);

/// ₂F₁(1, m/n; 1+m/n; z) as a finite sum of logarithms over the n-th roots
/// of z, plus the finitely many terms the root-of-unity filter misses when
/// m < 0 or m > n.  `root_branch` rotates the chosen root by e^{2πi·ℓ/n}.
/// z = 0 returns 1.  Throws DomainError for |z| >= 1.
cplx eval_rational_G(cplx z, const RationalBeta& beta, long root_branch = 0);

/// Rational-β closed form of the circle integral, with α^{m/n} taken as
/// branch_pow(α, m/n, θ) and the n-th roots inside the logarithms derived
/// from the same branch.
MethodResult eval_rational(const ProblemInstance& inst, const RationalBeta& beta);

/// Relative residual |LHS − RHS| / max(|RHS|, 1) of
///   ∫₀¹ t^{β−1}/(1 − (e^{iθ}/α)t) dt
///     = 2πi (αe^{−iθ})^β/(e^{2πiβ} − 1) + (1/β)[1 − ₂F₁(1, −β; 1−β; αe^{−iθ})],
/// LHS by quadrature.  (αe^{−iθ})^β uses Arg ∈ [0, 2π).
double check_reconciliation(const ProblemInstance& inst);

}  // namespace bci
