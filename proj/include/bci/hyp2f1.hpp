#pragma once

#include <vector>

#include "bci/branch.hpp"

namespace bci {

/// Above this |z| the series still runs but is flagged as slowly convergent.
inline constexpr double kSeriesComfortModulus = 0.95;
inline constexpr long kDefaultMaxTerms = 100000;
inline constexpr double kDefaultSeriesTol = 1e-15;

struct SeriesResult {
    cplx value;
    long terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
    bool slow = false;  // |z| > kSeriesComfortModulus
};

/// Rising factorial x(x+1)···(x+n−1), by iterated multiplication.
cplx pochhammer(cplx x, long n);

/// The first `count` terms (a)_n (b)_n / ((c)_n n!) z^n, by the term-ratio
/// recurrence used in hyp2f1_series.
std::vector<cplx> hyp2f1_terms(cplx a, cplx b, cplx c, cplx z, long count);

/// Gauss series ₂F₁(a, b; c; z) for |z| < 1.  Stops once the geometric tail
/// bound |t_n|·q/(1−q), q = max(|z|, |t_{n+1}/t_n|), drops below
/// tol·max(|value|, 1).  Throws InvalidC for c ∈ {0, −1, −2, …} and
/// DomainError for |z| >= 1; non-convergence is reported via `converged`.
SeriesResult hyp2f1_series(cplx a, cplx b, cplx c, cplx z, double tol = kDefaultSeriesTol,
                           long max_terms = kDefaultMaxTerms);

/// ₂F₁(1, b; 1+b; z) = Σ_k b/(b+k) z^k.  The tail bound is rigorous once
/// Re(b) + k + 1 >= 0.
SeriesResult hyp2f1_one_b(cplx b, cplx z, double tol = kDefaultSeriesTol,
                          long max_terms = kDefaultMaxTerms);

}  // namespace bci
