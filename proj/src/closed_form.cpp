#include "bci/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <quadmath.h>

#include "bci/errors.hpp"
#include "bci/quadrature.hpp"

namespace bci {

namespace {

const cplx kI(0.0, 1.0);

std::string beta_class(cplx beta) {
    if (const auto n = as_integer(beta)) return *n >= 0 ? "integer_nonneg" : "integer_neg";
    return "noninteger";
}

void require_off_circle(const ProblemInstance& inst) {
    if (on_unit_circle(inst)) throw Error(ErrorCode::AlphaOnCircle, "|alpha| inside the exclusion band");
}

MethodResult make_result(Method method, const ProblemInstance& inst) {
    MethodResult r;
    r.method = method;
    r.diagnostics["regime"] = std::abs(inst.alpha) < 1.0 ? "inner" : "outer";
    r.diagnostics["beta_class"] = beta_class(inst.beta);
    if (alpha_on_cut(inst)) r.diagnostics["alpha_on_cut"] = "true";
    return r;
}

// Residue-theorem value for integer β.
cplx integer_case(const ProblemInstance& inst, long n) {
    const bool inner = std::abs(inst.alpha) < 1.0;
    if (inner) return n >= 0 ? 2.0 * kPi * kI * integer_pow(inst.alpha, n) : cplx(0.0, 0.0);
    return n < 0 ? -2.0 * kPi * kI * integer_pow(inst.alpha, n) : cplx(0.0, 0.0);
}

// The log sums cancel down to O(1) from terms of size |z|^{−(m−1)/n} at small
// |z|, so they are carried in quad precision.
__extension__ typedef __float128 qreal;
__extension__ typedef __complex128 qcplx;

constexpr double kQuadEpsilon = 1.93e-34;

qcplx make_q(qreal re, qreal im) {
    qcplx z;
    __real__ z = re;
    __imag__ z = im;
    return z;
}

qcplx to_q(cplx z) { return make_q(z.real(), z.imag()); }
cplx to_d(qcplx z) { return {static_cast<double>(crealq(z)), static_cast<double>(cimagq(z))}; }

const qreal kTwoPiQ = 2 * acosq(-1);

qcplx unit_root(long j, long n) { return cexpiq(kTwoPiQ * static_cast<qreal>(j % n) / static_cast<qreal>(n)); }

qcplx qpow(qcplx z, long k) {
    if (k == 0) return make_q(1, 0);
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    qcplx acc = make_q(1, 0);
    qcplx base = z;
    while (e != 0) {
        if (e & 1UL) acc *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return k < 0 ? make_q(1, 0) / acc : acc;
}

struct QuadSum {
    qcplx value;
    double magnitude;  // Σ |term|, for error estimates
};

// Σ_j ζ^{jk} log(1 − ζ^j w), ζ = e^{2πi/n}.
QuadSum rotated_log_sum(qcplx w, long k, long n) {
    QuadSum s{make_q(0, 0), 0.0};
    for (long j = 0; j < n; ++j) {
        long e = (j * k) % n;
        if (e < 0) e += n;
        const qcplx term = unit_root(e, n) * clogq(make_q(1, 0) - unit_root(j, n) * w);
        s.value += term;
        s.magnitude += static_cast<double>(cabsq(term));
    }
    return s;
}

// Terms of m Σ_{k>=0} z^k/(m+nk) that the filter misses (m+nk < 0), minus
// the spurious ones it adds (k < 0 with m+nk >= 1).
QuadSum filter_correction(qcplx z, long m, long n) {
    QuadSum c{make_q(0, 0), 0.0};
    const qreal qm = static_cast<qreal>(m);
    auto add = [&](qcplx term) {
        c.value += term;
        c.magnitude += static_cast<double>(cabsq(term));
    };
    for (long k = 0; m + n * k < 0; ++k) add(qm * qpow(z, k) / static_cast<qreal>(m + n * k));
    for (long k = 1; m - n * k >= 1; ++k) add(-qm * qpow(z, -k) / static_cast<qreal>(m - n * k));
    return c;
}

qcplx principal_root(qcplx z, long n) {
    const qreal inv = 1 / static_cast<qreal>(n);
    return powq(cabsq(z), inv) * cexpiq(cargq(z) * inv);
}

// n-th root of α with arg_θ(α)/n as argument.  The argument is taken in quad
// precision (shifted by the 2π multiple branch_log picks) so the root stays
// consistent with α itself.
qcplx branch_root(cplx alpha, BranchAngle theta, long n) {
    const BranchValue lv = branch_log(alpha, theta);
    const qcplx a = to_q(alpha);
    qreal arg = cargq(a);
    arg += kTwoPiQ * static_cast<qreal>(std::round((lv.arg_value - static_cast<double>(arg)) / kTwoPi));
    const qreal inv = 1 / static_cast<qreal>(n);
    return powq(cabsq(a), inv) * cexpiq(arg * inv);
}

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::TheoremHypergeometric: return "theorem";
        case Method::RationalLogSum: return "rational";
        case Method::Quadrature: return "quadrature";
        case Method::SeriesDirect: return "series";
    }
    return "unknown";
}

RationalBeta::RationalBeta(long m, long n) {
    if (n == 0) throw Error(ErrorCode::InvalidRational, "denominator is zero");
    if (n < 0) {
        m = -m;
        n = -n;
    }
    const long g = std::gcd(m, n);
    if (g > 1) {
        m /= g;
        n /= g;
    }
    if (n == 1) throw Error(ErrorCode::IntegerBeta, "m/n is an integer");
    m_ = m;
    n_ = n;
}

MethodResult eval_theorem(const ProblemInstance& inst, double series_tol) {
    require_off_circle(inst);
    MethodResult r = make_result(Method::TheoremHypergeometric, inst);
    if (const auto n = as_integer(inst.beta)) {
        r.value = integer_case(inst, *n);
        r.diagnostics["terms"] = "0";
        return r;
    }
    const double theta = inst.theta.value();
    const cplx pref = cut_jump(inst.beta, inst.theta) / inst.beta;
    SeriesResult s;
    if (std::abs(inst.alpha) > 1.0) {
        s = hyp2f1_one_b(inst.beta, std::exp(kI * theta) / inst.alpha, series_tol);
        r.value = pref * (1.0 - s.value);
    } else {
        s = hyp2f1_one_b(-inst.beta, inst.alpha * std::exp(-kI * theta), series_tol);
        r.value = pref * s.value;
    }
    if (!s.converged) throw Error(ErrorCode::NoConvergence, "hypergeometric series hit max_terms");
    r.error_estimate = std::abs(pref) * s.tail_estimate;
    r.diagnostics["terms"] = std::to_string(s.terms_used);
    if (s.slow) r.diagnostics["slow_convergence"] = "true";
    return r;
}

MethodResult eval_mortini_rupp_series(const ProblemInstance& inst, long max_terms, double tol) {
    require_off_circle(inst);
    if (std::abs(inst.alpha) > 1.0) throw Error(ErrorCode::NotApplicable, "direct series needs |alpha| < 1");
    MethodResult r = make_result(Method::SeriesDirect, inst);
    if (const auto n = as_integer(inst.beta); n && *n >= 0) {
        r.value = 2.0 * kPi * kI * integer_pow(inst.alpha, *n);
        r.diagnostics["redirect"] = std::string(to_string(ErrorCode::BetaNonNegativeInteger));
        return r;
    }
    const cplx beta = inst.beta;
    const cplx z = inst.alpha * std::exp(-kI * inst.theta.value());
    const double az = std::abs(z);
    cplx sum(0.0, 0.0);
    cplx zk(1.0, 0.0);
    double tail = std::numeric_limits<double>::infinity();
    bool converged = false;
    long k = 0;
    for (; k < max_terms; ++k) {
        const double dk = static_cast<double>(k);
        sum += zk / (beta - dk);
        zk *= z;
        if (az == 0.0) {
            tail = 0.0;
            converged = true;
            break;
        }
        // |β − j| increases for j >= Re β.
        if (dk + 1.0 >= beta.real()) {
            tail = std::abs(zk) / ((1.0 - az) * std::abs(beta - (dk + 1.0)));
            if (tail <= tol * std::max(std::abs(sum), 1.0)) {
                converged = true;
                break;
            }
        }
    }
    if (!converged) throw Error(ErrorCode::NoConvergence, "direct series hit max_terms");
    const cplx jump = cut_jump(beta, inst.theta);
    r.value = jump * sum;
    r.error_estimate = std::abs(jump) * tail;
    r.diagnostics["terms"] = std::to_string(k + 1);
    return r;
}

double roots_of_unity_delta(long n, long d) {
    if (n < 1) throw Error(ErrorCode::DomainError, "n must be positive");
    return d % n == 0 ? 1.0 : 0.0;
}

cplx roots_of_unity_average(long n, long d) {
    if (n < 1) throw Error(ErrorCode::DomainError, "n must be positive");
    cplx sum(0.0, 0.0);
    for (long j = 0; j < n; ++j) {
        long e = (j * d) % n;
        if (e < 0) e += n;
        sum += std::polar(1.0, kTwoPi * static_cast<double>(e) / static_cast<double>(n));
    }
    return sum / static_cast<double>(n);
}

cplx eval_rational_G(cplx z, const RationalBeta& beta, long root_branch) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::DomainError, "G(z) requires |z| < 1");
    if (z == cplx(0.0, 0.0)) return {1.0, 0.0};
    const long m = beta.m();
    const long n = beta.n();
    const qcplx zq = to_q(z);
    long l = root_branch % n;
    if (l < 0) l += n;
    const qcplx w = principal_root(zq, n) * unit_root(l, n);
    // Σ_j (ζ^j w)^{−m} log(1 − ζ^j w)
    const QuadSum s = rotated_log_sum(w, -m, n);
    const qcplx g = -static_cast<qreal>(m) / static_cast<qreal>(n) * qpow(w, -m) * s.value +
                    filter_correction(zq, m, n).value;
    return to_d(g);
}

MethodResult eval_rational(const ProblemInstance& inst, const RationalBeta& beta) {
    require_off_circle(inst);
    if (std::abs(inst.beta - cplx(beta.value(), 0.0)) > kIntegerTol) {
        throw Error(ErrorCode::InvalidRational, "m/n does not match the instance's beta");
    }
    MethodResult r = make_result(Method::RationalLogSum, inst);
    r.diagnostics["beta_class"] = "rational";
    r.diagnostics["m"] = std::to_string(beta.m());
    r.diagnostics["n"] = std::to_string(beta.n());

    const long m = beta.m();
    const long n = beta.n();
    const double theta = inst.theta.value();
    const qreal b = static_cast<qreal>(m) / static_cast<qreal>(n);
    const qcplx spin = make_q(1, 0) - cexpiq(-kTwoPiQ * b);  // (e^{2πiβ} − 1)e^{−2πiβ}
    const qcplx jump_b = cexpiq(b * static_cast<qreal>(theta)) * spin / b;  // cut_jump/β
    if (inst.alpha == cplx(0.0, 0.0)) {  // ₂F₁(…; 0) = 1
        r.value = to_d(jump_b);
        return r;
    }

    qcplx root;
    try {
        root = branch_root(inst.alpha, inst.theta, n);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::OnBranchCut) throw Error(ErrorCode::AlphaOnCut, "Arg(alpha) equals theta");
        throw;
    }
    const qcplx alpha_mn = qpow(root, m);  // branch_pow(α, m/n, θ)
    const qcplx shift = cexpiq(static_cast<qreal>(theta) / static_cast<qreal>(n));

    // cut_jump·Σ_j (ζ^j w)^{±m} log(1 − ζ^j w) = spin·α^{m/n}·Σ_j ζ^{±jm} log(1 − ζ^j w)
    QuadSum s;
    QuadSum corr;
    qcplx v;
    if (std::abs(inst.alpha) < 1.0) {
        const qcplx w = root / shift;  // n-th root of αe^{−iθ}
        s = rotated_log_sum(w, m, n);
        corr = filter_correction(to_q(inst.alpha) * cexpiq(-static_cast<qreal>(theta)), -m, n);
        v = spin * alpha_mn * s.value + jump_b * corr.value;
    } else {
        const qcplx w = shift / root;  // n-th root of e^{iθ}/α
        s = rotated_log_sum(w, -m, n);
        corr = filter_correction(cexpiq(static_cast<qreal>(theta)) / to_q(inst.alpha), m, n);
        v = jump_b + spin * alpha_mn * s.value - jump_b * corr.value;
    }
    r.value = to_d(v);
    const double big = static_cast<double>(cabsq(spin * alpha_mn)) * s.magnitude +
                       static_cast<double>(cabsq(jump_b)) * corr.magnitude;
    r.error_estimate = 16.0 * static_cast<double>(n) * kQuadEpsilon * big +
                       2.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
    return r;
}

double check_reconciliation(const ProblemInstance& inst) {
    const double a = std::abs(inst.alpha);
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::NotApplicable, "reconciliation needs 0 < |alpha| < 1");
    if (inst.beta.real() <= 0.0) throw Error(ErrorCode::DivergentAtZero, "reconciliation needs Re(beta) > 0");
    if (const auto n = as_integer(inst.beta); n && *n >= 0) {
        throw Error(ErrorCode::BetaNonNegativeInteger, "reconciliation needs beta outside Z>=0");
    }
    if (alpha_on_cut(inst)) throw Error(ErrorCode::AlphaOnCut, "Arg(alpha) equals theta");

    const double theta = inst.theta.value();
    const cplx beta = inst.beta;
    const cplx lhs = core_integral(std::exp(kI * theta) / inst.alpha, beta).value;

    const cplx w = inst.alpha * std::exp(-kI * theta);
    const cplx w_pow = std::exp(beta * cplx(std::log(std::abs(w)), arg_0_2pi(w)));
    const SeriesResult f = hyp2f1_one_b(-beta, w);
    if (!f.converged) throw Error(ErrorCode::NoConvergence, "hypergeometric series hit max_terms");
    const cplx rhs = 2.0 * kPi * kI * w_pow / (std::exp(kI * kTwoPi * beta) - 1.0) +
                     (1.0 - f.value) / beta;
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0);
}

}  // namespace bci
