#include "bci/ode_check.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bci/closed_form.hpp"
#include "bci/errors.hpp"

namespace bci {

namespace {

const cplx kI(0.0, 1.0);

// Roots closer than this (relative) are one multiple root; double roots
// come out of the eigensolver only to about sqrt(eps).
constexpr double kClusterTol = 1e-6;
constexpr double kRemainderTol = 1e-8;

void trim(Polynomial& p) {
    while (!p.empty() && p.back() == cplx(0.0, 0.0)) p.pop_back();
}

int degree(Polynomial p) {
    trim(p);
    return static_cast<int>(p.size()) - 1;  // −1 for the zero polynomial
}

// Divides by (x − r); returns the quotient and writes the remainder.
Polynomial deflate(const Polynomial& p, cplx r, cplx& remainder) {
    if (p.empty()) {
        remainder = 0.0;
        return {};
    }
    Polynomial q(p.size() - 1);
    cplx acc = p.back();
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        q[k] = acc;
        acc = p[k] + acc * r;
    }
    remainder = acc;
    return q;
}

// Order of vanishing of p at r, with a remainder test relative to the
// size of the polynomial there.  The zero polynomial vanishes to any order.
int order_at(Polynomial p, cplx r, int cap) {
    trim(p);
    if (p.empty()) return cap;
    int order = 0;
    while (order < cap && !p.empty()) {
        double scale = 0.0;
        double rk = 1.0;
        for (const cplx& c : p) {
            scale += std::abs(c) * rk;
            rk *= std::max(1.0, std::abs(r));
        }
        cplx rem;
        Polynomial q = deflate(p, r, rem);
        if (std::abs(rem) > kRemainderTol * scale) break;
        p = std::move(q);
        ++order;
    }
    return order;
}

// x^s · p(1/x) for s >= deg p: the coefficients reversed into place.
Polynomial reflect(const Polynomial& p, int s) {
    Polynomial q(static_cast<std::size_t>(s) + 1, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] != cplx(0.0, 0.0)) q[static_cast<std::size_t>(s) - k] = p[k];
    }
    return q;
}

Polynomial sub(Polynomial a, const Polynomial& b) {
    if (a.size() < b.size()) a.resize(b.size(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    return a;
}

Polynomial scale(Polynomial a, cplx s) {
    for (cplx& c : a) c *= s;
    return a;
}

struct Root {
    cplx value;
    int multiplicity;
};

std::vector<Root> polynomial_roots(Polynomial p) {
    trim(p);
    std::vector<Root> roots;
    int zeros = 0;
    while (zeros < static_cast<int>(p.size()) && p[static_cast<std::size_t>(zeros)] == cplx(0.0, 0.0)) ++zeros;
    if (zeros > 0) {
        roots.push_back({cplx(0.0, 0.0), zeros});
        p.erase(p.begin(), p.begin() + zeros);
    }
    const int d = static_cast<int>(p.size()) - 1;
    if (d < 1) return roots;

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);

    std::vector<cplx> found(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    std::vector<bool> used(found.size(), false);
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (used[i]) continue;
        cplx sum = found[i];
        int count = 1;
        for (std::size_t j = i + 1; j < found.size(); ++j) {
            if (!used[j] && std::abs(found[j] - found[i]) <= kClusterTol * std::max(1.0, std::abs(found[i]))) {
                used[j] = true;
                sum += found[j];
                ++count;
            }
        }
        roots.push_back({sum / static_cast<double>(count), count});
    }
    return roots;
}

// Regular when p1/p2 has at most a simple pole at r and p0/p2 at most a
// double one.
SingularKind classify(const Root& r, const Polynomial& p1, const Polynomial& p0) {
    const int o1 = order_at(p1, r.value, r.multiplicity);
    const int o0 = order_at(p0, r.value, r.multiplicity);
    return (o1 >= r.multiplicity - 1 && o0 >= r.multiplicity - 2) ? SingularKind::Regular
                                                                   : SingularKind::Irregular;
}

}  // namespace

OdeCoefficients outer_coefficients(cplx beta, BranchAngle theta) {
    const cplx e = std::exp(-kI * theta.value());
    return {{0.0, 0.0, 1.0, -e}, {0.0, -beta, -(1.0 - beta) * e}, beta, cut_jump(beta, theta)};
}

OdeCoefficients inner_coefficients(cplx beta, BranchAngle theta) {
    const cplx e = std::exp(kI * theta.value());
    return {{0.0, e, -1.0}, {(1.0 - beta) * e, -(2.0 - beta)}, beta, 0.0};
}

OdeCoefficients quoted_outer_coefficients(cplx beta, BranchAngle theta) {
    const double t = theta.value();
    const cplx e = std::exp(-kI * t);
    const cplx rhs = std::exp(kI * beta * t) * (1.0 - std::exp(kI * kTwoPi * beta));
    return {{0.0, 0.0, 1.0, -e}, {0.0, beta + 4.0, -(beta + 3.0) * e}, -beta, rhs};
}

OdeCoefficients quoted_inner_coefficients(cplx beta, BranchAngle theta) {
    const cplx e = std::exp(kI * theta.value());
    return {{0.0, -e, 1.0}, {(1.0 - beta) * e, -(2.0 - beta)}, beta, 0.0};
}

OdeCoefficients coefficients_for(const ProblemInstance& inst) {
    return std::abs(inst.alpha) > 1.0 ? outer_coefficients(inst.beta, inst.theta)
                                      : inner_coefficients(inst.beta, inst.theta);
}

cplx poly_eval(const Polynomial& p, cplx x) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

OdeResidual ode_residual(const ProblemInstance& inst, double h) {
    return ode_residual(inst, h, coefficients_for(inst));
}

OdeResidual ode_residual(const ProblemInstance& inst, double h, const OdeCoefficients& coeffs) {
    if (as_integer(inst.beta)) throw Error(ErrorCode::IntegerBeta, "the ODE check needs non-integer beta");
    if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "step must be positive");
    const bool outer = std::abs(inst.alpha) > 1.0;

    cplx f[5];
    for (int k = -2; k <= 2; ++k) {
        ProblemInstance p = inst;
        p.alpha = inst.alpha + static_cast<double>(k) * h;
        if ((std::abs(p.alpha) > 1.0) != outer || on_unit_circle(p)) {
            throw Error(ErrorCode::RegimeStraddle, "stencil crosses the unit circle");
        }
        f[k + 2] = eval_theorem(p).value;
    }
    const cplx d1 = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
    const cplx d2 = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);

    const cplx c2 = poly_eval(coeffs.p2, inst.alpha);
    const cplx c1 = poly_eval(coeffs.p1, inst.alpha);
    const cplx lhs = c2 * d2 + c1 * d1 + coeffs.zero_order * f[2];

    OdeResidual r;
    r.lhs_minus_rhs = lhs - coeffs.rhs;
    r.step = h;
    const double coef = std::max({std::abs(c2), std::abs(c1), std::abs(coeffs.zero_order)});
    const double deriv = std::max({std::abs(d2), std::abs(d1), std::abs(f[2])});
    r.relative_residual = std::abs(r.lhs_minus_rhs) / std::max({std::abs(coeffs.rhs), coef * deriv, 1.0});
    return r;
}

cplx scaling_constant_k(cplx beta, BranchAngle theta) {
    if (as_integer(beta)) throw Error(ErrorCode::IntegerBeta, "k is undefined for integer beta");
    return beta / cut_jump(beta, theta);
}

std::string_view to_string(SingularKind kind) {
    switch (kind) {
        case SingularKind::Ordinary: return "Ordinary";
        case SingularKind::Regular: return "Regular";
        case SingularKind::Irregular: return "Irregular";
    }
    return "unknown";
}

std::vector<SingularPoint> singular_points(const OdeCoefficients& coeffs) {
    const Polynomial p0{coeffs.zero_order};
    std::vector<SingularPoint> out;
    for (const Root& r : polynomial_roots(coeffs.p2)) {
        out.push_back({r.value, classify(r, coeffs.p1, p0), r.multiplicity});
    }

    // x = 1/α: x⁴p2(1/x) u'' + (2x³p2(1/x) − x²p1(1/x)) u' + p0 u = 0,
    // cleared of negative powers by x^N.
    const int d2 = degree(coeffs.p2);
    const int d1 = degree(coeffs.p1);
    const int d0 = degree(p0);
    const int n = std::max({0, d2 - 3, d1 - 2, d0});
    const Polynomial a2 = reflect(coeffs.p2, 4 + n);
    const Polynomial a1 = sub(scale(reflect(coeffs.p2, 3 + n), 2.0), reflect(coeffs.p1, 2 + n));
    const Polynomial a0 = reflect(p0, n);

    SingularPoint inf{std::nullopt, SingularKind::Ordinary, 0};
    Polynomial lead = a2;
    trim(lead);
    if (!lead.empty()) {
        int zeros = 0;
        while (lead[static_cast<std::size_t>(zeros)] == cplx(0.0, 0.0)) ++zeros;
        if (zeros > 0) {
            const Root r{cplx(0.0, 0.0), zeros};
            inf.kind = classify(r, a1, a0);
            inf.multiplicity = zeros;
        }
    }
    out.push_back(inf);
    return out;
}

}  // namespace bci
