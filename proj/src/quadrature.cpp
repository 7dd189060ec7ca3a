#include "bci/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

#include "bci/errors.hpp"

namespace bci {

namespace {

// 15-point Kronrod abscissae (non-negative half) and weights; the 7-point
// Gauss rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double error;
};

Panel gauss_kronrod(const std::function<cplx(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(center);
    cplx kronrod = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const cplx sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

cplx pairwise_sum(std::span<const cplx> v) {
    if (v.empty()) return {0.0, 0.0};
    if (v.size() == 1) return v[0];
    const auto mid = v.size() / 2;
    return pairwise_sum(v.subspan(0, mid)) + pairwise_sum(v.subspan(mid));
}

bool on_unit_interval(cplx p) {
    return std::abs(p.imag()) <= 1e-12 * std::max(1.0, std::abs(p)) && p.real() >= -1e-12 &&
           p.real() <= 1.0 + 1e-12;
}

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

}  // namespace

QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);

    const int initial = std::max(1, std::min(opts.initial_panels, opts.max_panels));
    const double width = (b - a) / initial;
    cplx total(0.0, 0.0);
    double error = 0.0;
    for (int k = 0; k < initial; ++k) {
        const double lo = a + k * width;
        const double hi = k + 1 == initial ? b : a + (k + 1) * width;
        Panel p = gauss_kronrod(f, lo, hi);
        total += p.value;
        error += p.error;
        queue.push(p);
    }

    int panels = initial;
    while (error > opts.tol * std::max(std::abs(total), 1.0) && panels < opts.max_panels) {
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted
            queue.push(worst);
            break;
        }
        Panel left = gauss_kronrod(f, worst.a, mid);
        Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    std::vector<Panel> all;
    all.reserve(queue.size());
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<cplx> values;
    values.reserve(all.size());
    double err_sum = 0.0;
    for (const auto& p : all) {
        values.push_back(p.value);
        err_sum += p.error;
    }

    QuadratureResult res;
    res.value = pairwise_sum(values);
    res.abs_error_estimate = err_sum;
    res.subdivisions = panels;
    res.converged = err_sum <= opts.tol * std::max(std::abs(res.value), 1.0);
    return res;
}

QuadratureResult circle_integral(const ProblemInstance& inst, const QuadratureOptions& opts) {
    if (on_unit_circle(inst)) throw Error(ErrorCode::AlphaOnCircle, "|alpha| inside the exclusion band");
    const cplx i(0.0, 1.0);
    auto g = [&inst, i](double t) {
        const cplx z = std::polar(1.0, t);
        return integrand_m(z, inst) * i * z;
    };
    const double theta = inst.theta.value();
    const double delta = kCircleEndpointOffset;
    const double lo = theta + delta;
    const double hi = theta + kTwoPi - delta;
    QuadratureResult res = integrate(g, lo, hi, opts);

    // The omitted slivers [θ, θ+δ] and [θ+2π−δ, θ+2π] are filled with their
    // nearest samples; the error of that fill is estimated from the change of
    // the integrand over one more δ.
    const cplx g_lo = g(lo);
    const cplx g_hi = g(hi);
    res.value += delta * (g_lo + g_hi);
    res.abs_error_estimate += delta * (std::abs(g(lo + delta) - g_lo) + std::abs(g(hi - delta) - g_hi));
    res.converged = res.converged && res.abs_error_estimate <= opts.tol * std::max(std::abs(res.value), 1.0);
    return res;
}

QuadratureResult core_integral(cplx w, cplx beta, const QuadratureOptions& opts) {
    if (beta.real() <= 0.0) throw Error(ErrorCode::DivergentAtZero, "core integral needs Re(beta) > 0");
    if (std::abs(w.imag()) <= 1e-12 * std::max(1.0, std::abs(w)) && w.real() >= 1.0 - 1e-12) {
        throw Error(ErrorCode::SingularPath, "1 - w t vanishes on [0, 1]");
    }
    const double r = beta.real();
    if (r < 1.0) {
        // t = u^{1/r}: t^{β−1} dt = (1/r) u^{i Im(β)/r} du.
        const double freq = beta.imag() / r;
        auto g = [w, r, freq](double u) {
            const double lu = std::log(u);
            const cplx osc = std::polar(1.0, freq * lu);
            return osc / (r * (1.0 - w * std::exp(lu / r)));
        };
        return integrate(g, 0.0, 1.0, opts);
    }
    const cplx bm1 = beta - 1.0;
    auto g = [w, bm1](double t) { return std::exp(bm1 * std::log(t)) / (1.0 - w * t); };
    return integrate(g, 0.0, 1.0, opts);
}

QuadratureResult pole_integral(cplx p, cplx beta, const QuadratureOptions& opts) {
    if (beta.real() <= 0.0) throw Error(ErrorCode::DivergentAtZero, "pole integral needs Re(beta) > 0");
    if (on_unit_interval(p)) throw Error(ErrorCode::SingularPath, "pole lies on [0, 1]");
    auto g = [p, beta](double t) { return std::exp(beta * std::log(t)) / (t - p); };
    return integrate(g, 0.0, 1.0, opts);
}

double lemma_core_relation(const ProblemInstance& inst, const QuadratureOptions& opts) {
    if (inst.alpha == cplx(0.0, 0.0)) throw Error(ErrorCode::SingularPath, "alpha = 0 puts the pole at t = 0");
    const cplx i(0.0, 1.0);
    const double theta = inst.theta.value();
    const cplx pole = inst.alpha * std::exp(-i * theta);
    const cplx lhs = pole_integral(pole, inst.beta, opts).value;
    const cplx w = std::exp(i * theta) / inst.alpha;
    const cplx rhs = 1.0 / inst.beta - core_integral(w, inst.beta, opts).value;
    return rel_diff(lhs, rhs);
}

double lemma_circle_relation(const ProblemInstance& inst, const QuadratureOptions& opts) {
    if (alpha_on_cut(inst)) throw Error(ErrorCode::AlphaOnCut, "Arg(alpha) equals theta");
    const cplx i(0.0, 1.0);
    const double theta = inst.theta.value();
    const cplx circle = circle_integral(inst, opts).value;
    cplx rhs = cut_jump(inst.beta, inst.theta) *
               pole_integral(inst.alpha * std::exp(-i * theta), inst.beta, opts).value;
    if (std::abs(inst.alpha) < 1.0) rhs += 2.0 * kPi * i * branch_pow(inst.alpha, inst.beta, inst.theta);
    return rel_diff(circle, rhs);
}

}  // namespace bci
