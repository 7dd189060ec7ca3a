#include "bci/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bci/errors.hpp"
#include "bci/json_writer.hpp"
#include "bci/ode_check.hpp"
#include "bci/parallel.hpp"
#include "bci/quadrature.hpp"

namespace bci {

double SeededRng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double SeededRng::uniform(double a, double b) { return a + (b - a) * uniform(); }

long SeededRng::pick(long count) {
    return std::min(count - 1, static_cast<long>(uniform() * static_cast<double>(count)));
}

cplx SeededRng::in_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, uniform(0.0, kTwoPi));
}

namespace {

cplx sample_alpha(SeededRng& rng, bool inner, double lo_in, double hi_in, double lo_out, double hi_out) {
    const double mod = inner ? rng.uniform(lo_in, hi_in) : rng.uniform(lo_out, hi_out);
    return std::polar(mod, rng.uniform(0.0, kTwoPi));
}

bool near_integer(cplx b, double gap) {
    return std::abs(b.imag()) < gap && std::abs(b.real() - std::round(b.real())) < gap;
}

}  // namespace

std::vector<AgreementCase> agreement_cases(std::uint64_t seed, int count, double tol) {
    static const std::pair<long, long> kRationals[] = {{1, 2}, {-1, 2}, {1, 3}, {-1, 3}, {2, 3},
                                                       {3, 4}, {-3, 4}, {5, 2}};
    SeededRng rng(seed);
    std::vector<AgreementCase> out;
    for (int i = 0; i < count; ++i) {
        const bool inner = rng.uniform() < 0.5;
        const cplx alpha = sample_alpha(rng, inner, 0.1, 0.9, 1.1, 5.0);
        const double theta = rng.uniform(0.1, kTwoPi - 0.1);
        AgreementCase c{{alpha, 0.0, BranchAngle(theta), tol}, std::nullopt};
        if (i % 4 == 3) {
            const auto [m, n] = kRationals[rng.pick(std::size(kRationals))];
            c.rational = RationalBeta(m, n);
            c.instance.beta = c.rational->value();
        } else {
            cplx b;
            do {
                b = rng.in_disk(3.0);
            } while (near_integer(b, 1e-3));
            c.instance.beta = b;
        }
        out.push_back(c);
    }
    return out;
}

std::vector<ProblemInstance> lemma_cases(std::uint64_t seed, int count) {
    SeededRng rng(seed);
    std::vector<ProblemInstance> out;
    for (int i = 0; i < count; ++i) {
        const cplx alpha = sample_alpha(rng, i % 2 == 0, 0.1, 0.9, 1.1, 5.0);
        const cplx beta(rng.uniform(0.2, 3.0), rng.uniform(-1.0, 1.0));
        const double theta = rng.uniform(0.1, kTwoPi - 0.1);
        out.push_back({alpha, beta, BranchAngle(theta)});
    }
    return out;
}

std::vector<EulerCase> euler_cases(std::uint64_t seed, int count) {
    SeededRng rng(seed);
    std::vector<EulerCase> out;
    for (int i = 0; i < count; ++i) {
        const cplx b(rng.uniform(0.2, 3.0), rng.uniform(-1.0, 1.0));
        out.push_back({b, rng.in_disk(0.9)});
    }
    return out;
}

std::vector<cplx> disk_points(std::uint64_t seed, int count, double radius) {
    SeededRng rng(seed);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.push_back(rng.in_disk(radius));
    return out;
}

namespace {

struct Sample {
    double residual = 0.0;
    bool ok = true;
    std::string label;
};

std::string describe(cplx alpha, cplx beta, double theta) {
    std::ostringstream s;
    s.precision(6);
    s << "alpha=" << alpha.real() << "," << alpha.imag() << " beta=" << beta.real() << "," << beta.imag()
      << " theta=" << theta;
    return s.str();
}

std::string describe(const ProblemInstance& inst) { return describe(inst.alpha, inst.beta, inst.theta.value()); }

CheckResult collect(std::string name, double threshold, const std::vector<Sample>& samples) {
    CheckResult r;
    r.name = std::move(name);
    r.threshold = threshold;
    r.cases = static_cast<long>(samples.size());
    double worst = -1.0;
    for (const Sample& s : samples) {
        if (!s.ok) ++r.failures;
        // failures rank above any residual
        const double key = s.ok ? s.residual : std::numeric_limits<double>::infinity();
        if (key > worst) {
            worst = key;
            r.worst = s.label;
        }
        r.max_residual = std::max(r.max_residual, s.residual);
    }
    r.passed = r.failures == 0;
    return r;
}

// Runs fn on each index; an Error becomes a failed sample.
template <class Fn>
std::vector<Sample> sample_all(std::size_t count, unsigned jobs, Fn fn) {
    return parallel_map(count, jobs, [&](std::size_t i) {
        try {
            return fn(i);
        } catch (const Error& e) {
            return Sample{std::numeric_limits<double>::infinity(), false, e.what()};
        }
    });
}

int count_or(const VerifyOptions& o, int fallback) { return o.count > 0 ? o.count : fallback; }

CheckResult check_reconciliation_grid(const VerifyOptions& o) {
    const double mods[] = {0.2, 0.4, 0.6, 0.8};
    std::vector<cplx> betas = {0.5, 1.5, {0.5, 0.3}, 2.2};
    if (!o.betas.empty()) betas = o.betas;
    const double thetas[] = {kPi / 2, kPi, 5.0};
    std::vector<ProblemInstance> grid;
    for (double m : mods)
        for (cplx b : betas)
            for (double t : thetas) grid.push_back({std::polar(m, 0.3), b, BranchAngle(t)});
    const double threshold = 1e-6;
    return collect("reconciliation", threshold, sample_all(grid.size(), o.jobs, [&](std::size_t i) {
                       const double r = check_reconciliation(grid[i]);
                       return Sample{r, r < threshold, describe(grid[i])};
                   }));
}

CheckResult check_lemma(const VerifyOptions& o) {
    const auto cases = lemma_cases(o.seed, count_or(o, 50));
    const double threshold = 1e-6;
    return collect("lemma", threshold, sample_all(cases.size(), o.jobs, [&](std::size_t i) {
                       const double r = std::max(lemma_circle_relation(cases[i]), lemma_core_relation(cases[i]));
                       return Sample{r, r < threshold, describe(cases[i])};
                   }));
}

CheckResult check_ode(const VerifyOptions& o) {
    std::vector<cplx> betas = {0.5, 1.3, {0.5, 0.2}};
    if (!o.betas.empty()) betas = o.betas;
    const double inner[] = {0.3, 0.5, 0.7};
    const double outer[] = {1.5, 2.5, 4.0};
    const double args[] = {0.5, 2.0, 4.0};
    std::vector<ProblemInstance> grid;
    for (cplx b : betas)
        for (double a : args) {
            for (double m : inner) grid.push_back({std::polar(m, a), b, BranchAngle(1.0)});
            for (double m : outer) grid.push_back({std::polar(m, a), b, BranchAngle(1.0)});
        }
    const double threshold = 1e-4;
    const double floor = 1e-6;
    return collect("ode", threshold, sample_all(grid.size(), o.jobs, [&](std::size_t i) {
                       const double r1 = ode_residual(grid[i], kDefaultOdeStep).relative_residual;
                       const double r2 = ode_residual(grid[i], kDefaultOdeStep / 2).relative_residual;
                       const bool converging = r2 <= floor || r1 >= 8.0 * r2;
                       return Sample{r1, r1 < threshold && converging, describe(grid[i])};
                   }));
}

CheckResult check_delta(const VerifyOptions& o) {
    std::vector<Sample> samples;
    for (long n = 1; n <= o.nmax; ++n) {
        double worst = 0.0;
        bool ok = true;
        for (long d = -512; d <= 512; ++d) {
            const double exact = roots_of_unity_delta(n, d);
            ok = ok && (exact == (d % n == 0 ? 1.0 : 0.0));
            worst = std::max(worst, std::abs(roots_of_unity_average(n, d) - exact));
        }
        samples.push_back({worst, ok && worst <= 1e-12, "n=" + std::to_string(n)});
    }
    return collect("delta", 1e-12, samples);
}

CheckResult check_agreement(const VerifyOptions& o) {
    const auto cases = agreement_cases(o.seed, count_or(o, 40), o.tol);
    return collect("agreement", o.tol, sample_all(cases.size(), o.jobs, [&](std::size_t i) {
                       const auto& c = cases[i];
                       const EvaluationReport rep = evaluate(c.instance, default_methods(c.instance, c.rational));
                       return Sample{rep.pairwise_max_relative_disagreement, rep.verdict == Verdict::Agree,
                                     describe(c.instance)};
                   }));
}

CheckResult check_euler(const VerifyOptions& o) {
    const auto cases = euler_cases(o.seed, count_or(o, 30));
    const double threshold = 1e-8;
    return collect("euler", threshold, sample_all(cases.size(), o.jobs, [&](std::size_t i) {
                       const auto& c = cases[i];
                       const cplx lhs = c.b * core_integral(c.w, c.b).value;
                       const cplx rhs = hyp2f1_one_b(c.b, c.w).value;
                       const double r = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0);
                       return Sample{r, r < threshold, describe(c.w, c.b, 0.0)};
                   }));
}

CheckResult check_residue(const VerifyOptions& o) {
    std::vector<ProblemInstance> grid;
    for (long b = -5; b <= 5; ++b)
        for (double m : {0.3, 0.7, 1.5, 4.0})
            for (double a : {0.5, 2.5, 4.5})
                for (double t : {kPi / 3, kPi, 5.0})
                    grid.push_back({std::polar(m, a), static_cast<double>(b), BranchAngle(t)});
    const double threshold = 1e-8;
    return collect("residue", threshold, sample_all(grid.size(), o.jobs, [&](std::size_t i) {
                       const cplx exact = eval_theorem(grid[i]).value;
                       const cplx q = circle_integral(grid[i]).value;
                       const double r = std::abs(q - exact) / (1.0 + std::abs(exact));
                       return Sample{r, r < threshold, describe(grid[i])};
                   }));
}

CheckResult check_rational(const VerifyOptions& o) {
    std::vector<RationalBeta> betas;
    for (long n = 2; n <= 6; ++n)
        for (long m = -11; m <= 11; ++m)
            if (std::gcd(m, n) == 1) betas.emplace_back(m, n);
    const auto zs = disk_points(o.seed, count_or(o, 20));
    const double threshold = 1e-9;
    const double branch_threshold = 1e-12;
    return collect("rational", threshold, sample_all(betas.size(), o.jobs, [&](std::size_t i) {
                       const RationalBeta& b = betas[i];
                       Sample s{0.0, true, "m/n=" + std::to_string(b.m()) + "/" + std::to_string(b.n())};
                       for (const cplx z : zs) {
                           const cplx g = eval_rational_G(z, b);
                           const cplx f = hyp2f1_one_b(b.value(), z).value;
                           const double r = std::abs(g - f) / std::max(std::abs(f), 1e-300);
                           s.residual = std::max(s.residual, r);
                           s.ok = s.ok && r < threshold;
                           for (long l = 1; l < b.n(); ++l) {
                               const double d = std::abs(eval_rational_G(z, b, l) - g) / std::max(std::abs(g), 1.0);
                               s.ok = s.ok && d < branch_threshold;
                           }
                       }
                       return s;
                   }));
}

CheckResult check_singular(const VerifyOptions&) {
    std::vector<Sample> samples;
    for (double t : {1.0, kPi, 5.0}) {
        const BranchAngle theta(t);
        for (int regime = 0; regime < 2; ++regime) {
            const OdeCoefficients c = regime == 0 ? outer_coefficients(0.5, theta) : inner_coefficients(0.5, theta);
            const auto pts = singular_points(c);
            const cplx expect[] = {0.0, std::exp(cplx(0.0, t))};
            bool ok = pts.size() == 3;
            double err = 0.0;
            bool has_inf = false;
            int found = 0;
            for (const auto& p : pts) {
                ok = ok && p.kind == SingularKind::Regular;
                if (!p.location) {
                    has_inf = true;
                    continue;
                }
                double best = std::numeric_limits<double>::infinity();
                for (cplx e : expect) best = std::min(best, std::abs(*p.location - e));
                err = std::max(err, best);
                if (best < 1e-8) ++found;
            }
            ok = ok && has_inf && found == 2;
            samples.push_back({err, ok, std::string(regime == 0 ? "outer" : "inner") + " theta=" + format_double(t)});
        }
    }
    return collect("singular", 1e-8, samples);
}

using CheckFn = CheckResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> r = {
        {"reconciliation", check_reconciliation_grid},
        {"lemma", check_lemma},
        {"ode", check_ode},
        {"delta", check_delta},
        {"agreement", check_agreement},
        {"euler", check_euler},
        {"residue", check_residue},
        {"rational", check_rational},
        {"singular", check_singular},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& available_checks() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

VerifyReport run_verify(const VerifyOptions& opts) {
    std::vector<CheckFn> selected;
    if (opts.checks.empty()) {
        for (const auto& [name, fn] : registry()) selected.push_back(fn);
    } else {
        for (const std::string& want : opts.checks) {
            const auto it = std::find_if(registry().begin(), registry().end(),
                                         [&](const auto& entry) { return entry.first == want; });
            if (it == registry().end()) throw std::invalid_argument("unknown check '" + want + "'");
            selected.push_back(it->second);
        }
    }
    VerifyReport rep;
    rep.seed = opts.seed;
    for (CheckFn fn : selected) {
        rep.checks.push_back(fn(opts));
        if (!rep.checks.back().passed) rep.verdict = Verdict::Disagree;
    }
    return rep;
}

std::string to_json(const VerifyReport& report, bool pretty) {
    JsonWriter w(pretty);
    w.begin_object();
    w.key("seed").value(static_cast<long>(report.seed));
    w.key("checks").begin_array();
    for (const CheckResult& c : report.checks) {
        w.begin_object();
        w.key("name").value(c.name);
        w.key("cases").value(c.cases);
        w.key("failures").value(c.failures);
        w.key("max_residual").value(c.max_residual);
        w.key("threshold").value(c.threshold);
        w.key("passed").value(c.passed);
        if (!c.passed) w.key("worst").value(c.worst);
        w.end_object();
    }
    w.end_array();
    w.key("verdict").value(to_string(report.verdict));
    w.end_object();
    return w.str();
}

}  // namespace bci
