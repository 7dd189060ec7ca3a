#include <numeric>

#include <doctest.h>

#include "bci/closed_form.hpp"
#include "bci/errors.hpp"
#include "bci/quadrature.hpp"
#include "helpers.hpp"

using namespace bci;

namespace {
const cplx I(0.0, 1.0);

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::NotApplicable;
}

// Circle integrals evaluated directly at 40 digits (t ∈ (θ, θ+2π), arg = t − 2π).
struct Frozen {
    cplx alpha;
    cplx beta;
    double theta;
    cplx value;
};

const Frozen kFrozen[] = {
    {2.0, 0.5, kPi, {0.0, 0.51832099453158721}},
    {0.3, 0.5, kPi, {0.0, 5.0978397870946862}},
    {{0.0, 0.3}, {-0.5, 0.2}, 2.0, {-4.6934026173164459, 3.9664405327244495}},
    {std::polar(0.6, 1.1), -2.0 / 3.0, 2.5, {-0.4870531736473443, 2.5022861164229438}},
    {2.5, 0.5, kPi, {0.0, 0.43331356721787024}},
    {std::polar(3.0, 2.0), 5.5, 1.0, {0.055286722748290628, 0.10266516483693206}},
    {std::polar(0.7, 0.4), {2.3, -0.8}, 5.0, {10.553025708510661, 0.19573172289657919}},
    {std::polar(1.7, -2.2), {-1.4, 0.6}, 0.7, {-6.425714702890584, 19.918181580073511}},
};
}  // namespace

TEST_SUITE("closed_form") {

TEST_CASE("eval_theorem: integer beta gives residues with no series") {
    const MethodResult a = eval_theorem({2.0, -1.0, BranchAngle(kPi)});
    CHECK(std::abs(a.value - cplx(0.0, -kPi)) < 1e-15);
    CHECK(a.diagnostics.at("terms") == "0");
    CHECK(a.diagnostics.at("regime") == "outer");
    CHECK(a.diagnostics.at("beta_class") == "integer_neg");
    const MethodResult b = eval_theorem({0.5, 2.0, BranchAngle(kPi)});
    CHECK(std::abs(b.value - cplx(0.0, 0.5 * kPi)) < 1e-15);
    CHECK(b.diagnostics.at("regime") == "inner");
    CHECK(eval_theorem({3.0, 0.0, BranchAngle(1.0)}).value == cplx(0.0, 0.0));
    CHECK(eval_theorem({0.3, -2.0, BranchAngle(1.0)}).value == cplx(0.0, 0.0));
    CHECK(eval_theorem({3.0, 4.0, BranchAngle(1.0)}).value == cplx(0.0, 0.0));
}

TEST_CASE("eval_theorem against the quadrature oracle and frozen values") {
    const ProblemInstance inst{2.0, 0.5, BranchAngle(kPi)};
    CHECK(testing::rel1(eval_theorem(inst).value, circle_integral(inst).value) < 1e-8);
    for (const Frozen& f : kFrozen) {
        const MethodResult r = eval_theorem({f.alpha, f.beta, BranchAngle(f.theta)});
        CHECK(testing::rel1(r.value, f.value) < 1e-13);
        CHECK(r.error_estimate >= 0.0);
        CHECK(r.diagnostics.at("beta_class") == "noninteger");
    }
}

TEST_CASE("eval_theorem errors") {
    CHECK(code_of([] { eval_theorem({0.99, 0.5, BranchAngle(1.0)}); }) == ErrorCode::AlphaOnCircle);
    ProblemInstance wide{1.1, 0.5, BranchAngle(1.0)};
    wide.exclusion_band = 0.2;
    CHECK(code_of([&] { eval_theorem(wide); }) == ErrorCode::AlphaOnCircle);
    wide.exclusion_band = 0.05;
    CHECK_NOTHROW(eval_theorem(wide));
    // α on the cut ray is flagged but still evaluated
    const MethodResult r = eval_theorem({std::polar(0.5, 1.0), 0.5, BranchAngle(1.0)});
    CHECK(r.diagnostics.at("alpha_on_cut") == "true");
}

TEST_CASE("eval_mortini_rupp_series examples") {
    // only the k = 0 term: cut_jump(1/2, π)/(1/2) = 2i·2
    CHECK(std::abs(eval_mortini_rupp_series({0.0, 0.5, BranchAngle(kPi)}).value - cplx(0.0, 4.0)) < 1e-15);
    const ProblemInstance a{0.3, 0.5, BranchAngle(kPi)};
    CHECK(testing::rel1(eval_mortini_rupp_series(a).value, eval_theorem(a).value) < 1e-12);
    const ProblemInstance b{cplx(0.0, 0.3), cplx(-0.5, 0.2), BranchAngle(2.0)};
    CHECK(testing::rel1(eval_mortini_rupp_series(b).value, eval_theorem(b).value) < 1e-10);
    for (const Frozen& f : kFrozen) {
        if (std::abs(f.alpha) > 1.0) continue;
        CHECK(testing::rel1(eval_mortini_rupp_series({f.alpha, f.beta, BranchAngle(f.theta)}).value, f.value) <
              1e-13);
    }
}

TEST_CASE("eval_mortini_rupp_series redirects and errors") {
    const MethodResult r = eval_mortini_rupp_series({0.5, 2.0, BranchAngle(1.0)});
    CHECK(std::abs(r.value - cplx(0.0, 0.5 * kPi)) < 1e-15);
    CHECK(r.diagnostics.at("redirect") == "BetaNonNegativeInteger");
    CHECK(code_of([] { eval_mortini_rupp_series({2.0, 0.5, BranchAngle(1.0)}); }) == ErrorCode::NotApplicable);
    CHECK(code_of([] { eval_mortini_rupp_series({0.5, 0.5, BranchAngle(1.0)}, 10); }) ==
          ErrorCode::NoConvergence);
}

TEST_CASE("roots_of_unity_delta examples and exactness") {
    CHECK(roots_of_unity_delta(4, 8) == 1.0);
    CHECK(roots_of_unity_delta(4, 2) == 0.0);
    CHECK(roots_of_unity_delta(1, 17) == 1.0);
    CHECK(roots_of_unity_delta(5, -10) == 1.0);
    for (long n = 1; n <= 64; ++n) {
        for (long d = -512; d <= 512; ++d) {
            const double exact = roots_of_unity_delta(n, d);
            CHECK((exact == 0.0 || exact == 1.0));
            if (std::abs(roots_of_unity_average(n, d) - exact) > 1e-12) FAIL("n=" << n << " d=" << d);
        }
    }
}

TEST_CASE("RationalBeta normalisation") {
    const RationalBeta a(2, -4);
    CHECK(a.m() == -1);
    CHECK(a.n() == 2);
    CHECK(RationalBeta(6, 9).m() == 2);
    CHECK(RationalBeta(6, 9).n() == 3);
    CHECK(code_of([] { RationalBeta b(3, 0); }) == ErrorCode::InvalidRational);
    CHECK(code_of([] { RationalBeta b(6, 3); }) == ErrorCode::IntegerBeta);
    CHECK(code_of([] { RationalBeta b(5, 1); }) == ErrorCode::IntegerBeta);
}

TEST_CASE("eval_rational_G examples") {
    CHECK(eval_rational_G(0.0, RationalBeta(7, 3)) == cplx(1.0, 0.0));
    CHECK(testing::rel(eval_rational_G(0.25, RationalBeta(1, 2)), hyp2f1_one_b(0.5, 0.25).value) < 1e-10);
    const cplx z = std::polar(0.5, 0.7);
    CHECK(testing::rel(eval_rational_G(z, RationalBeta(-1, 3)), hyp2f1_one_b(-1.0 / 3.0, z).value) < 1e-10);
    CHECK(testing::rel(eval_rational_G(z, RationalBeta(-1, 3)), cplx(0.81577445715098103, -0.22368676492098091)) <
          1e-13);
    CHECK(code_of([] { eval_rational_G(cplx(0.6, 0.8), RationalBeta(1, 2)); }) == ErrorCode::DomainError);
}

TEST_CASE("eval_rational_G over all small m/n, including m < 0 and m > n") {
    const cplx zs[] = {{0.05, 0.02}, std::polar(0.3, 2.0), std::polar(0.62, -1.1), std::polar(0.89, 3.0),
                       {-0.7, 0.0}, {0.5, 0.0}};
    for (long n = 2; n <= 6; ++n) {
        for (long m = -11; m <= 11; ++m) {
            if (std::gcd(m, n) != 1) continue;
            const RationalBeta b(m, n);
            for (const cplx z : zs) {
                const cplx g = eval_rational_G(z, b);
                CHECK(testing::rel(g, hyp2f1_one_b(b.value(), z).value) < 1e-12);
                for (long l = -2; l <= n + 1; ++l) CHECK(testing::rel1(eval_rational_G(z, b, l), g) < 1e-14);
            }
        }
    }
    CHECK(testing::rel(eval_rational_G({0.05, 0.02}, RationalBeta(11, 2)), {1.0438899030715073, 0.0184867224927247}) <
          1e-13);
}

TEST_CASE("eval_rational examples") {
    const ProblemInstance a{0.3, 0.5, BranchAngle(kPi)};
    CHECK(testing::rel1(eval_rational(a, RationalBeta(1, 2)).value, eval_theorem(a).value) < 1e-9);
    const ProblemInstance b{2.5, 0.5, BranchAngle(kPi)};
    CHECK(testing::rel1(eval_rational(b, RationalBeta(1, 2)).value, eval_theorem(b).value) < 1e-9);
    const ProblemInstance c{std::polar(0.6, 1.1), -2.0 / 3.0, BranchAngle(2.5)};
    const MethodResult r = eval_rational(c, RationalBeta(-2, 3));
    CHECK(testing::rel1(r.value, circle_integral(c).value) < 1e-7);
    CHECK(r.diagnostics.at("beta_class") == "rational");
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.error_estimate < 1e-14);
}

TEST_CASE("eval_rational frozen values and alpha = 0") {
    CHECK(testing::rel1(eval_rational({std::polar(3.0, 2.0), 5.5, BranchAngle(1.0)}, RationalBeta(11, 2)).value,
                        {0.055286722748290628, 0.10266516483693206}) < 1e-13);
    CHECK(testing::rel1(eval_rational({0.3, 0.5, BranchAngle(kPi)}, RationalBeta(1, 2)).value,
                        {0.0, 5.0978397870946862}) < 1e-14);
    const ProblemInstance z{0.0, -1.0 / 3.0, BranchAngle(2.0)};
    CHECK(testing::rel1(eval_rational(z, RationalBeta(-1, 3)).value, eval_theorem(z).value) < 1e-14);
}

TEST_CASE("eval_rational errors") {
    CHECK(code_of([] { eval_rational({0.5, 0.5, BranchAngle(1.0)}, RationalBeta(1, 3)); }) ==
          ErrorCode::InvalidRational);
    CHECK(code_of([] { eval_rational({std::polar(0.5, 1.0), 0.5, BranchAngle(1.0)}, RationalBeta(1, 2)); }) ==
          ErrorCode::AlphaOnCut);
    CHECK(code_of([] { eval_rational({1.0, 0.5, BranchAngle(1.0)}, RationalBeta(1, 2)); }) ==
          ErrorCode::AlphaOnCircle);
}

TEST_CASE("check_reconciliation examples") {
    CHECK(check_reconciliation({0.4, 0.5, BranchAngle(kPi)}) < 1e-7);
    CHECK(check_reconciliation({std::polar(0.2, 2.0), 1.5, BranchAngle(1.0)}) < 1e-7);
    CHECK(check_reconciliation({0.7, cplx(0.5, 0.3), BranchAngle(kPi / 2)}) < 1e-6);
    CHECK(code_of([] { check_reconciliation({2.0, 0.5, BranchAngle(1.0)}); }) == ErrorCode::NotApplicable);
    CHECK(code_of([] { check_reconciliation({0.5, -0.5, BranchAngle(1.0)}); }) == ErrorCode::DivergentAtZero);
    CHECK(code_of([] { check_reconciliation({0.5, 2.0, BranchAngle(1.0)}); }) ==
          ErrorCode::BetaNonNegativeInteger);
}

TEST_CASE("four methods agree on frozen instances") {
    for (const Frozen& f : kFrozen) {
        const ProblemInstance inst{f.alpha, f.beta, BranchAngle(f.theta)};
        CHECK(testing::rel1(circle_integral(inst).value, f.value) < 1e-10);
    }
}

}
