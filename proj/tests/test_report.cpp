#include <doctest.h>

#include <stdexcept>

#include <json.hpp>

#include "bci/errors.hpp"
#include "bci/json_writer.hpp"
#include "bci/parallel.hpp"
#include "bci/parse.hpp"
#include "bci/report.hpp"
#include "bci/verify.hpp"
#include "helpers.hpp"

using namespace bci;

TEST_SUITE("report") {

TEST_CASE("parse_angle") {
    CHECK(parse_angle("pi") == kPi);
    CHECK(parse_angle("pi/3") == doctest::Approx(kPi / 3));
    CHECK(parse_angle("2pi/3") == doctest::Approx(2 * kPi / 3));
    CHECK(parse_angle("2*pi/3") == doctest::Approx(2 * kPi / 3));
    CHECK(parse_angle("-pi/2") == doctest::Approx(-kPi / 2));
    CHECK(parse_angle("0.5pi") == doctest::Approx(kPi / 2));
    CHECK(parse_angle(" 1.25 ") == 1.25);
    CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("abc"), std::invalid_argument);
}

TEST_CASE("parse_complex and parse_beta") {
    CHECK(parse_complex("0.5,0") == cplx(0.5, 0.0));
    CHECK(parse_complex("-1e-3,2") == cplx(-1e-3, 2.0));
    CHECK(parse_complex("3") == cplx(3.0, 0.0));
    CHECK(std::abs(parse_complex("2@pi/2") - cplx(0.0, 2.0)) < 1e-15);
    CHECK_THROWS_AS(parse_complex("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1,x"), std::invalid_argument);

    const BetaSpec half = parse_beta("1/2");
    CHECK(half.value == cplx(0.5, 0.0));
    REQUIRE(half.rational);
    CHECK(half.rational->m() == 1);
    CHECK(parse_beta("-2/3").rational->m() == -2);
    CHECK_FALSE(parse_beta("4/2").rational);
    CHECK(parse_beta("4/2").value == cplx(2.0, 0.0));
    CHECK_FALSE(parse_beta("0.5,0.2").rational);
    CHECK_THROWS_AS(parse_beta("1/0"), std::invalid_argument);
}

TEST_CASE("parse_real_list") {
    const auto r = parse_real_list("0.2:0.8:0.2");
    REQUIRE(r.size() == 4);
    CHECK(r[3] == doctest::Approx(0.8));
    CHECK(parse_real_list("0.5,1.5,pi").size() == 3);
    CHECK(parse_real_list("").empty());
    CHECK(parse_real_list("0:pi:pi/2").size() == 3);
    CHECK_THROWS_AS(parse_real_list("0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_real_list("0:1:-1"), std::invalid_argument);
}

TEST_CASE("parse_methods") {
    const auto m = parse_methods("theorem,quadrature,rational:1/2", std::nullopt);
    REQUIRE(m.size() == 3);
    CHECK(m[2].label() == "rational:1/2");
    CHECK(parse_methods("rational", RationalBeta(2, 3))[0].label() == "rational:2/3");
    CHECK_THROWS_AS(parse_methods("rational", std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(parse_methods("simpson", std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(parse_methods("rational:2/1", std::nullopt), std::invalid_argument);
}

TEST_CASE("json writer formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0 / 0.0) == "null");
    JsonWriter w;
    w.begin_object().key("a").value(1L).key("b").begin_array().value(cplx(1.5, -2.0)).value("x\"y").end_array();
    w.key("c").begin_object().end_object().key("d").null().end_object();
    CHECK(w.str() == R"({"a":1,"b":[[1.5,-2],"x\"y"],"c":{},"d":null})");
    JsonWriter p(true);
    p.begin_object().key("a").value(true).end_object();
    CHECK(p.str() == "{\n  \"a\": true\n}");
}

TEST_CASE("evaluate: verdicts") {
    const ProblemInstance a{0.5, 1.0, BranchAngle(kPi)};
    const EvaluationReport ra = evaluate(a, default_methods(a));
    CHECK(ra.verdict == Verdict::Agree);
    REQUIRE(ra.results.size() == 3);
    for (const auto& o : ra.results) CHECK(std::abs(o.result->value - cplx(0.0, kPi)) < 1e-9);

    ProblemInstance b{2.0, 0.5, BranchAngle(kPi)};
    const auto methods = parse_methods("theorem,quadrature,rational:1/2", std::nullopt);
    const EvaluationReport rb = evaluate(b, methods);
    CHECK(rb.verdict == Verdict::Agree);
    CHECK(rb.pairwise_max_relative_disagreement < 1e-8);

    b.tol = 1e-30;
    CHECK(evaluate(b, methods).verdict == Verdict::Disagree);

    // series is not applicable for |α| > 1 and is dropped, not a failure
    const ProblemInstance c{2.0, 0.5, BranchAngle(kPi)};
    const EvaluationReport rc = evaluate(c, parse_methods("theorem,series", std::nullopt));
    CHECK(rc.verdict == Verdict::Agree);
    CHECK(rc.results[1].status == "NotApplicable");
    CHECK_FALSE(rc.results[1].applicable);

    // AlphaOnCircle everywhere: nothing to compare
    const ProblemInstance d{1.0, 0.5, BranchAngle(kPi)};
    const EvaluationReport rd = evaluate(d, default_methods(d));
    CHECK(rd.verdict == Verdict::Partial);
    CHECK(rd.results[0].status == "AlphaOnCircle");

    // wrong rational: that method fails, others agree
    const EvaluationReport re = evaluate(c, parse_methods("theorem,quadrature,rational:1/3", std::nullopt));
    CHECK(re.verdict == Verdict::Partial);
    CHECK(re.results[2].status == "InvalidRational");
}

TEST_CASE("report JSON follows the schema") {
    const ProblemInstance a{2.0, 0.5, BranchAngle(kPi)};
    const EvaluationReport r = evaluate(a, parse_methods("theorem,series,quadrature", std::nullopt));
    const std::string text = to_json(r, true);
    CHECK(text == to_json(evaluate(a, parse_methods("theorem,series,quadrature", std::nullopt)), true));
    const auto j = nlohmann::json::parse(text);
    CHECK(j["instance"]["alpha"][0] == 2.0);
    CHECK(j["instance"]["theta"].get<double>() == kPi);
    CHECK(j["results"].size() == 3);
    CHECK(j["results"][0]["method"] == "theorem");
    CHECK(j["results"][0]["value"].size() == 2);
    CHECK(j["results"][1]["status"] == "NotApplicable");
    CHECK(j["results"][1]["value"].is_null());
    CHECK(j["verdict"] == "Agree");
    CHECK(j["disagreement"].get<double>() < 1e-8);
    CHECK_FALSE(j["results"][0].contains("time_us"));
    CHECK(nlohmann::json::parse(to_json(r, false, true))["results"][0].contains("time_us"));

    const auto ex = nlohmann::json::parse(excluded_json({1.0, 0.5, BranchAngle(1.0)}, "AlphaOnCircle"));
    CHECK(ex["status"] == "AlphaOnCircle");
    CHECK(ex["verdict"].is_null());
}

TEST_CASE("csv rows") {
    const ProblemInstance a{0.5, 1.0, BranchAngle(kPi)};
    const std::string rows = to_csv(evaluate(a, default_methods(a)), 7);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
    CHECK(rows.rfind("7,0.5,0,1,0,", 0) == 0);
    const std::string header = csv_header();
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(rows.begin(), rows.begin() + rows.find('\n'), ','));
}

TEST_CASE("parallel_map keeps order and rethrows") {
    const auto v = parallel_map(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    CHECK_THROWS_AS(parallel_map(10, 3,
                                 [](std::size_t i) {
                                     if (i == 5) throw std::runtime_error("x");
                                     return 0;
                                 }),
                    std::runtime_error);
    CHECK(parallel_map(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("seeded samplers are reproducible and in range") {
    const auto a = agreement_cases(42, 60, 1e-8);
    const auto b = agreement_cases(42, 60, 1e-8);
    REQUIRE(a.size() == 60);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].instance.alpha == b[i].instance.alpha);
        CHECK(a[i].instance.beta == b[i].instance.beta);
        const double m = std::abs(a[i].instance.alpha);
        CHECK(((m >= 0.1 && m <= 0.9) || (m >= 1.1 && m <= 5.0)));
        CHECK(std::abs(a[i].instance.beta) <= 3.0);
        CHECK_FALSE(as_integer(a[i].instance.beta));
        CHECK(a[i].instance.theta.value() > 0.1);
        CHECK(a[i].instance.theta.value() < kTwoPi - 0.1);
        CHECK(a[i].rational.has_value() == (i % 4 == 3));
    }
    CHECK(agreement_cases(43, 1, 1e-8)[0].instance.alpha != a[0].instance.alpha);
    for (const cplx z : disk_points(3, 200)) CHECK(std::abs(z) <= 0.9);
    for (const auto& e : euler_cases(3, 50)) {
        CHECK(e.b.real() > 0.2);
        CHECK(e.b.real() < 3.0);
        CHECK(std::abs(e.w) <= 0.9);
    }
}

TEST_CASE("verify: selected checks, determinism, corrupted tolerance") {
    VerifyOptions o;
    o.checks = {"delta", "singular", "agreement"};
    o.count = 8;
    o.nmax = 16;
    const VerifyReport r1 = run_verify(o);
    CHECK(r1.verdict == Verdict::Agree);
    REQUIRE(r1.checks.size() == 3);
    CHECK(r1.checks[0].name == "delta");
    CHECK(r1.checks[0].cases == 16);
    o.jobs = 4;
    CHECK(to_json(run_verify(o), true) == to_json(r1, true));

    o.tol = 1e-30;
    const VerifyReport bad = run_verify(o);
    CHECK(bad.verdict == Verdict::Disagree);
    CHECK_FALSE(bad.checks[2].passed);
    CHECK(nlohmann::json::parse(to_json(bad, false))["checks"][2].contains("worst"));

    o.checks = {"nope"};
    CHECK_THROWS_AS(run_verify(o), std::invalid_argument);
}

TEST_CASE("verify: ode check with a custom beta") {
    VerifyOptions o;
    o.checks = {"ode"};
    o.betas = {cplx(0.5, 0.0)};
    const VerifyReport r = run_verify(o);
    CHECK(r.verdict == Verdict::Agree);
    CHECK(r.checks[0].cases == 18);
}

}
