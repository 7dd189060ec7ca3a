#pragma once

// Runs several evaluation methods on one instance and compares them.

#include <optional>
#include <string>
#include <vector>

#include "bci/closed_form.hpp"

namespace bci {

struct MethodSpec {
    Method method = Method::TheoremHypergeometric;
    std::optional<RationalBeta> rational;  // required for RationalLogSum

    std::string label() const;  // "theorem", "rational:1/2", ...
};

enum class Verdict { Agree, Disagree, Partial };

std::string_view to_string(Verdict verdict);

struct MethodOutcome {
    MethodSpec spec;
    std::optional<MethodResult> result;  // empty when the method failed
    std::string status = "ok";           // "ok" or an ErrorCode name
    std::string message;
    bool applicable = true;              // false for NotApplicable
    double micros = 0.0;
};

struct EvaluationReport {
    ProblemInstance instance;
    std::vector<MethodOutcome> results;
    double pairwise_max_relative_disagreement = 0.0;
    Verdict verdict = Verdict::Agree;
};

/// |a − b| / max(|a|, |b|, 1).
double relative_disagreement(cplx a, cplx b);

/// theorem and quadrature always; series when |α| < 1; rational when given.
std::vector<MethodSpec> default_methods(const ProblemInstance& inst,
                                        const std::optional<RationalBeta>& rational = std::nullopt);

/// Runs each method, catching per-method errors.  Methods that report
/// NotApplicable are dropped from the comparison.  The verdict is Disagree
/// when some pair of successful results differs by at least inst.tol,
/// Partial when no pair disagrees but an applicable method failed (or none
/// succeeded), and Agree otherwise.
EvaluationReport evaluate(const ProblemInstance& inst, const std::vector<MethodSpec>& methods);

/// {instance, status, results, disagreement, verdict}; per-method timing is
/// included only when `timing` is set, so output is reproducible by default.
std::string to_json(const EvaluationReport& report, bool pretty, bool timing = false);

/// A row for an instance that was not evaluated (e.g. AlphaOnCircle).
std::string excluded_json(const ProblemInstance& inst, std::string_view status);

/// One CSV line per method result.
std::string csv_header();
std::string to_csv(const EvaluationReport& report, long row);
std::string excluded_csv(const ProblemInstance& inst, std::string_view status, long row);

}  // namespace bci
