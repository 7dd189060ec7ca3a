#pragma once

// Built-in self-check suite and the seeded samplers it draws from.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bci/report.hpp"

namespace bci {

/// mt19937_64 with the uniform mapping done here, so sequences do not
/// depend on the standard library's distribution implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    double uniform();                  // [0, 1)
    double uniform(double a, double b);
    long pick(long count);             // [0, count)
    cplx in_disk(double radius);       // uniform by area

private:
    std::mt19937_64 gen_;
};

struct AgreementCase {
    ProblemInstance instance;
    std::optional<RationalBeta> rational;
};

/// Random instances with |α| ∈ [0.1, 0.9] ∪ [1.1, 5], θ ∈ (0.1, 2π − 0.1) and
/// non-integer β with |β| <= 3.  Every fourth case takes a rational β from
/// {±1/2, ±1/3, 2/3, ±3/4, 5/2} and carries it for the log-sum method.
std::vector<AgreementCase> agreement_cases(std::uint64_t seed, int count, double tol);

/// Instances with Re β ∈ (0.2, 3), alternating |α| < 1 and |α| > 1.
std::vector<ProblemInstance> lemma_cases(std::uint64_t seed, int count);

struct EulerCase {
    cplx b;
    cplx w;
};

/// Re b ∈ (0.2, 3), Im b ∈ (−1, 1), |w| <= 0.9.
std::vector<EulerCase> euler_cases(std::uint64_t seed, int count);

/// Points with |z| <= 0.9, uniform by area.
std::vector<cplx> disk_points(std::uint64_t seed, int count, double radius = 0.9);

struct VerifyOptions {
    std::uint64_t seed = 1;
    double tol = 1e-8;             // agreement threshold
    long nmax = 64;                // delta: largest n
    std::vector<cplx> betas;       // overrides the ode and reconciliation β lists
    int count = 0;                 // overrides per-check sample counts when > 0
    std::vector<std::string> checks;  // empty runs all
    unsigned jobs = 1;
};

struct CheckResult {
    std::string name;
    long cases = 0;
    long failures = 0;
    double max_residual = 0.0;
    double threshold = 0.0;
    bool passed = true;
    std::string worst;  // description of the worst case
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    Verdict verdict = Verdict::Agree;
};

/// reconciliation, lemma, ode, delta, agreement, euler, residue, rational, singular
const std::vector<std::string>& available_checks();

/// Throws std::invalid_argument for an unknown check name.
VerifyReport run_verify(const VerifyOptions& opts);

std::string to_json(const VerifyReport& report, bool pretty);

}  // namespace bci
