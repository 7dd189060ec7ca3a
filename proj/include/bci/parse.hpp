#pragma once

// Text forms accepted on the command line.

#include <optional>
#include <string>
#include <vector>

#include "bci/report.hpp"

namespace bci {

/// A real number, or a multiple of pi: "pi", "-pi/2", "2pi/3", "2*pi/3",
/// "0.5pi".  Throws std::invalid_argument.
double parse_angle(const std::string& text);

/// "re,im", "mod@arg" (arg as in parse_angle), or a bare real.
cplx parse_complex(const std::string& text);

struct BetaSpec {
    cplx value;
    std::optional<RationalBeta> rational;  // set for "m/n" input
};

/// A complex value as in parse_complex, or an exact rational "m/n".
BetaSpec parse_beta(const std::string& text);

/// "a:b:step" (inclusive of b up to rounding), a comma list, or one value.
/// Each entry may use the angle syntax.
std::vector<double> parse_real_list(const std::string& text);

/// Comma list of theorem, quadrature, series, rational, rational:m/n.
/// A bare "rational" takes `rational` (and is an error without it).
std::vector<MethodSpec> parse_methods(const std::string& text, const std::optional<RationalBeta>& rational);

}  // namespace bci
