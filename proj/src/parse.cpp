#include "bci/parse.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "bci/errors.hpp"

namespace bci {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& text) {
    const std::string s = strip(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

long parse_long(const std::string& text) {
    const std::string s = strip(text);
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

double parse_angle(const std::string& text) {
    std::string s = strip(text);
    const std::size_t p = s.find("pi");
    if (p == std::string::npos) return parse_number(s);

    std::string coef = strip(s.substr(0, p));
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double factor = 1.0;
    if (coef == "-") factor = -1.0;
    else if (coef == "+") factor = 1.0;
    else if (!coef.empty()) factor = parse_number(coef);

    const std::string rest = strip(s.substr(p + 2));
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/') throw std::invalid_argument("bad angle: '" + text + "'");
        divisor = parse_number(rest.substr(1));
        if (divisor == 0.0) throw std::invalid_argument("bad angle: '" + text + "'");
    }
    return factor * kPi / divisor;
}

cplx parse_complex(const std::string& text) {
    const std::string s = strip(text);
    if (const std::size_t at = s.find('@'); at != std::string::npos) {
        return std::polar(parse_number(s.substr(0, at)), parse_angle(s.substr(at + 1)));
    }
    const auto parts = split(s, ',');
    if (parts.size() == 1) return {parse_number(parts[0]), 0.0};
    if (parts.size() == 2) return {parse_number(parts[0]), parse_number(parts[1])};
    throw std::invalid_argument("bad complex value: '" + text + "'");
}

BetaSpec parse_beta(const std::string& text) {
    const std::string s = strip(text);
    if (const std::size_t slash = s.find('/'); slash != std::string::npos && s.find(',') == std::string::npos &&
                                               s.find('@') == std::string::npos) {
        const long m = parse_long(s.substr(0, slash));
        const long n = parse_long(s.substr(slash + 1));
        if (n == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        const double v = static_cast<double>(m) / static_cast<double>(n);
        if (m % n == 0) return {cplx(v, 0.0), std::nullopt};  // an integer written as a fraction
        return {cplx(v, 0.0), RationalBeta(m, n)};
    }
    return {parse_complex(s), std::nullopt};
}

std::vector<double> parse_real_list(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) return {};
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) throw std::invalid_argument("range must be a:b:step, got '" + text + "'");
        const double a = parse_angle(parts[0]);
        const double b = parse_angle(parts[1]);
        const double step = parse_angle(parts[2]);
        if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
        std::vector<double> out;
        const long count = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long k = 0; k <= count; ++k) out.push_back(a + static_cast<double>(k) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(s, ',')) out.push_back(parse_angle(p));
    return out;
}

std::vector<MethodSpec> parse_methods(const std::string& text, const std::optional<RationalBeta>& rational) {
    std::vector<MethodSpec> out;
    for (const auto& raw : split(strip(text), ',')) {
        const std::string name = strip(raw);
        if (name == "theorem") out.push_back({Method::TheoremHypergeometric, std::nullopt});
        else if (name == "quadrature") out.push_back({Method::Quadrature, std::nullopt});
        else if (name == "series") out.push_back({Method::SeriesDirect, std::nullopt});
        else if (name == "rational") {
            if (!rational) throw std::invalid_argument("method 'rational' needs --beta m/n or rational:m/n");
            out.push_back({Method::RationalLogSum, rational});
        } else if (name.rfind("rational:", 0) == 0) {
            const BetaSpec b = parse_beta(name.substr(9));
            if (!b.rational) throw std::invalid_argument("rational:m/n needs a non-integer fraction");
            out.push_back({Method::RationalLogSum, b.rational});
        } else {
            throw std::invalid_argument("unknown method '" + name + "'");
        }
    }
    return out;
}

}  // namespace bci
