#include "bci/hyp2f1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bci/errors.hpp"

namespace bci {

namespace {

bool is_nonpositive_integer(cplx c) {
    const auto n = as_integer(c);
    return n && *n <= 0;
}

void check_unit_disk(cplx z) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::DomainError, "series requires |z| < 1");
}

}  // namespace

cplx pochhammer(cplx x, long n) {
    cplx acc(1.0, 0.0);
    for (long k = 0; k < n; ++k) acc *= x + static_cast<double>(k);
    return acc;
}

std::vector<cplx> hyp2f1_terms(cplx a, cplx b, cplx c, cplx z, long count) {
    if (is_nonpositive_integer(c)) throw Error(ErrorCode::InvalidC, "c is a non-positive integer");
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(std::max(count, 0L)));
    cplx term(1.0, 0.0);
    for (long n = 0; n < count; ++n) {
        terms.push_back(term);
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) * z / ((c + dn) * (dn + 1.0));
    }
    return terms;
}

SeriesResult hyp2f1_series(cplx a, cplx b, cplx c, cplx z, double tol, long max_terms) {
    if (is_nonpositive_integer(c)) throw Error(ErrorCode::InvalidC, "c is a non-positive integer");
    check_unit_disk(z);

    const double az = std::abs(z);
    // Before this index the term ratio need not be near its limit |z|.
    const double settle = std::max({std::abs(a), std::abs(b), std::abs(c)}) + 1.0;
    SeriesResult res;
    res.slow = az > kSeriesComfortModulus;
    cplx sum(0.0, 0.0);
    cplx term(1.0, 0.0);
    for (long n = 0; n < max_terms; ++n) {
        sum += term;
        res.terms_used = n + 1;
        const double dn = static_cast<double>(n);
        const cplx next = term * (a + dn) * (b + dn) * z / ((c + dn) * (dn + 1.0));
        if (next == cplx(0.0, 0.0)) {  // terminating series
            res.tail_estimate = 0.0;
            res.converged = true;
            break;
        }
        const double ratio = std::abs(next) / std::abs(term);
        const double q = std::max(az, ratio);
        term = next;
        if (q < 1.0) {
            res.tail_estimate = std::abs(term) / (1.0 - q);
            if (dn >= settle && res.tail_estimate <= tol * std::max(std::abs(sum), 1.0)) {
                res.converged = true;
                break;
            }
        } else {
            res.tail_estimate = std::numeric_limits<double>::infinity();
        }
    }
    res.value = sum;
    return res;
}

SeriesResult hyp2f1_one_b(cplx b, cplx z, double tol, long max_terms) {
    if (is_nonpositive_integer(b)) throw Error(ErrorCode::InvalidC, "b is a non-positive integer");
    check_unit_disk(z);

    const double az = std::abs(z);
    SeriesResult res;
    res.slow = az > kSeriesComfortModulus;
    const double bound_scale = std::abs(b) / (1.0 - az);
    cplx sum(0.0, 0.0);
    cplx zk(1.0, 0.0);
    double azk1 = az;  // |z|^{k+1}
    for (long k = 0; k < max_terms; ++k) {
        const double dk = static_cast<double>(k);
        sum += b / (b + dk) * zk;
        res.terms_used = k + 1;
        zk *= z;
        if (az == 0.0) {
            res.tail_estimate = 0.0;
            res.converged = true;
            break;
        }
        // |b+j| is increasing for j >= k+1 once Re(b) + k + 1 >= 0.
        if (b.real() + dk + 1.0 >= 0.0) {
            res.tail_estimate = bound_scale * azk1 / std::abs(b + dk + 1.0);
            if (res.tail_estimate <= tol * std::max(std::abs(sum), 1.0)) {
                res.converged = true;
                break;
            }
        } else {
            res.tail_estimate = std::numeric_limits<double>::infinity();
        }
        azk1 *= az;
    }
    res.value = sum;
    return res;
}

}  // namespace bci
