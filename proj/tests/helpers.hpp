#pragma once

#include <complex>

#include <doctest.h>

#include "bci/branch.hpp"

namespace testing {

inline double rel(bci::cplx a, bci::cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// |a − b| / max(|b|, 1)
inline double rel1(bci::cplx a, bci::cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

}  // namespace testing

#define CHECK_CLOSE(a, b, tol) CHECK(testing::rel1((a), (b)) < (tol))
