#pragma once

#include <algorithm>
#include <cmath>

namespace testing {

inline bool rel_close(double actual, double expected, double tol = 1e-9) {
    if (expected == 0.0) return std::fabs(actual) <= tol;
    return std::fabs(actual - expected) <= tol * std::fabs(expected);
}

}  // namespace testing
