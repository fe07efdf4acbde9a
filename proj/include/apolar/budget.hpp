#pragma once

#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace apolar {

// APOLAR_BUDGET caps the monomial-table width used by linear algebra and the
// Buchberger step count. One knob on purpose: both costs scale with it.
inline long budget() {
    static long b = [] {
        const char* e = std::getenv("APOLAR_BUDGET");
        if (!e) return 2000000L;
        long v = std::atol(e);
        return v > 0 ? v : 2000000L;
    }();
    return b;
}

inline void check_matrix_budget(long cols) {
    if (cols > budget())
        throw BudgetError("matrix dimension " + std::to_string(cols) +
                          " exceeds APOLAR_BUDGET=" + std::to_string(budget()));
}

} // namespace apolar
