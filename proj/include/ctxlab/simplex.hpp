#pragma once

#include <vector>

#include "ctxlab/linalg.hpp"
#include "ctxlab/rational.hpp"

namespace ctxlab {

struct LpResult {
    bool feasible = false;
    Rational value;
    std::vector<Rational> x;
};

/// min c.x subject to A x >= b and lo <= x <= hi, exact two-phase simplex with Bland's rule.
LpResult minimize(const std::vector<Rational>& c, const RationalMatrix& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& lo, const std::vector<Rational>& hi);

}  // namespace ctxlab
