#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ctxlab/distribution.hpp"
#include "ctxlab/rational.hpp"

namespace ctxlab {

/// sum_e coeffs[e] * x_e >= rhs. Zero coefficients are never stored.
struct LinearInequality {
    std::map<EdgeId, Rational> coeffs;
    Rational rhs;
    std::string label;

    /// Adds `c` to the coefficient of `edge`, dropping it if the sum is zero.
    void add(const EdgeId& edge, const Rational& c);
    Rational coefficient(const EdgeId& edge) const;

    /// Left-hand side at the edge values of p (probability coordinates).
    Rational lhs(const EdgeDistribution& p) const;
    Rational slack(const EdgeDistribution& p) const { return lhs(p) - rhs; }
    bool satisfied_by(const EdgeDistribution& p) const { return slack(p) >= 0; }

    /// Compares coefficients and bound; labels are ignored.
    friend bool operator==(const LinearInequality& a, const LinearInequality& b)
    {
        return a.coeffs == b.coeffs && a.rhs == b.rhs;
    }
    friend bool operator<(const LinearInequality& a, const LinearInequality& b)
    {
        return std::tie(a.coeffs, a.rhs) < std::tie(b.coeffs, b.rhs);
    }
};

/// Scales by a positive factor to a primitive integer vector (coefficients and rhs together).
/// The direction of the inequality is never changed.
LinearInequality normalize(LinearInequality ineq);

/// "2 t1 - (c,v1) >= -1", terms in the given edge order, then any remaining ids.
std::string to_string(const LinearInequality& ineq, const std::vector<EdgeId>& edge_order = {});

}  // namespace ctxlab
