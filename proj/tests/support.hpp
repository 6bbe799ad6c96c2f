#pragma once

#include <random>
#include <vector>

#include "ctxlab/distribution.hpp"
#include "ctxlab/rational.hpp"
#include "ctxlab/scenario.hpp"

namespace testsupport {

using ctxlab::EdgeDistribution;
using ctxlab::Rational;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20241017);
    return gen;
}

inline int uniform_int(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

/// k / den with k uniform in [0, den].
inline Rational random_unit(int den)
{
    return Rational(uniform_int(0, den), den);
}

/// Random convex weights with small denominators, summing to 1.
inline std::vector<Rational> random_weights(std::size_t k)
{
    std::vector<int> raw(k);
    int total = 0;
    for (auto& r : raw) {
        r = uniform_int(1, 9);
        total += r;
    }
    std::vector<Rational> w;
    for (int r : raw)
        w.emplace_back(r, total);
    return w;
}

/// Sparse convex mixture of `k` points chosen (with repetition) from `pool`.
inline EdgeDistribution random_mixture(const std::vector<EdgeDistribution>& pool, std::size_t k)
{
    auto w = random_weights(k);
    const auto& first = pool.front();
    std::vector<Rational> v(first.values().size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& p = pool[static_cast<std::size_t>(uniform_int(0, static_cast<int>(pool.size()) - 1))];
        for (std::size_t e = 0; e < v.size(); ++e)
            v[e] += w[i] * p[e];
    }
    return EdgeDistribution(first.scenario_ptr(), std::move(v));
}

/// Distributions of every deterministic assignment.
inline std::vector<EdgeDistribution> deterministic_points(const ctxlab::ScenarioPtr& s)
{
    std::vector<EdgeDistribution> out;
    for (const auto& a : ctxlab::deterministic_enumerate(s))
        out.push_back(a.distribution());
    return out;
}


/// Uniform grid point of [lo, hi] with `den` steps.
inline Rational random_in(const Rational& lo, const Rational& hi, int den)
{
    return lo + random_unit(den) * (hi - lo);
}

/// Feasible third edge value given the other two: [|x + y - 1|, 1 - |x - y|].
inline std::pair<Rational, Rational> third_edge_range(const Rational& x, const Rational& y)
{
    Rational lo = x + y - 1;
    if (lo < 0)
        lo = -lo;
    Rational diff = x - y;
    if (diff < 0)
        diff = -diff;
    return {lo, 1 - diff};
}

/// Valid distribution on a fan disk, filled triangle by triangle.
inline EdgeDistribution random_disk_distribution(const ctxlab::ScenarioPtr& s, int den)
{
    std::vector<Rational> v(s->edge_count(), 0);
    std::vector<bool> set(v.size(), false);
    for (std::size_t t = 0; t < s->triangles().size(); ++t) {
        const auto& sl = s->slots(t);
        for (std::size_t k : {sl[2], sl[0]}) {
            if (!set[k]) {
                v[k] = random_unit(den);
                set[k] = true;
            }
        }
        auto [lo, hi] = third_edge_range(v[sl[2]], v[sl[0]]);
        v[sl[1]] = random_in(lo, hi, den);
        set[sl[1]] = true;
    }
    return EdgeDistribution(s, std::move(v));
}

}  // namespace testsupport
