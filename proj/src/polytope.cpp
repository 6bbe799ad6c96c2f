#include "ctxlab/polytope.hpp"

#include "ctxlab/linalg.hpp"

namespace ctxlab {

HRep h_representation(const ScenarioPtr& s)
{
    HRep h{s, {}};
    for (std::size_t t = 0; t < s->triangles().size(); ++t) {
        const Triangle& tri = s->triangles()[t];
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                LinearInequality row;
                row.add(tri.d2, a ? -1 : 1);
                row.add(tri.d0, b ? -1 : 1);
                row.add(tri.d1, (a + b) % 2 ? -1 : 1);
                row.rhs = (a + b + 1) % 2 - a - b;
                row.label = "(" + tri.id + "," + std::to_string(a) + std::to_string(b) + ")";
                h.rows.push_back(std::move(row));
            }
        }
    }
    return h;
}

namespace {

void require_same(const HRep& h, const EdgeDistribution& p)
{
    if (!same_scenario(h.scenario, p.scenario_ptr()))
        throw InvalidInput("distribution and H-representation are on different scenarios");
}

RationalMatrix dense_rows(const HRep& h, const std::vector<std::size_t>& rows)
{
    const Scenario& s = *h.scenario;
    RationalMatrix m;
    for (std::size_t r : rows) {
        std::vector<Rational> v(s.edge_count(), 0);
        for (const auto& [edge, c] : h.rows[r].coeffs)
            v[s.edge_index(edge)] = c;
        m.push_back(std::move(v));
    }
    return m;
}

}  // namespace

std::vector<std::size_t> tight_set(const HRep& h, const EdgeDistribution& p)
{
    require_same(h, p);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        if (h.rows[i].slack(p) == 0)
            out.push_back(i);
    }
    return out;
}

std::size_t rank_of(const HRep& h, const EdgeDistribution& p)
{
    return rank(dense_rows(h, tight_set(h, p)));
}

bool is_vertex(const HRep& h, const EdgeDistribution& p)
{
    require_same(h, p);
    for (const auto& row : h.rows) {
        if (!row.satisfied_by(p))
            return false;
    }
    return rank_of(h, p) == p.scenario().edge_count();
}

bool verify_mixture(const EdgeDistribution& p, const std::vector<std::pair<OutcomeAssignment, Rational>>& mixture)
{
    std::vector<Rational> sum(p.values().size(), 0);
    Rational total = 0;
    for (const auto& [s, w] : mixture) {
        if (w <= 0 || !same_scenario(s.scenario_ptr(), p.scenario_ptr()))
            return false;
        total += w;
        for (std::size_t e = 0; e < sum.size(); ++e) {
            if (s[e] == 0)
                sum[e] += w;
        }
    }
    return total == 1 && sum == p.values();
}

bool verify_separation(const EdgeDistribution& p, const LinearInequality& ineq, const Limits& limits)
{
    if (ineq.satisfied_by(p))
        return false;
    for (const auto& s : deterministic_enumerate(p.scenario_ptr(), limits)) {
        if (!ineq.satisfied_by(s.distribution()))
            return false;
    }
    return true;
}

std::vector<OutcomeAssignment> support(const EdgeDistribution& p, const Limits& limits)
{
    TriangleTable table = triangle_table(p);
    const Scenario& sc = p.scenario();
    std::vector<OutcomeAssignment> out;
    for (auto& s : deterministic_enumerate(p.scenario_ptr(), limits)) {
        bool ok = true;
        for (std::size_t t = 0; ok && t < table.entries.size(); ++t) {
            const auto& sl = sc.slots(t);
            int a = s[sl[2]];
            int b = s[sl[0]];
            ok = table.entries[t][2 * a + b] > 0;
        }
        if (ok)
            out.push_back(std::move(s));
    }
    return out;
}

bool is_strongly_contextual(const EdgeDistribution& p, const Limits& limits)
{
    return support(p, limits).empty();
}

}  // namespace ctxlab
