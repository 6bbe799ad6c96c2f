#include "ctxlab/distribution.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "ctxlab/gf2.hpp"

namespace ctxlab {

bool same_scenario(const ScenarioPtr& a, const ScenarioPtr& b)
{
    return a == b || (a && b && *a == *b);
}

EdgeDistribution::EdgeDistribution(ScenarioPtr scenario, std::vector<Rational> values)
    : scenario_(std::move(scenario)), values_(std::move(values))
{
    if (!scenario_)
        throw InvalidInput("distribution without a scenario");
    if (values_.size() != scenario_->edge_count())
        throw InvalidInput("distribution has " + std::to_string(values_.size()) + " values for " +
                           std::to_string(scenario_->edge_count()) + " edges");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0 || values_[i] > 1)
            throw InvalidDistribution("edge \"" + scenario_->edges()[i] + "\" has value " + to_string(values_[i]) +
                                      " outside [0, 1]");
    }
}

EdgeDistribution EdgeDistribution::from_map(ScenarioPtr scenario, const std::map<EdgeId, Rational>& values)
{
    if (!scenario)
        throw InvalidInput("distribution without a scenario");
    std::vector<Rational> v(scenario->edge_count());
    std::vector<bool> seen(v.size(), false);
    for (const auto& [id, value] : values) {
        if (!scenario->has_edge(id))
            throw InvalidInput("distribution names unknown edge \"" + id + "\"");
        std::size_t i = scenario->edge_index(id);
        v[i] = value;
        seen[i] = true;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!seen[i])
            throw InvalidInput("distribution is missing edge \"" + scenario->edges()[i] + "\"");
    }
    return EdgeDistribution(std::move(scenario), std::move(v));
}

EdgeDistribution EdgeDistribution::constant(ScenarioPtr scenario, const Rational& value)
{
    std::size_t n = scenario ? scenario->edge_count() : 0;
    return EdgeDistribution(std::move(scenario), std::vector<Rational>(n, value));
}

bool EdgeDistribution::is_deterministic() const
{
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0 || v == 1; });
}

namespace {

Rational outcome(const Rational& p0, int bit) { return bit == 0 ? p0 : Rational(1 - p0); }

}  // namespace

TriangleEntries triangle_entries(const EdgeDistribution& p, std::size_t triangle)
{
    const auto& s = p.scenario().slots(triangle);
    const Rational& x = p[s[2]];
    const Rational& y = p[s[0]];
    const Rational& z = p[s[1]];
    TriangleEntries out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            out[2 * a + b] = (outcome(x, a) + outcome(y, b) - outcome(z, (a + b + 1) % 2)) / 2;
    return out;
}

std::vector<TriangleViolation> validate(const EdgeDistribution& p)
{
    std::vector<TriangleViolation> out;
    const auto& tris = p.scenario().triangles();
    for (std::size_t t = 0; t < tris.size(); ++t) {
        TriangleEntries e = triangle_entries(p, t);
        for (int k = 0; k < 4; ++k) {
            if (e[k] < 0)
                out.push_back({tris[t].id, k / 2, k % 2, e[k]});
        }
    }
    return out;
}

void require_valid(const EdgeDistribution& p)
{
    auto v = validate(p);
    if (!v.empty()) {
        const auto& f = v.front();
        throw InvalidDistribution("triangle \"" + f.triangle + "\" has p^" + std::to_string(f.a) +
                                  std::to_string(f.b) + " = " + to_string(f.value) + " < 0");
    }
}

TriangleTable triangle_table(const EdgeDistribution& p)
{
    require_valid(p);
    TriangleTable t;
    for (std::size_t i = 0; i < p.scenario().triangles().size(); ++i)
        t.entries.push_back(triangle_entries(p, i));
    return t;
}

OutcomeAssignment::OutcomeAssignment(ScenarioPtr scenario, std::vector<std::uint8_t> bits)
    : scenario_(std::move(scenario)), bits_(std::move(bits))
{
    if (!scenario_)
        throw InvalidInput("assignment without a scenario");
    if (bits_.size() != scenario_->edge_count())
        throw InvalidInput("assignment has " + std::to_string(bits_.size()) + " bits for " +
                           std::to_string(scenario_->edge_count()) + " edges");
    for (auto& b : bits_) {
        if (b > 1)
            throw InvalidInput("assignment bits must be 0 or 1");
    }
    for (std::size_t t = 0; t < scenario_->triangles().size(); ++t) {
        const auto& s = scenario_->slots(t);
        if ((bits_[s[0]] + bits_[s[1]] + bits_[s[2]]) % 2 != 0)
            throw InvalidInput("assignment violates parity on triangle \"" + scenario_->triangles()[t].id + "\"");
    }
}

EdgeDistribution OutcomeAssignment::distribution() const
{
    std::vector<Rational> v;
    v.reserve(bits_.size());
    for (auto b : bits_)
        v.emplace_back(b == 0 ? 1 : 0);
    return EdgeDistribution(scenario_, std::move(v));
}

std::string OutcomeAssignment::bit_string() const
{
    std::string s;
    for (auto b : bits_)
        s.push_back(b ? '1' : '0');
    return s;
}

namespace {

AffineSpace parity_space(const Scenario& s)
{
    std::size_t n = s.edge_count();
    std::vector<Gf2Row> rows;
    for (std::size_t t = 0; t < s.triangles().size(); ++t) {
        Gf2Row r(n);
        for (std::size_t e : s.slots(t))
            r.flip(e);
        rows.push_back(std::move(r));
    }
    std::vector<std::uint8_t> rhs(rows.size(), 0);
    return solve_gf2(std::move(rows), std::move(rhs), n);
}

void check_count(std::uint64_t count, const Limits& limits)
{
    if (count > limits.max_assignments)
        throw GuardrailExceeded("scenario has " + std::to_string(count) +
                                " deterministic distributions, above the limit of " +
                                std::to_string(limits.max_assignments) +
                                "; use the circle-inequality method instead");
}

std::uint64_t power_of_two(std::size_t k)
{
    if (k >= 64)
        return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << k;
}

}  // namespace

std::uint64_t deterministic_count(const Scenario& s)
{
    return power_of_two(parity_space(s).basis.size());
}

std::vector<OutcomeAssignment> deterministic_enumerate_parity(const ScenarioPtr& s, const Limits& limits)
{
    AffineSpace space = parity_space(*s);
    std::uint64_t count = power_of_two(space.basis.size());
    check_count(count, limits);
    std::vector<OutcomeAssignment> out;
    if (!space.consistent)
        return out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<std::uint8_t> bits = space.particular;
        for (std::size_t j = 0; j < space.basis.size(); ++j) {
            if ((k >> j) & 1u) {
                for (std::size_t e = 0; e < bits.size(); ++e)
                    bits[e] ^= space.basis[j][e];
            }
        }
        out.emplace_back(s, std::move(bits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OutcomeAssignment> deterministic_enumerate(const ScenarioPtr& s, const Limits& limits)
{
    const ConeStructure* cone = s->cone();
    if (!cone)
        return deterministic_enumerate_parity(s, limits);

    const Graph& g = cone->base;
    std::size_t nv = g.vertices().size();
    std::uint64_t count = power_of_two(nv);
    check_count(count, limits);

    std::vector<std::size_t> cone_idx;
    for (const auto& v : g.vertices())
        cone_idx.push_back(s->cone_edge_index(v));
    std::vector<OutcomeAssignment> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<std::uint8_t> bits(s->edge_count(), 0);
        std::vector<std::uint8_t> vbit(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            vbit[i] = (k >> (nv - 1 - i)) & 1u;
            bits[cone_idx[i]] = vbit[i];
        }
        for (const Edge& e : g.edges())
            bits[s->edge_index(e.id)] = vbit[g.vertex_index(e.d0)] ^ vbit[g.vertex_index(e.d1)];
        out.emplace_back(s, std::move(bits));
    }
    return out;
}

EdgeDistribution product(const EdgeDistribution& p, const EdgeDistribution& q)
{
    if (!same_scenario(p.scenario_ptr(), q.scenario_ptr()))
        throw InvalidInput("product of distributions on different scenarios");
    std::vector<Rational> v;
    v.reserve(p.values().size());
    for (std::size_t i = 0; i < p.values().size(); ++i)
        v.push_back(p[i] * q[i] + (1 - p[i]) * (1 - q[i]));
    return EdgeDistribution(p.scenario_ptr(), std::move(v));
}

TriangleEntries convolve(const TriangleEntries& p, const TriangleEntries& q)
{
    TriangleEntries out;
    for (int k = 0; k < 4; ++k) {
        out[k] = 0;
        for (int i = 0; i < 4; ++i)
            out[k] += p[i] * q[i ^ k];
    }
    return out;
}

EdgeDistribution act(const OutcomeAssignment& s, const EdgeDistribution& p)
{
    if (!same_scenario(s.scenario_ptr(), p.scenario_ptr()))
        throw InvalidInput("action of an assignment on a different scenario");
    std::vector<Rational> v = p.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (s[i])
            v[i] = 1 - v[i];
    }
    return EdgeDistribution(p.scenario_ptr(), std::move(v));
}

std::vector<EdgeDistribution> orbit(const EdgeDistribution& p, const Limits& limits)
{
    std::set<std::vector<Rational>> seen;
    std::vector<EdgeDistribution> out;
    for (const auto& s : deterministic_enumerate(p.scenario_ptr(), limits)) {
        EdgeDistribution q = act(s, p);
        if (seen.insert(q.values()).second)
            out.push_back(std::move(q));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

const ConeStructure& require_cone(const Scenario& s)
{
    const ConeStructure* c = s.cone();
    if (!c)
        throw InvalidInput("scenario is not the cone of a graph");
    return *c;
}

}  // namespace

EdgeDistribution p_pm_element(const ScenarioPtr& cone_scenario, const std::map<EdgeId, Sign>& signs)
{
    const ConeStructure& c = require_cone(*cone_scenario);
    for (const auto& [id, sign] : signs) {
        if (!c.base.has_edge(id))
            throw InvalidInput("sign given for unknown base edge \"" + id + "\"");
    }
    std::vector<Rational> v(cone_scenario->edge_count(), Rational(1, 2));
    for (const Edge& e : c.base.edges()) {
        auto it = signs.find(e.id);
        bool minus = it != signs.end() && it->second == Sign::minus;
        v[cone_scenario->edge_index(e.id)] = minus ? 0 : 1;
    }
    return EdgeDistribution(cone_scenario, std::move(v));
}

EdgeDistribution p_pm_element(const ScenarioPtr& cone_scenario, std::string_view pattern)
{
    const ConeStructure& c = require_cone(*cone_scenario);
    if (pattern.size() != c.base.edges().size())
        throw InvalidInput("sign pattern has " + std::to_string(pattern.size()) + " entries for " +
                           std::to_string(c.base.edges().size()) + " base edges");
    std::map<EdgeId, Sign> signs;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != '+' && pattern[i] != '-')
            throw InvalidInput("sign pattern entries must be '+' or '-'");
        signs[c.base.edges()[i].id] = pattern[i] == '-' ? Sign::minus : Sign::plus;
    }
    return p_pm_element(cone_scenario, signs);
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::contextual ? "contextual" : "noncontextual";
}

bool is_p_pm_element(const EdgeDistribution& p)
{
    const ConeStructure* c = p.scenario().cone();
    if (!c)
        return false;
    for (const Edge& e : c->base.edges()) {
        const Rational& v = p.value(e.id);
        if (v != 0 && v != 1)
            return false;
    }
    for (const VertexId& v : c->base.vertices()) {
        if (p[p.scenario().cone_edge_index(v)] != Rational(1, 2))
            return false;
    }
    return true;
}

Verdict g_pm_classify(const EdgeDistribution& p)
{
    if (!is_p_pm_element(p))
        throw InvalidInput("distribution is not of the form p+/p- on every cone triangle");
    const Graph& g = p.scenario().cone()->base;
    std::size_t nv = g.vertices().size();

    // adjacency: (neighbour, parity of the edge)
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(nv);
    for (const Edge& e : g.edges()) {
        int minus = p.value(e.id) == 0 ? 1 : 0;
        std::size_t a = g.vertex_index(e.d0);
        std::size_t b = g.vertex_index(e.d1);
        if (a == b) {
            if (minus)
                return Verdict::contextual;
            continue;
        }
        adj[a].push_back({b, minus});
        adj[b].push_back({a, minus});
    }
    std::vector<int> phi(nv, -1);
    for (std::size_t root = 0; root < nv; ++root) {
        if (phi[root] >= 0)
            continue;
        phi[root] = 0;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (auto [w, s] : adj[u]) {
                int want = phi[u] ^ s;
                if (phi[w] < 0) {
                    phi[w] = want;
                    queue.push_back(w);
                } else if (phi[w] != want) {
                    return Verdict::contextual;
                }
            }
        }
    }
    return Verdict::noncontextual;
}

EdgeDistribution restrict(const EdgeDistribution& p, const ScenarioPtr& sub)
{
    const Scenario& s = p.scenario();
    std::vector<Rational> v;
    for (const EdgeId& e : sub->edges()) {
        if (!s.has_edge(e))
            throw InvalidInput("edge \"" + e + "\" is not in the ambient scenario");
        v.push_back(p.value(e));
    }
    for (const Triangle& t : sub->triangles()) {
        auto idx = s.find_triangle(t.id);
        if (!idx || !(s.triangles()[*idx] == t))
            throw InvalidInput("triangle \"" + t.id + "\" is not a triangle of the ambient scenario");
    }
    return EdgeDistribution(sub, std::move(v));
}

}  // namespace ctxlab
