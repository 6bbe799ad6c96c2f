#include "ctxlab/collapse_bell.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ctxlab/polytope.hpp"

namespace ctxlab {

ConePushforward cone_pushforward(const CollapseMap& cm)
{
    ConePushforward f;
    f.map = cm;
    f.source = share(cone(cm.source));
    f.target = share(cone(cm.target));
    const VertexId& apex_s = f.source->cone()->apex;
    const VertexId& apex_t = f.target->cone()->apex;
    std::map<EdgeId, std::optional<EdgeId>> image;
    for (std::size_t e = 0; e < cm.source.edges().size(); ++e)
        image[cm.source.edges()[e].id] = cm.edge_map[e];
    for (std::size_t v = 0; v < cm.source.vertices().size(); ++v)
        image[cone_edge_id(apex_s, cm.source.vertices()[v])] = cone_edge_id(apex_t, cm.vertex_map[v]);
    for (const auto& e : f.source->edges())
        f.image.push_back(image.at(e));
    return f;
}

EdgeDistribution pushforward_distribution(const ConePushforward& f, const EdgeDistribution& p)
{
    if (!(p.scenario() == *f.target))
        throw InvalidInput("distribution does not live on the cone of the collapse target");
    require_valid(p);
    std::vector<Rational> v;
    for (const auto& img : f.image)
        v.push_back(img ? p.value(*img) : Rational(1));
    return EdgeDistribution(f.source, std::move(v));
}

EdgeDistribution pushforward_distribution(const CollapseMap& cm, const EdgeDistribution& p)
{
    return pushforward_distribution(cone_pushforward(cm), p);
}

LinearInequality pushforward_inequality(const ConePushforward& f, const LinearInequality& row)
{
    LinearInequality out;
    out.rhs = row.rhs;
    out.label = row.label;
    for (const auto& [e, c] : row.coeffs) {
        if (!f.source->has_edge(e))
            throw InvalidInput("row uses \"" + e + "\" which is not an edge of the source cone");
        const auto& img = f.image[f.source->edge_index(e)];
        if (img)
            out.add(*img, c);
        else
            out.rhs -= c;
    }
    return normalize(std::move(out));
}

LinearInequality pushforward_inequality(const CollapseMap& cm, const LinearInequality& row)
{
    return pushforward_inequality(cone_pushforward(cm), row);
}

std::uint64_t contextual_vertex_count(const Graph& g)
{
    if (components(g).size() != 1)
        throw InvalidInput("vertex generation needs a connected graph");
    int n = cycle_rank(g);
    std::size_t v = g.vertices().size();
    if (static_cast<std::size_t>(n) + v - 1 > 62)
        throw GuardrailExceeded("contextual vertex count exceeds 2^62");
    return ((std::uint64_t{1} << n) - 1) << (v - 1);
}

std::vector<EdgeDistribution> generate_contextual_vertices(const Graph& g, const Limits& limits)
{
    std::uint64_t expected = contextual_vertex_count(g);
    if (expected > limits.max_generated)
        throw GuardrailExceeded("vertex generation would produce " + std::to_string(expected) +
                                " distributions (limit " + std::to_string(limits.max_generated) + ")");
    if (expected == 0)
        return {};

    std::vector<EdgeId> tree = spanning_tree(g);
    ConePushforward f = cone_pushforward(collapse(g, tree));
    std::size_t n = f.map.target.edges().size();

    std::set<EdgeDistribution> found;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::string pattern;
        for (std::size_t i = 0; i < n; ++i)
            pattern += mask >> i & 1u ? '-' : '+';
        EdgeDistribution q = pushforward_distribution(f, p_pm_element(f.target, pattern));
        for (auto& o : orbit(q, limits))
            found.insert(std::move(o));
    }

    HRep h = h_representation(f.source);
    for (const auto& v : found) {
        if (!is_vertex(h, v) || !most_violated_circle_row(v))
            throw std::logic_error("generated distribution is not a contextual vertex");
    }
    if (found.size() != expected)
        throw std::logic_error("generated " + std::to_string(found.size()) + " contextual vertices, expected " +
                               std::to_string(expected));
    return {found.begin(), found.end()};
}

EdgeDistribution pr_box(int n, std::string_view pattern)
{
    if (n < 1)
        throw InvalidInput("PR box needs a circle of length at least 1");
    if (pattern.size() != static_cast<std::size_t>(n))
        throw InvalidInput("PR box pattern needs " + std::to_string(n) + " signs");
    if (std::count(pattern.begin(), pattern.end(), '-') % 2 == 0)
        throw InvalidInput("PR box pattern needs an odd number of '-'");
    return p_pm_element(share(cone(circle(n))), pattern);
}

bool is_pr_box(const EdgeDistribution& p)
{
    const ConeStructure* c = p.scenario().cone();
    if (!c || c->base.edges().empty() || components(c->base).size() != 1)
        return false;
    for (std::size_t d : c->base.degrees()) {
        if (d != 2)
            return false;
    }
    if (!is_p_pm_element(p))
        return false;
    std::size_t minus = 0;
    for (const Edge& e : c->base.edges())
        minus += p.value(e.id) == 0;
    return minus % 2 == 1;
}

LinearInequality act(const OutcomeAssignment& s, const LinearInequality& row)
{
    LinearInequality out;
    out.rhs = row.rhs;
    out.label = row.label;
    for (const auto& [e, c] : row.coeffs) {
        if (!s.scenario().has_edge(e))
            throw InvalidInput("row uses \"" + e + "\" which is not an edge of the scenario");
        if (s[s.scenario().edge_index(e)]) {
            out.add(e, -c);
            out.rhs -= c;
        } else {
            out.add(e, c);
        }
    }
    return normalize(std::move(out));
}

std::vector<LinearInequality> inequality_orbit(const ScenarioPtr& s, const LinearInequality& row, const Limits& limits)
{
    std::set<LinearInequality> out;
    for (const auto& a : deterministic_enumerate(s, limits))
        out.insert(act(a, row));
    return {out.begin(), out.end()};
}

bool loop_support_check(const LinearInequality& row, const Graph& g)
{
    std::vector<Edge> edges;
    std::set<VertexId> touched;
    for (const Edge& e : g.edges()) {
        if (row.coefficient(e.id) != 0) {
            edges.push_back(e);
            touched.insert(e.d0);
            touched.insert(e.d1);
        }
    }
    if (edges.empty())
        return false;
    std::vector<VertexId> vertices;
    for (const auto& v : g.vertices()) {
        if (touched.contains(v))
            vertices.push_back(v);
    }
    Graph sub(std::move(vertices), std::move(edges));
    for (std::size_t d : sub.degrees()) {
        if (d % 2 != 0)
            return false;
    }
    return components(sub).size() == 1;
}

}  // namespace ctxlab
