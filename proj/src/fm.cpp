#include "ctxlab/fm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ctxlab/polytope.hpp"
#include "ctxlab/simplex.hpp"

namespace ctxlab {

std::string_view to_string(Mode m)
{
    return m == Mode::expectation ? "expectation" : "probability";
}

Mode parse_mode(std::string_view text)
{
    if (text == "expectation")
        return Mode::expectation;
    if (text == "probability")
        return Mode::probability;
    throw InvalidInput("unknown coordinate mode \"" + std::string(text) + "\"");
}

std::pair<Rational, Rational> box(Mode m)
{
    if (m == Mode::expectation)
        return {Rational(-1), Rational(1)};
    return {Rational(0), Rational(1)};
}

InequalitySystem circle_inequalities(std::span<const EdgeId> edges)
{
    std::size_t n = edges.size();
    if (n == 0)
        throw InvalidInput("a circle needs at least one edge");
    if (n > 30)
        throw GuardrailExceeded("circle of length " + std::to_string(n) + " has too many inequalities");
    if (std::set<EdgeId>(edges.begin(), edges.end()).size() != n)
        throw InvalidInput("circle edges must be distinct");
    InequalitySystem sys;
    sys.mode = Mode::expectation;
    sys.variables.assign(edges.begin(), edges.end());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i)
            ones += mask >> i & 1u;
        if ((ones + n + 1) % 2 != 0)
            continue;
        LinearInequality row;
        for (std::size_t i = 0; i < n; ++i)
            row.add(edges[i], mask >> i & 1u ? -1 : 1);
        row.rhs = 2 - static_cast<int>(n);
        row.label = "circle";
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

LinearInequality convert(const LinearInequality& row, Mode from, Mode to)
{
    if (from == to)
        return normalize(row);
    LinearInequality out;
    out.label = row.label;
    if (from == Mode::expectation) {
        // tbar = 2 p - 1
        out.rhs = row.rhs;
        for (const auto& [e, c] : row.coeffs) {
            out.add(e, 2 * c);
            out.rhs += c;
        }
    } else {
        // p = (tbar + 1) / 2
        out.rhs = row.rhs;
        for (const auto& [e, c] : row.coeffs) {
            out.add(e, c / 2);
            out.rhs -= c / 2;
        }
    }
    return normalize(std::move(out));
}

InequalitySystem convert(const InequalitySystem& sys, Mode to)
{
    InequalitySystem out{to, sys.variables, {}};
    for (const auto& r : sys.rows)
        out.rows.push_back(convert(r, sys.mode, to));
    return out;
}

bool is_box_trivial(const LinearInequality& row, Mode mode)
{
    auto [lo, hi] = box(mode);
    Rational min = 0;
    for (const auto& [e, c] : row.coeffs)
        min += c * (c > 0 ? lo : hi);
    return min >= row.rhs;
}

namespace {

void check_variables(const InequalitySystem& sys, const LinearInequality& row)
{
    for (const auto& [e, c] : row.coeffs) {
        if (std::find(sys.variables.begin(), sys.variables.end(), e) == sys.variables.end())
            throw InvalidInput("row uses \"" + e + "\" which is not a variable of the system");
    }
}

// Is rows[skip] implied by the other kept rows and the box?
bool implied(const InequalitySystem& sys, const std::vector<LinearInequality>& rows, const std::vector<bool>& kept,
             std::size_t skip)
{
    std::size_t n = sys.variables.size();
    auto index = [&](const EdgeId& e) {
        return static_cast<std::size_t>(std::find(sys.variables.begin(), sys.variables.end(), e) -
                                        sys.variables.begin());
    };
    RationalMatrix a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == skip || !kept[i])
            continue;
        std::vector<Rational> r(n, 0);
        for (const auto& [e, c] : rows[i].coeffs)
            r[index(e)] = c;
        a.push_back(std::move(r));
        b.push_back(rows[i].rhs);
    }
    std::vector<Rational> c(n, 0);
    for (const auto& [e, v] : rows[skip].coeffs)
        c[index(e)] = v;
    auto [lo, hi] = box(sys.mode);
    LpResult res = minimize(c, a, b, std::vector<Rational>(n, lo), std::vector<Rational>(n, hi));
    return res.feasible && res.value >= rows[skip].rhs;
}

}  // namespace

InequalitySystem prune(const InequalitySystem& sys, PruneOptions options)
{
    InequalitySystem out{sys.mode, sys.variables, {}};
    std::set<LinearInequality> seen;
    for (const auto& r : sys.rows) {
        check_variables(sys, r);
        LinearInequality n = normalize(r);
        if (is_box_trivial(n, sys.mode))
            continue;
        if (seen.insert(n).second)
            out.rows.push_back(std::move(n));
    }
    std::sort(out.rows.begin(), out.rows.end());
    if (options.lp_redundancy && !out.rows.empty()) {
        std::vector<bool> kept(out.rows.size(), true);
        for (std::size_t i = 0; i < out.rows.size(); ++i) {
            if (implied(out, out.rows, kept, i))
                kept[i] = false;
        }
        std::vector<LinearInequality> rows;
        for (std::size_t i = 0; i < out.rows.size(); ++i) {
            if (kept[i])
                rows.push_back(std::move(out.rows[i]));
        }
        out.rows = std::move(rows);
    }
    return out;
}

InequalitySystem eliminate_variable(const InequalitySystem& sys, const EdgeId& v, EliminationStep* trace,
                                    PruneOptions options)
{
    auto it = std::find(sys.variables.begin(), sys.variables.end(), v);
    if (it == sys.variables.end())
        throw InvalidInput("\"" + v + "\" is not a variable of the system");

    InequalitySystem out{sys.mode, {}, {}};
    for (const auto& x : sys.variables) {
        if (x != v)
            out.variables.push_back(x);
    }
    EliminationStep step;
    step.variable = v;
    std::vector<LinearInequality> pos, neg;
    for (const auto& r : sys.rows) {
        check_variables(sys, r);
        Rational c = r.coefficient(v);
        if (c > 0) {
            pos.push_back(r);
            step.lower.push_back(r);
        } else if (c < 0) {
            neg.push_back(r);
            step.upper.push_back(r);
        } else {
            out.rows.push_back(r);
        }
    }
    auto [lo, hi] = box(sys.mode);
    LinearInequality lower_box, upper_box;
    lower_box.add(v, 1);
    lower_box.rhs = lo;
    upper_box.add(v, -1);
    upper_box.rhs = -hi;
    pos.push_back(lower_box);
    neg.push_back(upper_box);

    for (const auto& p : pos) {
        Rational cp = p.coefficient(v);
        for (const auto& n : neg) {
            Rational cn = -n.coefficient(v);
            LinearInequality r;
            for (const auto& [e, c] : p.coeffs)
                r.add(e, cn * c);
            for (const auto& [e, c] : n.coeffs)
                r.add(e, cp * c);
            r.rhs = cn * p.rhs + cp * n.rhs;
            r.label = "fm";
            out.rows.push_back(std::move(r));
        }
    }
    if (trace)
        *trace = std::move(step);
    return prune(out, options);
}

namespace {

Rational rest_of_row(const LinearInequality& row, const EdgeId& v, const std::map<EdgeId, Rational>& values)
{
    Rational rest = 0;
    for (const auto& [e, c] : row.coeffs) {
        if (e == v)
            continue;
        auto it = values.find(e);
        if (it == values.end())
            throw InvalidInput("back-substitution needs a value for \"" + e + "\"");
        rest += c * it->second;
    }
    return rest;
}

}  // namespace

std::optional<Rational> back_substitute(const EliminationStep& step, Mode mode, const std::map<EdgeId, Rational>& values)
{
    auto [lo, hi] = box(mode);
    for (const auto& r : step.lower)
        lo = std::max(lo, Rational((r.rhs - rest_of_row(r, step.variable, values)) / r.coefficient(step.variable)));
    for (const auto& r : step.upper)
        hi = std::min(hi, Rational((r.rhs - rest_of_row(r, step.variable, values)) / r.coefficient(step.variable)));
    if (lo > hi)
        return std::nullopt;
    return (lo + hi) / 2;
}

bool satisfies(const InequalitySystem& sys, const std::map<EdgeId, Rational>& x)
{
    auto [lo, hi] = box(sys.mode);
    for (const auto& v : sys.variables) {
        auto it = x.find(v);
        if (it == x.end())
            throw InvalidInput("no value for variable \"" + v + "\"");
        if (it->second < lo || it->second > hi)
            return false;
    }
    for (const auto& r : sys.rows) {
        Rational lhs = 0;
        for (const auto& [e, c] : r.coeffs)
            lhs += c * x.at(e);
        if (lhs < r.rhs)
            return false;
    }
    return true;
}

InequalitySystem triangle_system(const Scenario& s)
{
    HRep h = h_representation(share(s));
    InequalitySystem sys{Mode::probability, s.edges(), std::move(h.rows)};
    return prune(sys);
}

namespace {

ExtensionResult extend(const Scenario& scenario, const std::vector<EdgeId>& boundary,
                       const std::vector<EdgeId>& order, const EdgeDistribution& boundary_values)
{
    ExtensionResult res;
    std::map<EdgeId, Rational> values;
    for (const auto& e : boundary) {
        if (!boundary_values.scenario().has_edge(e))
            throw InvalidInput("boundary values are missing edge \"" + e + "\"");
        values[e] = boundary_values.value(e);
    }

    InequalitySystem sys = triangle_system(scenario);
    for (const auto& v : order) {
        EliminationStep step;
        sys = eliminate_variable(sys, v, &step);
        res.trace.push_back(std::move(step));
    }
    for (const auto& r : sys.rows) {
        Rational lhs = 0;
        for (const auto& [e, c] : r.coeffs)
            lhs += c * values.at(e);
        if (lhs < r.rhs) {
            res.violated = r;
            return res;
        }
    }
    for (auto it = res.trace.rbegin(); it != res.trace.rend(); ++it) {
        auto v = back_substitute(*it, Mode::probability, values);
        if (!v)
            throw std::logic_error("back-substitution found an empty interval for \"" + it->variable + "\"");
        values[it->variable] = *v;
    }
    std::vector<Rational> full;
    for (const auto& e : scenario.edges())
        full.push_back(values.at(e));
    EdgeDistribution witness(share(scenario), std::move(full));
    if (!validate(witness).empty())
        throw std::logic_error("extension witness failed validation");
    res.extends = true;
    res.witness = std::move(witness);
    return res;
}

}  // namespace

ExtensionResult extend_from_boundary(const ClassicalDisk& disk, const EdgeDistribution& boundary_values)
{
    return extend(disk.scenario, disk.boundary, disk.elimination_order, boundary_values);
}

ExtensionResult extend_from_boundary(const DiskBouquet& bouquet, const EdgeDistribution& boundary_values)
{
    return extend(bouquet.scenario, bouquet.boundary, bouquet.elimination_order, boundary_values);
}

std::vector<std::vector<EdgeId>> composite_circles(const DiskBouquet& bouquet)
{
    if (bouquet.disk_boundaries.size() < 2)
        throw InvalidInput("a bouquet needs at least two disks");
    for (const auto& b : bouquet.disk_boundaries) {
        if (b.empty() || b.front() != bouquet.shared)
            throw InvalidInput("every disk boundary must start with the shared edge");
        if (std::count(b.begin(), b.end(), bouquet.shared) != 1)
            throw InvalidInput("the shared edge must appear once in each disk boundary");
    }
    std::vector<std::vector<EdgeId>> out;
    const auto& d = bouquet.disk_boundaries;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            std::vector<EdgeId> c(d[i].begin() + 1, d[i].end());
            c.insert(c.end(), d[j].begin() + 1, d[j].end());
            out.push_back(std::move(c));
        }
    }
    return out;
}

BouquetCheck check_extension_bouquet(const DiskBouquet& bouquet, const EdgeDistribution& boundary_values)
{
    BouquetCheck res;
    auto circles = composite_circles(bouquet);
    std::size_t k = 0;
    const auto& d = bouquet.disk_boundaries;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j, ++k) {
            for (const auto& e : circles[k]) {
                if (!boundary_values.scenario().has_edge(e))
                    throw InvalidInput("boundary values are missing edge \"" + e + "\"");
            }
            auto [value, row] = tightest_circle_row(boundary_values, circles[k]);
            if (value < 0) {
                res.extends = false;
                res.violated_pairs.emplace_back(i, j);
                res.violated_rows.push_back(std::move(row));
            }
        }
    }
    return res;
}

bool is_circle_or_flower(const Graph& g)
{
    if (g.edges().empty() || components(g).size() != 1)
        return false;
    auto deg = g.degrees();
    std::vector<std::size_t> hubs;
    for (std::size_t v = 0; v < deg.size(); ++v) {
        if (deg[v] != 2)
            hubs.push_back(v);
    }
    if (hubs.empty())
        return true;
    if (hubs.size() != 2 || deg[hubs[0]] != deg[hubs[1]] || deg[hubs[0]] < 3)
        return false;

    std::size_t nv = deg.size();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);  // (edge, neighbour)
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const Edge& ed = g.edges()[e];
        if (ed.is_loop())
            return false;
        std::size_t a = g.vertex_index(ed.d0), b = g.vertex_index(ed.d1);
        adj[a].push_back({e, b});
        adj[b].push_back({e, a});
    }
    std::size_t v = hubs[0], w = hubs[1];
    for (auto [e0, next] : adj[v]) {
        std::size_t prev_edge = e0;
        std::size_t cur = next;
        std::size_t steps = 0;
        while (cur != v && cur != w) {
            if (++steps > nv)
                return false;
            auto& nb = adj[cur];
            auto step = nb[0].first == prev_edge ? nb[1] : nb[0];
            prev_edge = step.first;
            cur = step.second;
        }
        if (cur != w)
            return false;
    }
    return true;
}

FineVerdict fine_check_flower(const EdgeDistribution& p)
{
    const ConeStructure* cone = p.scenario().cone();
    if (!cone || !is_circle_or_flower(cone->base))
        throw InvalidInput("the circle-inequality check needs the cone of a circle or flower graph; use the LP method");
    require_valid(p);
    FineVerdict out;
    for (const auto& c : enumerate_circles(cone->base)) {
        auto [value, row] = tightest_circle_row(p, c.edges);
        if (value < 0) {
            out.verdict = Verdict::contextual;
            out.circle = c;
            out.violated = std::move(row);
            return out;
        }
    }
    return out;
}

}  // namespace ctxlab
