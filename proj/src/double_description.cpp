#include <algorithm>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "ctxlab/linalg.hpp"
#include "ctxlab/polytope.hpp"

namespace ctxlab {

namespace {

using IntVec = std::vector<Integer>;
using Bits = boost::dynamic_bitset<>;

struct Ray {
    IntVec v;
    Bits zero;  // processed rows on which the ray is tight
};

Integer dot(const IntVec& a, const IntVec& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    }
    return s;
}

void make_primitive(IntVec& v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = gcd(g, abs(x));
    if (g > 1) {
        for (auto& x : v)
            x /= g;
    }
}

// Homogenized rows (-b, a) for a.x >= b, with x0 >= 0 first. Every edge outside all triangles
// also gets its box rows.
std::vector<IntVec> homogenized_rows(const HRep& h)
{
    const Scenario& s = *h.scenario;
    std::size_t d = s.edge_count();
    std::vector<IntVec> rows;
    std::set<IntVec> seen;
    auto push = [&](IntVec r) {
        make_primitive(r);
        if (seen.insert(r).second)
            rows.push_back(std::move(r));
    };
    IntVec x0(d + 1, 0);
    x0[0] = 1;
    push(x0);
    for (const auto& row : h.rows) {
        IntVec r(d + 1, 0);
        std::vector<Rational> dense(d + 1, 0);
        dense[0] = -row.rhs;
        for (const auto& [edge, c] : row.coeffs)
            dense[1 + s.edge_index(edge)] = c;
        dense = primitive_integer_vector(std::move(dense));
        for (std::size_t i = 0; i <= d; ++i)
            r[i] = numerator(dense[i]);
        push(std::move(r));
    }
    std::vector<bool> covered(d, false);
    for (std::size_t t = 0; t < s.triangles().size(); ++t) {
        for (auto e : s.slots(t))
            covered[e] = true;
    }
    for (std::size_t e = 0; e < d; ++e) {
        if (covered[e])
            continue;
        IntVec lo(d + 1, 0), hi(d + 1, 0);
        lo[1 + e] = 1;
        hi[0] = 1;
        hi[1 + e] = -1;
        push(std::move(lo));
        push(std::move(hi));
    }
    return rows;
}

RationalMatrix to_rational(const std::vector<IntVec>& rows, const std::vector<std::size_t>& pick)
{
    RationalMatrix m;
    for (std::size_t i : pick) {
        std::vector<Rational> r;
        for (const auto& x : rows[i])
            r.emplace_back(x);
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<Ray> initial_rays(const std::vector<IntVec>& rows, std::vector<std::size_t>& chosen)
{
    std::size_t dim = rows.front().size();
    for (std::size_t i = 0; i < rows.size() && chosen.size() < dim; ++i) {
        chosen.push_back(i);
        if (rank(to_rational(rows, chosen)) < chosen.size())
            chosen.pop_back();
    }
    if (chosen.size() < dim)
        throw InvalidInput("polytope has no vertices: the constraint matrix is not of full rank");
    auto inv = inverse(to_rational(rows, chosen));
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Rational> col;
        for (std::size_t i = 0; i < dim; ++i)
            col.push_back((*inv)[i][j]);
        col = primitive_integer_vector(std::move(col));
        Ray r;
        for (const auto& x : col)
            r.v.push_back(numerator(x));
        r.zero.resize(rows.size());
        for (std::size_t i = 0; i < dim; ++i) {
            if (i != j)
                r.zero.set(chosen[i]);
        }
        rays.push_back(std::move(r));
    }
    return rays;
}

void add_row(std::vector<Ray>& rays, const std::vector<IntVec>& rows, std::size_t row_index)
{
    const IntVec& h = rows[row_index];
    std::size_t dim = h.size();
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        val[i] = dot(h, rays[i].v);
        if (val[i] > 0)
            pos.push_back(i);
        else if (val[i] < 0)
            neg.push_back(i);
    }
    std::vector<Ray> next;
    if (neg.empty()) {
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] == 0)
                rays[i].zero.set(row_index);
        }
        return;
    }
    for (std::size_t p : pos) {
        for (std::size_t n : neg) {
            Bits common = rays[p].zero & rays[n].zero;
            if (common.count() + 2 < dim)
                continue;
            bool adjacent = true;
            for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                if (k != p && k != n && common.is_subset_of(rays[k].zero))
                    adjacent = false;
            }
            if (!adjacent)
                continue;
            Ray r;
            r.v.resize(dim);
            Integer a = val[p];
            Integer b = -val[n];
            for (std::size_t i = 0; i < dim; ++i)
                r.v[i] = a * rays[n].v[i] + b * rays[p].v[i];
            make_primitive(r.v);
            r.zero = std::move(common);
            r.zero.set(row_index);
            next.push_back(std::move(r));
        }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (val[i] > 0) {
            next.push_back(std::move(rays[i]));
        } else if (val[i] == 0) {
            rays[i].zero.set(row_index);
            next.push_back(std::move(rays[i]));
        }
    }
    rays = std::move(next);
}

}  // namespace

VertexEnumeration enumerate_vertices(const ScenarioPtr& s, bool with_adjacency, const Limits& limits)
{
    if (s->edge_count() > limits.max_dd_edges)
        throw GuardrailExceeded("vertex enumeration is limited to " + std::to_string(limits.max_dd_edges) +
                                " edges; the scenario has " + std::to_string(s->edge_count()));
    HRep h = h_representation(s);
    std::vector<IntVec> rows = homogenized_rows(h);
    std::vector<std::size_t> chosen;
    std::vector<Ray> rays = initial_rays(rows, chosen);
    std::vector<bool> done(rows.size(), false);
    for (auto i : chosen)
        done[i] = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!done[i])
            add_row(rays, rows, i);
    }

    VertexEnumeration out;
    for (const auto& r : rays) {
        if (r.v[0] == 0)
            throw InvalidInput("polytope is unbounded");
        std::vector<Rational> x;
        for (std::size_t i = 1; i < r.v.size(); ++i)
            x.emplace_back(r.v[i], r.v[0]);
        out.vertices.emplace_back(s, std::move(x));
    }
    std::sort(out.vertices.begin(), out.vertices.end());

    if (with_adjacency) {
        std::size_t d = s->edge_count();
        std::vector<Bits> tight;
        for (const auto& v : out.vertices) {
            IntVec hv(d + 1);
            Integer den = 1;
            for (const auto& x : v.values())
                den = lcm(den, denominator(x));
            hv[0] = den;
            for (std::size_t i = 0; i < d; ++i)
                hv[i + 1] = numerator(v[i] * den);
            Bits b(rows.size());
            for (std::size_t i = 1; i < rows.size(); ++i) {
                if (dot(rows[i], hv) == 0)
                    b.set(i);
            }
            tight.push_back(std::move(b));
        }
        for (std::size_t i = 0; i < out.vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < out.vertices.size(); ++j) {
                Bits common = tight[i] & tight[j];
                if (common.count() + 1 < d)
                    continue;
                IntegerMatrix m;
                for (auto k = common.find_first(); k != Bits::npos; k = common.find_next(k))
                    m.emplace_back(rows[k].begin() + 1, rows[k].end());
                if (rank(std::move(m)) == d - 1)
                    out.adjacency.emplace_back(i, j);
            }
        }
    }
    return out;
}

}  // namespace ctxlab
