#include <catch_amalgamated.hpp>

#include <bit>
#include <set>

#include "ctxlab/collapse_bell.hpp"
#include "ctxlab/fm.hpp"
#include "ctxlab/polytope.hpp"
#include "support.hpp"

using namespace ctxlab;
using testsupport::random_mixture;
using testsupport::uniform_int;

namespace {

LinearInequality row(std::map<EdgeId, Rational> coeffs, Rational rhs)
{
    LinearInequality r;
    for (const auto& [e, c] : coeffs)
        r.add(e, c);
    r.rhs = rhs;
    return r;
}

// Circle rows from the sign-vector definition, probability coordinates.
std::set<LinearInequality> circle_oracle(const std::vector<EdgeId>& edges)
{
    std::size_t n = edges.size();
    std::set<LinearInequality> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int minus = 0;
        LinearInequality r;
        r.rhs = 2 - static_cast<int>(n);
        for (std::size_t i = 0; i < n; ++i) {
            int s = mask >> i & 1u ? -1 : 1;
            minus += s < 0;
            r.add(edges[i], 2 * s);
            r.rhs += s;
        }
        if ((minus + static_cast<int>(n) + 1) % 2 == 0)
            out.insert(normalize(r));
    }
    return out;
}

std::vector<EdgeId> one(const EdgeId& e)
{
    return {e};
}

LinearInequality froissart_v2w1()
{
    std::map<EdgeId, Rational> c{{"t02", 1},     {"t10", 1},     {"t00", -1},    {"t01", -1},
                                 {"t22", -1},    {"t21", -1},    {"t20", -1},    {"t11", -1},
                                 {"(c,v0)", -1}, {"(c,w0)", -1}, {"(c,v2)", -1}, {"(c,w1)", -1}};
    return row(c, -6);
}

// Random points of cone(target): mixtures of G+- elements and deterministic points.
EdgeDistribution random_target_point(const std::vector<EdgeDistribution>& pool)
{
    int kind = uniform_int(0, 3);
    if (kind == 0)
        return pool[static_cast<std::size_t>(uniform_int(0, static_cast<int>(pool.size()) - 1))];
    return random_mixture(pool, static_cast<std::size_t>(uniform_int(1, 3)));
}

std::vector<EdgeDistribution> g_pm_pool(const ScenarioPtr& s)
{
    std::vector<EdgeDistribution> pool = testsupport::deterministic_points(s);
    std::size_t n = s->cone()->base.edges().size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::string pattern;
        for (std::size_t i = 0; i < n; ++i)
            pattern += mask >> i & 1u ? '-' : '+';
        pool.push_back(p_pm_element(s, pattern));
    }
    return pool;
}

void check_collapsing(const CollapseMap& cm, const std::vector<EdgeDistribution>& pool, int samples)
{
    ConePushforward f = cone_pushforward(cm);
    HRep hs = h_representation(f.source);
    HRep ht = h_representation(f.target);
    std::set<EdgeDistribution> inputs, outputs;
    for (int i = 0; i < samples; ++i) {
        EdgeDistribution p = random_target_point(pool);
        EdgeDistribution q = pushforward_distribution(f, p);
        CHECK(validate(q).empty());
        CHECK(is_noncontextual_lp(p).verdict == is_noncontextual_lp(q).verdict);
        CHECK(is_strongly_contextual(p) == is_strongly_contextual(q));
        CHECK(is_vertex(ht, p) == is_vertex(hs, q));
        CHECK(p.is_deterministic() == q.is_deterministic());
        inputs.insert(p);
        outputs.insert(q);
    }
    CHECK(inputs.size() == outputs.size());
}

}  // namespace

TEST_CASE("cone pushforward correspondence", "[collapse]")
{
    CollapseMap cm = collapse(circle(4), one("t4"));
    ConePushforward f = cone_pushforward(cm);
    const auto& edges = f.source->edges();
    REQUIRE(f.image.size() == edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] == "t4")
            CHECK_FALSE(f.image[i]);
        else
            REQUIRE(f.image[i]);
    }
    CHECK(*f.image[f.source->edge_index("(c,v4)")] == "(c,v1)");
    CHECK(*f.image[f.source->edge_index("(c,v1)")] == "(c,v1)");
    CHECK(*f.image[f.source->edge_index("t2")] == "t2");

    // collapsed triangle carries p^00 = p_(c,v), p^10 = 1 - p_(c,v)
    auto pool = testsupport::deterministic_points(f.target);
    for (int i = 0; i < 30; ++i) {
        auto p = random_mixture(pool, 3);
        auto q = pushforward_distribution(f, p);
        auto t = triangle_entries(q, *f.source->find_triangle("(c,t4)"));
        Rational v = p.value("(c,v1)");
        CHECK(t[0] == v);
        CHECK(t[1] == 0);
        CHECK(t[2] == 1 - v);
        CHECK(t[3] == 0);
    }
}

TEST_CASE("pushforward of p- through a full collapse is a PR box", "[collapse]")
{
    for (int n = 1; n <= 6; ++n) {
        std::vector<EdgeId> tree;
        for (int i = 1; i < n; ++i)
            tree.push_back("t" + std::to_string(i));
        CollapseMap cm = collapse(circle(n), tree);
        auto target = share(cone(cm.target));
        auto q = pushforward_distribution(cm, p_pm_element(target, "-"));
        std::string pattern(static_cast<std::size_t>(n - 1), '+');
        pattern += '-';
        CHECK(q == pr_box(n, pattern));
        CHECK(is_pr_box(q));
    }
}

TEST_CASE("identity collapse and deterministic points", "[collapse]")
{
    std::vector<int> f222{2, 2, 2};
    Graph g = flower(f222);
    std::vector<EdgeId> none;
    CollapseMap id = collapse(g, none);
    auto s = share(cone(g));
    for (const auto& d : testsupport::deterministic_points(s))
        CHECK(pushforward_distribution(id, d) == d);

    CollapseMap cm = collapse(complete_bipartite(3, 3), one("t22"));
    auto t = share(cone(cm.target));
    for (const auto& d : testsupport::deterministic_points(t))
        CHECK(pushforward_distribution(cm, d).is_deterministic());

    auto wrong = EdgeDistribution::constant(share(cone(circle(3))), Rational(1, 2));
    CHECK_THROWS_AS(pushforward_distribution(cm, wrong), InvalidInput);
}

TEST_CASE("collapsing preserves contextuality, support, vertices and determinism", "[collapse]")
{
    CollapseMap c43 = collapse(circle(4), one("t4"));
    auto t3 = share(cone(c43.target));
    check_collapsing(c43, enumerate_vertices(t3).vertices, 60);

    CollapseMap k33 = collapse(complete_bipartite(3, 3), one("t22"));
    auto tk = share(cone(k33.target));
    check_collapsing(k33, g_pm_pool(tk), 60);
}

TEST_CASE("circle rows push forward to circle rows", "[collapse]")
{
    CollapseMap cm = collapse(circle(4), one("t4"));
    std::set<LinearInequality> images;
    for (const auto& r : circle_oracle({"t1", "t2", "t3", "t4"})) {
        auto img = pushforward_inequality(cm, r);
        if (!is_box_trivial(img, Mode::probability))
            images.insert(img);
    }
    CHECK(images == circle_oracle({"t1", "t2", "t3"}));
}

TEST_CASE("Froissart row through the t22 collapse", "[collapse]")
{
    CollapseMap cm = collapse(complete_bipartite(3, 3), one("t22"));
    std::map<EdgeId, Rational> c{{"t02", 1},     {"t10", 1},     {"t00", -1},    {"t01", -1},
                                 {"t21", -1},    {"t20", -1},    {"t11", -1},    {"(c,v0)", -1},
                                 {"(c,w0)", -1}, {"(c,v2)", -1}, {"(c,w1)", -1}};
    LinearInequality expected = row(c, -5);
    LinearInequality img = pushforward_inequality(cm, froissart_v2w1());
    CHECK(img == expected);
    CHECK(img.coeffs == expected.coeffs);
    CHECK(img.rhs == -5);

    CHECK_THROWS_AS(pushforward_inequality(cm, row({{"nope", 1}}, 0)), InvalidInput);
}

TEST_CASE("pushforward of rows commutes with evaluation", "[collapse]")
{
    CollapseMap cm = collapse(complete_bipartite(3, 3), one("t22"));
    ConePushforward f = cone_pushforward(cm);
    auto pool = g_pm_pool(f.target);
    for (int i = 0; i < 100; ++i) {
        LinearInequality r;
        for (const auto& e : f.source->edges()) {
            if (uniform_int(0, 2) == 0)
                r.add(e, uniform_int(-3, 3));
        }
        r.rhs = uniform_int(-5, 2);
        auto p = random_mixture(pool, 2);
        auto q = pushforward_distribution(f, p);
        auto img = pushforward_inequality(f, r);
        CHECK(r.satisfied_by(q) == img.satisfied_by(p));
        CHECK((r.slack(q) == 0) == (img.slack(p) == 0));
    }
    LinearInequality untouched = row({{"t00", 1}, {"t11", -1}, {"(c,v0)", 2}}, -1);
    CHECK(pushforward_inequality(f, untouched) == untouched);
}

TEST_CASE("PR boxes", "[collapse]")
{
    auto p = pr_box(4, "+++-");
    CHECK(is_pr_box(p));
    CHECK(p.value("t4") == 0);
    CHECK(p.value("t1") == 1);
    CHECK(p.value("(c,v1)") == Rational(1, 2));
    CHECK(is_noncontextual_lp(p).verdict == Verdict::contextual);
    for (int n = 1; n <= 6; ++n) {
        int accepted = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::string pattern;
            for (int i = 0; i < n; ++i)
                pattern += mask >> i & 1u ? '-' : '+';
            if (std::popcount(mask) % 2 == 1) {
                CHECK(is_pr_box(pr_box(n, pattern)));
                ++accepted;
            } else {
                CHECK_THROWS_AS(pr_box(n, pattern), InvalidInput);
                CHECK_FALSE(is_pr_box(p_pm_element(share(cone(circle(n))), pattern)));
            }
        }
        CHECK(accepted == 1 << (n - 1));
    }
    auto c1 = share(cone(circle(1)));
    auto verts = enumerate_vertices(c1).vertices;
    std::vector<EdgeDistribution> contextual;
    for (const auto& v : verts) {
        if (!v.is_deterministic())
            contextual.push_back(v);
    }
    REQUIRE(contextual.size() == 1);
    CHECK(contextual[0] == pr_box(1, "-"));
    CHECK_THROWS_AS(pr_box(4, "++--"), InvalidInput);
    CHECK_THROWS_AS(pr_box(4, "+-"), InvalidInput);
    CHECK_FALSE(is_pr_box(EdgeDistribution::constant(share(cone(circle(4))), Rational(1, 2))));
    std::vector<int> f222{2, 2, 2};
    CHECK_FALSE(is_pr_box(p_pm_element(share(cone(flower(f222))), "-+++++")));
}

TEST_CASE("contextual vertex generation", "[collapse]")
{
    auto c4 = generate_contextual_vertices(circle(4));
    CHECK(c4.size() == 8);
    for (const auto& v : c4)
        CHECK(is_pr_box(v));
    CHECK(generate_contextual_vertices(wedge_circles(2)).size() == 3);
    CHECK(generate_contextual_vertices(circle(1)).size() == 1);
    CHECK(generate_contextual_vertices(line(3)).empty());
    CHECK(contextual_vertex_count(complete_bipartite(3, 3)) == 480);

    // DD census: contextual vertices of small cones are exactly the generated ones
    std::vector<int> f22{2, 2};
    for (const Graph& g : {circle(3), circle(4), wedge_circles(3), flower(f22)}) {
        auto s = share(cone(g));
        std::set<EdgeDistribution> dd;
        for (const auto& v : enumerate_vertices(s).vertices) {
            if (!v.is_deterministic())
                dd.insert(v);
        }
        auto gen = generate_contextual_vertices(g);
        CHECK(std::set<EdgeDistribution>(gen.begin(), gen.end()) == dd);
    }

    Limits tight;
    tight.max_generated = 100;
    CHECK_THROWS_AS(generate_contextual_vertices(complete_bipartite(3, 3), tight), GuardrailExceeded);
    Graph split({"a", "b", "c", "d"}, {{"e1", "a", "b"}, {"e2", "c", "d"}});
    CHECK_THROWS_AS(generate_contextual_vertices(split), InvalidInput);
}

TEST_CASE("generated vertices on K33 are the contextual part of G+-", "[collapse]")
{
    Graph g = complete_bipartite(3, 3);
    auto gen = generate_contextual_vertices(g);
    REQUIRE(gen.size() == 480);
    auto s = gen.front().scenario_ptr();
    std::set<EdgeDistribution> contextual;
    int classical = 0;
    for (unsigned mask = 0; mask < (1u << 9); ++mask) {
        std::string pattern;
        for (int i = 0; i < 9; ++i)
            pattern += mask >> i & 1u ? '-' : '+';
        auto p = p_pm_element(s, pattern);
        if (g_pm_classify(p) == Verdict::contextual)
            contextual.insert(p);
        else
            ++classical;
    }
    CHECK(classical == 32);
    CHECK(std::set<EdgeDistribution>(gen.begin(), gen.end()) == contextual);
    for (int i = 0; i < 10; ++i) {
        const auto& v = gen[static_cast<std::size_t>(uniform_int(0, 479))];
        auto cert = is_noncontextual_lp(v);
        CHECK(cert.verdict == Verdict::contextual);
        REQUIRE(cert.separating);
        CHECK(verify_separation(v, *cert.separating));
    }
}

TEST_CASE("action on rows and the CHSH orbit", "[collapse]")
{
    auto s = share(cone(circle(4)));
    LinearInequality sample = row({{"t1", -1}, {"t2", -1}, {"t3", -1}, {"t4", 1}}, -2);
    std::optional<OutcomeAssignment> flip;
    for (const auto& a : deterministic_enumerate(s)) {
        auto d = a.distribution();
        if (d.value("t1") == 0 && d.value("t3") == 0 && d.value("t2") == 1 && d.value("t4") == 1)
            flip = a;
    }
    REQUIRE(flip);
    CHECK(act(*flip, sample) == row({{"t1", 1}, {"t2", -1}, {"t3", 1}, {"t4", 1}}, 0));

    auto orb = inequality_orbit(s, sample);
    CHECK(orb.size() == 8);
    CHECK(std::set<LinearInequality>(orb.begin(), orb.end()) == circle_oracle({"t1", "t2", "t3", "t4"}));

    // acting on the row and on the point agree
    auto pool = testsupport::deterministic_points(s);
    pool.push_back(pr_box(4, "+++-"));
    for (int i = 0; i < 50; ++i) {
        auto p = random_mixture(pool, 3);
        for (const auto& a : deterministic_enumerate(s))
            CHECK(act(a, sample).satisfied_by(act(a, p)) == sample.satisfied_by(p));
    }
}

TEST_CASE("loop support probe", "[collapse]")
{
    CHECK(loop_support_check(row({{"t1", 1}, {"t2", 1}, {"t3", 1}, {"t4", -1}, {"(c,v1)", 3}}, 0), circle(4)));
    CHECK_FALSE(loop_support_check(row({{"t1", 1}}, 0), circle(4)));
    CHECK_FALSE(loop_support_check(row({{"(c,v1)", 1}}, 0), circle(4)));
    CHECK(loop_support_check(row({{"t1", 1}}, 0), circle(1)));

    // K33 minus t22: v0 meets three support edges
    Graph k = complete_bipartite(3, 3);
    LinearInequality fro = froissart_v2w1();
    std::map<VertexId, int> degree;
    for (const Edge& e : k.edges()) {
        if (fro.coefficient(e.id) != 0) {
            ++degree[e.d0];
            ++degree[e.d1];
        }
    }
    bool even = true;
    for (const auto& [v, d] : degree)
        even = even && d % 2 == 0;
    CHECK(loop_support_check(fro, k) == even);
    CHECK_FALSE(loop_support_check(fro, k));

    Graph two({"a", "b", "c", "d"}, {{"e1", "a", "b"}, {"e2", "b", "a"}, {"e3", "c", "d"}, {"e4", "d", "c"}});
    CHECK_FALSE(loop_support_check(row({{"e1", 1}, {"e2", 1}, {"e3", 1}, {"e4", 1}}, 0), two));
}
