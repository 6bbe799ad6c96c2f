#include "ctxlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ctxlab/error.hpp"

namespace ctxlab {

namespace {

void require_positive(int n, const char* what)
{
    if (n < 1)
        throw InvalidInput(std::string(what) + " size must be at least 1, got " + std::to_string(n));
}

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Smallest index becomes the representative.
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

Graph::Graph(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges))
{
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_index_.emplace(vertices_[i], i).second)
            throw InvalidInput("duplicate vertex id \"" + vertices_[i] + "\"");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (!edge_index_.emplace(e.id, i).second)
            throw InvalidInput("duplicate edge id \"" + e.id + "\"");
        if (!has_vertex(e.d0) || !has_vertex(e.d1))
            throw InvalidInput("edge \"" + e.id + "\" references an unknown vertex");
    }
}

std::size_t Graph::vertex_index(std::string_view id) const
{
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end())
        throw InvalidInput("unknown vertex \"" + std::string(id) + "\"");
    return it->second;
}

std::size_t Graph::edge_index(std::string_view id) const
{
    auto it = edge_index_.find(id);
    if (it == edge_index_.end())
        throw InvalidInput("unknown edge \"" + std::string(id) + "\"");
    return it->second;
}

std::vector<std::size_t> Graph::degrees() const
{
    std::vector<std::size_t> deg(vertices_.size(), 0);
    for (const Edge& e : edges_) {
        ++deg[vertex_index(e.d0)];
        ++deg[vertex_index(e.d1)];
    }
    return deg;
}

Graph circle(int n)
{
    require_positive(n, "circle");
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        vertices.push_back("v" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
        int next = i % n + 1;
        edges.push_back({"t" + std::to_string(i), "v" + std::to_string(next), "v" + std::to_string(i)});
    }
    return Graph(std::move(vertices), std::move(edges));
}

Graph line(int n)
{
    require_positive(n, "line");
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    for (int i = 0; i <= n; ++i)
        vertices.push_back("v" + std::to_string(i));
    for (int i = 1; i <= n; ++i)
        edges.push_back({"t" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i - 1)});
    return Graph(std::move(vertices), std::move(edges));
}

Graph wedge_circles(int n)
{
    require_positive(n, "wedge");
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        edges.push_back({"t" + std::to_string(i), "v", "v"});
    return Graph({"v"}, std::move(edges));
}

Graph flower(std::span<const int> petal_lengths)
{
    if (petal_lengths.size() < 2)
        throw InvalidInput("a flower needs at least two petals");
    std::vector<VertexId> vertices{"v", "w"};
    std::vector<Edge> edges;
    for (std::size_t p = 0; p < petal_lengths.size(); ++p) {
        int len = petal_lengths[p];
        require_positive(len, "petal");
        std::string tag = std::to_string(p + 1);
        auto node = [&](int k) -> VertexId {
            if (k == 0)
                return "v";
            if (k == len)
                return "w";
            return "p" + tag + "_" + std::to_string(k);
        };
        for (int k = 1; k < len; ++k)
            vertices.push_back(node(k));
        for (int k = 1; k <= len; ++k)
            edges.push_back({"e" + tag + "_" + std::to_string(k), node(k), node(k - 1)});
    }
    return Graph(std::move(vertices), std::move(edges));
}

Graph complete_bipartite(int m, int n)
{
    require_positive(m, "bipartite");
    require_positive(n, "bipartite");
    bool wide = m > 10 || n > 10;
    std::vector<VertexId> vertices;
    for (int i = 0; i < m; ++i)
        vertices.push_back("v" + std::to_string(i));
    for (int j = 0; j < n; ++j)
        vertices.push_back("w" + std::to_string(j));
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            std::string id = "t" + std::to_string(i) + (wide ? "_" : "") + std::to_string(j);
            edges.push_back({id, "v" + std::to_string(i), "w" + std::to_string(j)});
        }
    }
    return Graph(std::move(vertices), std::move(edges));
}

std::vector<std::vector<VertexId>> components(const Graph& g)
{
    UnionFind uf(g.vertices().size());
    for (const Edge& e : g.edges())
        uf.unite(g.vertex_index(e.d0), g.vertex_index(e.d1));
    std::map<std::size_t, std::vector<VertexId>> by_root;
    for (std::size_t i = 0; i < g.vertices().size(); ++i)
        by_root[uf.find(i)].push_back(g.vertices()[i]);
    std::vector<std::vector<VertexId>> out;
    for (auto& [root, members] : by_root)
        out.push_back(std::move(members));
    return out;
}

int cycle_rank(const Graph& g)
{
    return static_cast<int>(g.edges().size()) - static_cast<int>(g.vertices().size()) +
           static_cast<int>(components(g).size());
}

std::vector<EdgeId> spanning_tree(const Graph& g)
{
    auto comps = components(g);
    if (comps.size() > 1) {
        std::string report = "graph is disconnected (" + std::to_string(comps.size()) + " components:";
        for (const auto& c : comps) {
            report += " {";
            for (std::size_t i = 0; i < c.size(); ++i)
                report += (i ? "," : "") + c[i];
            report += "}";
        }
        throw InvalidInput(report + ")");
    }
    UnionFind uf(g.vertices().size());
    std::vector<EdgeId> tree;
    for (const Edge& e : g.edges()) {
        if (uf.unite(g.vertex_index(e.d0), g.vertex_index(e.d1)))
            tree.push_back(e.id);
    }
    return tree;
}

std::vector<Circle> enumerate_circles(const Graph& g)
{
    const auto& edges = g.edges();
    const std::size_t nv = g.vertices().size();
    // incidence: vertex -> (edge index, other endpoint)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(nv);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        std::size_t a = g.vertex_index(edges[e].d0);
        std::size_t b = g.vertex_index(edges[e].d1);
        if (a == b)
            continue;
        incident[a].emplace_back(e, b);
        incident[b].emplace_back(e, a);
    }

    std::vector<std::vector<std::size_t>> found_edges;
    std::vector<std::vector<std::size_t>> found_vertices;

    for (std::size_t s = 0; s < edges.size(); ++s) {
        std::size_t u = g.vertex_index(edges[s].d1);
        std::size_t w = g.vertex_index(edges[s].d0);
        if (u == w) {
            found_edges.push_back({s});
            found_vertices.push_back({u});
            continue;
        }
        // Simple paths w -> u through edges with index > s.
        std::vector<std::size_t> path_edges{s};
        std::vector<std::size_t> path_vertices{u, w};
        std::vector<bool> on_path(nv, false);
        on_path[u] = on_path[w] = true;

        auto dfs = [&](auto&& self, std::size_t at) -> void {
            for (auto [e, next] : incident[at]) {
                if (e <= s)
                    continue;
                if (next == u) {
                    auto ce = path_edges;
                    ce.push_back(e);
                    auto cv = path_vertices;
                    // Orient towards the smaller neighbour of s.
                    if (ce.size() > 2 && ce[1] > ce.back()) {
                        std::vector<std::size_t> re{ce[0]};
                        re.insert(re.end(), ce.rbegin(), ce.rend() - 1);
                        std::vector<std::size_t> rv{cv[1], cv[0]};
                        rv.insert(rv.end(), cv.rbegin(), cv.rend() - 2);
                        ce = std::move(re);
                        cv = std::move(rv);
                    }
                    found_edges.push_back(std::move(ce));
                    found_vertices.push_back(std::move(cv));
                    continue;
                }
                if (on_path[next])
                    continue;
                on_path[next] = true;
                path_edges.push_back(e);
                path_vertices.push_back(next);
                self(self, next);
                path_vertices.pop_back();
                path_edges.pop_back();
                on_path[next] = false;
            }
        };
        dfs(dfs, w);
    }

    std::vector<std::size_t> order(found_edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return found_edges[a] < found_edges[b]; });

    std::vector<Circle> out;
    for (std::size_t k : order) {
        Circle c;
        for (std::size_t e : found_edges[k])
            c.edges.push_back(edges[e].id);
        for (std::size_t v : found_vertices[k])
            c.vertices.push_back(g.vertices()[v]);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<EdgeId> CollapseMap::collapsed_edges() const
{
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < edge_map.size(); ++i) {
        if (!edge_map[i])
            out.push_back(source.edges()[i].id);
    }
    return out;
}

CollapseMap collapse(const Graph& g, std::span<const EdgeId> edges_to_collapse)
{
    std::set<std::size_t> chosen;
    for (const auto& id : edges_to_collapse)
        chosen.insert(g.edge_index(id));

    UnionFind uf(g.vertices().size());
    for (std::size_t e : chosen) {
        const Edge& edge = g.edges()[e];
        if (edge.is_loop())
            throw InvalidInput("cannot collapse loop \"" + edge.id + "\"");
        if (!uf.unite(g.vertex_index(edge.d0), g.vertex_index(edge.d1)))
            throw InvalidInput("collapsed edges contain a circle (closed by \"" + edge.id + "\")");
    }

    CollapseMap cm;
    cm.source = g;
    std::vector<VertexId> target_vertices;
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        cm.vertex_map.push_back(g.vertices()[uf.find(i)]);
        if (uf.find(i) == i)
            target_vertices.push_back(g.vertices()[i]);
    }
    std::vector<Edge> target_edges;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const Edge& edge = g.edges()[e];
        if (chosen.contains(e)) {
            cm.edge_map.emplace_back(std::nullopt);
            continue;
        }
        cm.edge_map.emplace_back(edge.id);
        target_edges.push_back({edge.id, cm.vertex_map[g.vertex_index(edge.d0)],
                                cm.vertex_map[g.vertex_index(edge.d1)]});
    }
    cm.target = Graph(std::move(target_vertices), std::move(target_edges));
    return cm;
}

CollapseMap compose(const CollapseMap& first, const CollapseMap& second)
{
    if (!(first.target == second.source))
        throw InvalidInput("cannot compose collapse maps: intermediate graphs differ");
    CollapseMap cm;
    cm.source = first.source;
    cm.target = second.target;
    for (const auto& image : first.edge_map) {
        if (!image)
            cm.edge_map.emplace_back(std::nullopt);
        else
            cm.edge_map.push_back(second.edge_map[second.source.edge_index(*image)]);
    }
    for (const auto& v : first.vertex_map)
        cm.vertex_map.push_back(second.image_of_vertex(v));
    return cm;
}

}  // namespace ctxlab
