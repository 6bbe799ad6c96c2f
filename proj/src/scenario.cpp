#include "ctxlab/scenario.hpp"

#include "ctxlab/error.hpp"

namespace ctxlab {

Scenario::Scenario(std::vector<EdgeId> edges, std::vector<std::optional<EdgeFaces>> faces,
                   std::vector<Triangle> triangles, std::optional<ConeStructure> cone)
    : edges_(std::move(edges)), faces_(std::move(faces)), triangles_(std::move(triangles)),
      cone_(std::move(cone))
{
    if (faces_.empty())
        faces_.resize(edges_.size());
    if (faces_.size() != edges_.size())
        throw InvalidInput("scenario: faces list does not match the edge list");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!edge_index_.emplace(edges_[i], i).second)
            throw InvalidInput("duplicate edge id \"" + edges_[i] + "\"");
    }
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const Triangle& tri = triangles_[t];
        if (!triangle_index_.emplace(tri.id, t).second)
            throw InvalidInput("duplicate triangle id \"" + tri.id + "\"");
        std::array<std::size_t, 3> s{};
        const EdgeId* names[3] = {&tri.d0, &tri.d1, &tri.d2};
        for (int k = 0; k < 3; ++k) {
            auto it = edge_index_.find(*names[k]);
            if (it == edge_index_.end())
                throw InvalidInput("triangle \"" + tri.id + "\" references unknown edge \"" + *names[k] + "\"");
            s[k] = it->second;
        }
        const auto& f0 = faces_[s[0]];
        const auto& f1 = faces_[s[1]];
        const auto& f2 = faces_[s[2]];
        if (f0 && f1 && f2) {
            bool ok = f1->d0 == f0->d0 && f2->d0 == f0->d1 && f2->d1 == f1->d1;
            if (!ok)
                throw InvalidInput("triangle \"" + tri.id + "\" has inconsistent vertex incidences");
        }
        slots_.push_back(s);
    }
}

std::size_t Scenario::edge_index(std::string_view id) const
{
    auto it = edge_index_.find(id);
    if (it == edge_index_.end())
        throw InvalidInput("unknown edge \"" + std::string(id) + "\"");
    return it->second;
}

std::optional<std::size_t> Scenario::find_triangle(std::string_view id) const
{
    auto it = triangle_index_.find(id);
    if (it == triangle_index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Scenario::cone_edge_index(std::string_view base_vertex) const
{
    if (!cone_)
        throw InvalidInput("scenario is not a cone");
    return edge_index(cone_edge_id(cone_->apex, base_vertex));
}

std::string cone_edge_id(std::string_view apex, std::string_view v)
{
    return "(" + std::string(apex) + "," + std::string(v) + ")";
}

std::string cone_triangle_id(std::string_view apex, std::string_view t)
{
    return "(" + std::string(apex) + "," + std::string(t) + ")";
}

Scenario cone(const Graph& g)
{
    VertexId apex = "c";
    while (g.has_vertex(apex))
        apex += "'";

    std::vector<EdgeId> edges;
    std::vector<std::optional<EdgeFaces>> faces;
    for (const Edge& e : g.edges()) {
        edges.push_back(e.id);
        faces.emplace_back(EdgeFaces{e.d0, e.d1});
    }
    for (const VertexId& v : g.vertices()) {
        edges.push_back(cone_edge_id(apex, v));
        faces.emplace_back(EdgeFaces{v, apex});
    }
    std::vector<Triangle> triangles;
    for (const Edge& e : g.edges())
        triangles.push_back({cone_triangle_id(apex, e.id), e.id, cone_edge_id(apex, e.d0),
                             cone_edge_id(apex, e.d1)});
    return Scenario(std::move(edges), std::move(faces), std::move(triangles), ConeStructure{g, apex});
}

Scenario one_skeleton(const Graph& g)
{
    std::vector<EdgeId> edges;
    std::vector<std::optional<EdgeFaces>> faces;
    for (const Edge& e : g.edges()) {
        edges.push_back(e.id);
        faces.emplace_back(EdgeFaces{e.d0, e.d1});
    }
    return Scenario(std::move(edges), std::move(faces), {});
}

namespace {

struct DiskParts {
    std::vector<EdgeId> edges;
    std::vector<std::optional<EdgeFaces>> faces;
    std::vector<Triangle> triangles;
    std::vector<EdgeId> boundary;
    std::vector<EdgeId> elimination_order;
};

// Fan disk with caller-chosen names. `vertex(k)` names u_k; `tau1` overrides the first boundary
// edge id and is not emitted when `emit_tau1` is false.
template <typename VertexName>
DiskParts build_disk(int n, const std::string& prefix, VertexName vertex, const EdgeId& tau1, bool emit_tau1)
{
    if (n < 3)
        throw InvalidInput("classical disk size must be at least 3, got " + std::to_string(n));
    DiskParts d;
    auto tau = [&](int i) -> EdgeId { return i == 1 ? tau1 : prefix + "tau" + std::to_string(i); };
    auto z = [&](int i) -> EdgeId { return prefix + "z" + std::to_string(i); };
    // edge from u_a to u_b (a < b): d1 = u_a, d0 = u_b
    auto add = [&](const EdgeId& id, int a, int b) {
        d.edges.push_back(id);
        d.faces.emplace_back(EdgeFaces{vertex(b), vertex(a)});
    };
    if (emit_tau1)
        add(tau(1), 0, 1);
    for (int i = 2; i <= n - 1; ++i)
        add(tau(i), i - 1, i);
    add(tau(n), 0, n - 1);
    for (int i = 2; i <= n - 2; ++i)
        add(z(i), 0, i);

    auto spoke = [&](int i) -> EdgeId {  // edge (u0, u_i)
        if (i == 1)
            return tau(1);
        if (i == n - 1)
            return tau(n);
        return z(i);
    };
    for (int i = 1; i <= n - 2; ++i)
        d.triangles.push_back({prefix + "s" + std::to_string(i), tau(i + 1), spoke(i + 1), spoke(i)});
    for (int i = 1; i <= n; ++i)
        d.boundary.push_back(tau(i));
    for (int i = n - 2; i >= 2; --i)
        d.elimination_order.push_back(z(i));
    return d;
}

}  // namespace

ClassicalDisk classical_disk(int n)
{
    auto vertex = [](int k) { return "u" + std::to_string(k); };
    DiskParts d = build_disk(n, "", vertex, "tau1", true);
    return {Scenario(std::move(d.edges), std::move(d.faces), std::move(d.triangles)),
            std::move(d.boundary), std::move(d.elimination_order)};
}

DiskBouquet disk_bouquet(std::span<const int> sizes)
{
    if (sizes.size() < 2)
        throw InvalidInput("a bouquet needs at least two disks");
    DiskBouquet b;
    b.shared = "s";
    b.sizes.assign(sizes.begin(), sizes.end());
    std::vector<EdgeId> edges{b.shared};
    std::vector<std::optional<EdgeFaces>> faces{EdgeFaces{"b", "a"}};
    std::vector<Triangle> triangles;
    std::vector<EdgeId> order;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::string prefix = "d" + std::to_string(k + 1) + ".";
        auto vertex = [&](int j) -> VertexId {
            if (j == 0)
                return "a";
            if (j == 1)
                return "b";
            return prefix + "u" + std::to_string(j);
        };
        DiskParts d = build_disk(sizes[k], prefix, vertex, b.shared, false);
        edges.insert(edges.end(), d.edges.begin(), d.edges.end());
        faces.insert(faces.end(), d.faces.begin(), d.faces.end());
        triangles.insert(triangles.end(), d.triangles.begin(), d.triangles.end());
        b.boundary.insert(b.boundary.end(), d.boundary.begin() + 1, d.boundary.end());
        b.disk_boundaries.push_back(std::move(d.boundary));
        order.insert(order.end(), d.elimination_order.begin(), d.elimination_order.end());
    }
    order.push_back(b.shared);
    b.elimination_order = std::move(order);
    b.scenario = Scenario(std::move(edges), std::move(faces), std::move(triangles));
    return b;
}

}  // namespace ctxlab
