#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxlab/graph.hpp"

namespace ctxlab {

/// A nondegenerate 2-simplex given by its three edge faces. Slots may repeat (edge identifications).
/// In table coordinates the outcome pair (a, b) puts a on d2, b on d0 and a+b on d1.
struct Triangle {
    std::string id;
    EdgeId d0;
    EdgeId d1;
    EdgeId d2;

    friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Vertex faces of an edge, when known.
struct EdgeFaces {
    VertexId d0;
    VertexId d1;

    friend bool operator==(const EdgeFaces&, const EdgeFaces&) = default;
};

/// Recorded when a scenario was built as the cone of a graph.
struct ConeStructure {
    Graph base;
    VertexId apex;

    friend bool operator==(const ConeStructure&, const ConeStructure&) = default;
};

/**
 * A 2-dimensional measurement space stored by its nondegenerate edges and triangles.
 *
 * Edge order fixes the coordinate order of every distribution and inequality on the scenario.
 * When faces are known for all three edges of a triangle the simplicial identities
 * d_i d_j = d_{j-1} d_i are checked at construction.
 */
class Scenario {
public:
    Scenario() = default;
    Scenario(std::vector<EdgeId> edges, std::vector<std::optional<EdgeFaces>> faces,
             std::vector<Triangle> triangles, std::optional<ConeStructure> cone = std::nullopt);

    const std::vector<EdgeId>& edges() const noexcept { return edges_; }
    const std::vector<std::optional<EdgeFaces>>& faces() const noexcept { return faces_; }
    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    bool has_edge(std::string_view id) const { return edge_index_.contains(id); }
    std::size_t edge_index(std::string_view id) const;
    std::optional<std::size_t> find_triangle(std::string_view id) const;

    /// Edge indices of triangle t in (d0, d1, d2) order.
    const std::array<std::size_t, 3>& slots(std::size_t t) const { return slots_[t]; }

    const ConeStructure* cone() const noexcept { return cone_ ? &*cone_ : nullptr; }
    /// Index of the edge (c, v) in a cone scenario.
    std::size_t cone_edge_index(std::string_view base_vertex) const;

    friend bool operator==(const Scenario& a, const Scenario& b)
    {
        return a.edges_ == b.edges_ && a.triangles_ == b.triangles_;
    }

private:
    std::vector<EdgeId> edges_;
    std::vector<std::optional<EdgeFaces>> faces_;
    std::vector<Triangle> triangles_;
    std::optional<ConeStructure> cone_;
    std::vector<std::array<std::size_t, 3>> slots_;
    std::map<std::string, std::size_t, std::less<>> edge_index_;
    std::map<std::string, std::size_t, std::less<>> triangle_index_;
};

/// Id of the cone edge joining the apex to v.
std::string cone_edge_id(std::string_view apex, std::string_view v);
/// Id of the cone triangle over edge t.
std::string cone_triangle_id(std::string_view apex, std::string_view t);

/**
 * Cone(g): apex "c", one edge (c,v) per vertex and one triangle (c,t) per edge t with
 * d0 = t, d1 = (c, d0 t), d2 = (c, d1 t). Edge order: base edges, then cone edges.
 */
Scenario cone(const Graph& g);

/// The graph as a scenario with no triangles (edge coordinates only).
Scenario one_skeleton(const Graph& g);

/// Fan-triangulated disk with its boundary circle and the interior elimination order.
struct ClassicalDisk {
    Scenario scenario;
    /// tau1..tauN in cyclic order; tau1 and tau2 bound the initial triangle s1.
    std::vector<EdgeId> boundary;
    /// Interior edges from the terminal triangle towards the initial one.
    std::vector<EdgeId> elimination_order;
};

/// Triangles s_i = (u0, u_i, u_{i+1}) for i = 1..N-2. Requires N >= 3.
ClassicalDisk classical_disk(int n);

/// Classical disks glued along one boundary edge of each initial triangle.
struct DiskBouquet {
    Scenario scenario;
    EdgeId shared;
    std::vector<int> sizes;
    /// Per disk: its boundary circle, shared edge first.
    std::vector<std::vector<EdgeId>> disk_boundaries;
    /// Edges of the bouquet boundary (every disk boundary edge except the shared one).
    std::vector<EdgeId> boundary;
    /// Interiors of each disk (terminal to initial), then the shared edge.
    std::vector<EdgeId> elimination_order;
};

/// Requires at least two disks, each of size >= 3. Disk i contributes edges "d{i}.tau{j}".
DiskBouquet disk_bouquet(std::span<const int> sizes);

}  // namespace ctxlab
