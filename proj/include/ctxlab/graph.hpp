#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxlab {

using VertexId = std::string;
using EdgeId = std::string;

/// A nondegenerate 1-simplex. d0 and d1 are its two vertex faces; they coincide for a loop.
struct Edge {
    EdgeId id;
    VertexId d0;
    VertexId d1;

    bool is_loop() const noexcept { return d0 == d1; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * A 1-dimensional simplicial set: an ordered multigraph whose loops and parallel edges are allowed.
 * Vertex and edge order is significant; every derived object (cones, quotients, enumerations)
 * follows it so that results are reproducible.
 */
class Graph {
public:
    Graph() = default;
    /// Throws InvalidInput on duplicate ids or dangling endpoints.
    Graph(std::vector<VertexId> vertices, std::vector<Edge> edges);

    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool has_vertex(std::string_view id) const { return vertex_index_.contains(id); }
    bool has_edge(std::string_view id) const { return edge_index_.contains(id); }
    std::size_t vertex_index(std::string_view id) const;
    std::size_t edge_index(std::string_view id) const;
    const Edge& edge(std::string_view id) const { return edges_[edge_index(id)]; }

    /// Degree with loops counted twice.
    std::vector<std::size_t> degrees() const;

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t, std::less<>> vertex_index_;
    std::map<std::string, std::size_t, std::less<>> edge_index_;
};

// Standard families. Sizes of zero are rejected with InvalidInput.

/// Cycle with vertices v1..vN and edges t1..tN, t_i joining v_i to v_{i+1}; circle(1) is one loop.
Graph circle(int n);
/// Path v0 - t1 - v1 - ... - tN - vN.
Graph line(int n);
/// One vertex v with loops t1..tn.
Graph wedge_circles(int n);
/// Lines glued at their two terminal vertices v and w. Petal i has edges e{i}_1..e{i}_{N_i} and
/// interior vertices p{i}_1..p{i}_{N_i-1}. Needs at least two petals.
Graph flower(std::span<const int> petal_lengths);
/// Vertices v0..v{m-1}, w0..w{n-1}; edge t{i}{j} joins v_i (d0) and w_j (d1).
Graph complete_bipartite(int m, int n);

/// Vertex sets of the connected components, each in graph order, ordered by first vertex.
std::vector<std::vector<VertexId>> components(const Graph& g);

/// |E| - |V| + (number of components): the number of independent circles.
int cycle_rank(const Graph& g);

/// Spanning tree chosen greedily in edge order (loops never included). The graph must be
/// connected; otherwise InvalidInput lists the components.
std::vector<EdgeId> spanning_tree(const Graph& g);

/**
 * A simple closed walk. `vertices[i]` is the vertex where `edges[i]` starts, so the walk is
 * vertices[0] -edges[0]- vertices[1] - ... -edges[n-1]- vertices[0].
 */
struct Circle {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;

    std::size_t length() const noexcept { return edges.size(); }
    friend bool operator==(const Circle&, const Circle&) = default;
};

/// All simple circles (loops and parallel pairs included), each once up to rotation and reflection.
/// Each circle starts at its smallest edge id and runs towards the smaller neighbour; the list is
/// sorted by edge sequence.
std::vector<Circle> enumerate_circles(const Graph& g);

/// A quotient map contracting a forest of edges.
struct CollapseMap {
    Graph source;
    Graph target;
    /// Aligned with source.edges(); nullopt marks a collapsed edge.
    std::vector<std::optional<EdgeId>> edge_map;
    /// Aligned with source.vertices().
    std::vector<VertexId> vertex_map;

    bool is_collapsed(std::size_t source_edge) const { return !edge_map[source_edge].has_value(); }
    std::vector<EdgeId> collapsed_edges() const;
    const VertexId& image_of_vertex(std::string_view v) const
    {
        return vertex_map[source.vertex_index(v)];
    }

    friend bool operator==(const CollapseMap&, const CollapseMap&) = default;
};

/**
 * Contracts `edges_to_collapse` (any order). Endpoints are merged by union-find and each class is
 * named after its earliest vertex in source order. Surviving edges keep their ids. Throws
 * InvalidInput for unknown ids, loops, or any set that contains a circle.
 */
CollapseMap collapse(const Graph& g, std::span<const EdgeId> edges_to_collapse);

/// first then second; second.source must equal first.target.
CollapseMap compose(const CollapseMap& first, const CollapseMap& second);

}  // namespace ctxlab
