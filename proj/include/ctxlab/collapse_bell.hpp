#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ctxlab/distribution.hpp"
#include "ctxlab/error.hpp"
#include "ctxlab/graph.hpp"
#include "ctxlab/inequality.hpp"

namespace ctxlab {

/// A collapse lifted to cones: every source cone edge is either forced to 1 (a collapsed base edge)
/// or read off one edge of the target cone.
struct ConePushforward {
    CollapseMap map;
    ScenarioPtr source;
    ScenarioPtr target;
    /// Aligned with source->edges(); nullopt for collapsed base edges.
    std::vector<std::optional<EdgeId>> image;
};

ConePushforward cone_pushforward(const CollapseMap& cm);

/// q on cone(source) from p on cone(target).
EdgeDistribution pushforward_distribution(const ConePushforward& f, const EdgeDistribution& p);
EdgeDistribution pushforward_distribution(const CollapseMap& cm, const EdgeDistribution& p);

/// Row over cone(source) edges (probability coordinates) rewritten over cone(target) edges:
/// collapsed edges become the constant 1 and split cone edges merge. Normalized.
LinearInequality pushforward_inequality(const ConePushforward& f, const LinearInequality& row);
LinearInequality pushforward_inequality(const CollapseMap& cm, const LinearInequality& row);

/// Every contextual vertex obtained by pushing contextual wedge vertices back along a spanning-tree
/// collapse and closing under the deterministic action. Each output is checked to be a vertex with
/// a violated circle row. Sorted.
std::vector<EdgeDistribution> generate_contextual_vertices(const Graph& g, const Limits& limits = {});

/// (2^n - 1) 2^(|V| - 1) for a connected graph with cycle rank n.
std::uint64_t contextual_vertex_count(const Graph& g);

/// PR box on cone(circle(N)): cone edges 1/2, base edge t_i is 0 under '-' and 1 under '+'.
/// The pattern needs an odd number of '-'.
EdgeDistribution pr_box(int n, std::string_view pattern);

/// Whether p has the PR-box shape on the cone of a circle graph.
bool is_pr_box(const EdgeDistribution& p);

/// Action of a deterministic distribution on a row: p -> 1 - p on every edge labelled 1.
LinearInequality act(const OutcomeAssignment& s, const LinearInequality& row);

/// Distinct normalized images of a row under every deterministic distribution of s, sorted.
std::vector<LinearInequality> inequality_orbit(const ScenarioPtr& s, const LinearInequality& row,
                                               const Limits& limits = {});

/// Base edges of g with a nonzero coefficient form a nonempty connected subgraph with all degrees
/// even.
bool loop_support_check(const LinearInequality& row, const Graph& g);

}  // namespace ctxlab
