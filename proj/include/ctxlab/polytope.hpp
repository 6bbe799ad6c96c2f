#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ctxlab/distribution.hpp"
#include "ctxlab/error.hpp"
#include "ctxlab/inequality.hpp"

namespace ctxlab {

/// Four rows per triangle, in triangle order and outcome order 00, 01, 10, 11.
struct HRep {
    ScenarioPtr scenario;
    std::vector<LinearInequality> rows;
};

/// Row (s, ab) is p_s^{ab} >= 0 written in edge values:
/// (-1)^a x + (-1)^b y + (-1)^{a+b} z >= ((a+b+1) mod 2) - a - b, repeated slots summed.
HRep h_representation(const ScenarioPtr& s);

/// Indices of rows holding with equality at p.
std::vector<std::size_t> tight_set(const HRep& h, const EdgeDistribution& p);

/// Rank of the tight rows.
std::size_t rank_of(const HRep& h, const EdgeDistribution& p);

/// Valid and tight rows of full rank (= number of edges).
bool is_vertex(const HRep& h, const EdgeDistribution& p);

struct ContextualityCertificate {
    Verdict verdict = Verdict::noncontextual;
    /// Positive weights summing to 1 that reproduce p (noncontextual only).
    std::vector<std::pair<OutcomeAssignment, Rational>> mixture;
    /// Satisfied by every deterministic distribution and violated by p (contextual only). On cones
    /// this is the most violated circle inequality of the base graph when one is violated.
    std::optional<LinearInequality> separating;
    /// The row read off the phase-I duals (contextual only).
    std::optional<LinearInequality> farkas;
};

/**
 * Exact phase-I simplex (Bland's rule) for d >= 0 with sum d = 1 and, for every edge,
 * sum over assignments with bit 0 of d = p. Infeasibility yields the Farkas row.
 * Throws InvalidDistribution for invalid p and GuardrailExceeded above the assignment limit.
 */
ContextualityCertificate is_noncontextual_lp(const EdgeDistribution& p, const Limits& limits = {});

/// Smallest value of N - 2 + sum (-1)^{a_i} tbar_i over the circle inequalities of `circle`
/// (edges of p's scenario), with the minimizing row in probability coordinates. Negative means
/// violated.
std::pair<Rational, LinearInequality> tightest_circle_row(const EdgeDistribution& p, std::span<const EdgeId> circle);

/// Circle inequality of the base-graph circle with the smallest value at p, in probability
/// coordinates, if some circle inequality is violated. Requires a cone scenario.
std::optional<LinearInequality> most_violated_circle_row(const EdgeDistribution& p);

/// Replays a mixture: true iff weights are positive, sum to 1 and reproduce p.
bool verify_mixture(const EdgeDistribution& p, const std::vector<std::pair<OutcomeAssignment, Rational>>& mixture);

/// True iff every deterministic distribution satisfies `ineq` and p violates it.
bool verify_separation(const EdgeDistribution& p, const LinearInequality& ineq, const Limits& limits = {});

/// Assignments whose outcome has positive probability on every triangle.
std::vector<OutcomeAssignment> support(const EdgeDistribution& p, const Limits& limits = {});

bool is_strongly_contextual(const EdgeDistribution& p, const Limits& limits = {});

struct VertexEnumeration {
    std::vector<EdgeDistribution> vertices;  // sorted by edge values
    /// Index pairs (i < j) of adjacent vertices; filled when requested.
    std::vector<std::pair<std::size_t, std::size_t>> adjacency;
};

/// Double description over the homogenized H-representation. Throws GuardrailExceeded when the
/// scenario has more than `limits.max_dd_edges` edges.
VertexEnumeration enumerate_vertices(const ScenarioPtr& s, bool with_adjacency = false, const Limits& limits = {});

}  // namespace ctxlab
