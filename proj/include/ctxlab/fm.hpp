#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxlab/distribution.hpp"
#include "ctxlab/graph.hpp"
#include "ctxlab/inequality.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab {

/// Expectation coordinates live in [-1, 1] (tbar = 2 p - 1), probability coordinates in [0, 1].
enum class Mode { expectation, probability };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);

/// Box bounds of one coordinate in the given mode.
std::pair<Rational, Rational> box(Mode m);

/// Rows over `variables`; every variable carries its implicit box bound.
struct InequalitySystem {
    Mode mode = Mode::expectation;
    std::vector<EdgeId> variables;
    std::vector<LinearInequality> rows;
};

/// Rows 0 <= N - 2 + sum (-1)^{a_i} tbar_i for all a with sum a = N + 1 (mod 2), in expectation mode.
InequalitySystem circle_inequalities(std::span<const EdgeId> edges);

/// Exact change of coordinates.
InequalitySystem convert(const InequalitySystem& sys, Mode to);
LinearInequality convert(const LinearInequality& row, Mode from, Mode to);

/// Minimum of the left-hand side over the box already meets the bound.
bool is_box_trivial(const LinearInequality& row, Mode mode);

struct PruneOptions {
    /// Also drop rows implied by the remaining rows and the box (exact LP).
    bool lp_redundancy = false;
};

/// Normalizes, removes duplicates and box-trivial rows, and sorts the rows.
InequalitySystem prune(const InequalitySystem& sys, PruneOptions options = {});

/// Rows that contained the eliminated variable, split by the sign of its coefficient.
struct EliminationStep {
    EdgeId variable;
    std::vector<LinearInequality> lower;  // positive coefficient
    std::vector<LinearInequality> upper;  // negative coefficient
};

/// Fourier-Motzkin step. The variable's own box bounds take part in the pairing, so the result is
/// the exact projection of the boxed system. The output is pruned.
InequalitySystem eliminate_variable(const InequalitySystem& sys, const EdgeId& v, EliminationStep* trace = nullptr,
                                    PruneOptions options = {});

/// Midpoint of the feasible interval of the step's variable given values of the other variables,
/// intersected with the box. nullopt if the interval is empty.
std::optional<Rational> back_substitute(const EliminationStep& step, Mode mode,
                                        const std::map<EdgeId, Rational>& values);

/// True iff x satisfies every row and lies in the box.
bool satisfies(const InequalitySystem& sys, const std::map<EdgeId, Rational>& x);

/// Triangle rows of a scenario as a probability-mode system over all its edges.
InequalitySystem triangle_system(const Scenario& s);

struct ExtensionResult {
    bool extends = false;
    /// Valid distribution on the disk agreeing with the boundary values.
    std::optional<EdgeDistribution> witness;
    /// A violated row of the projected system (probability coordinates).
    std::optional<LinearInequality> violated;
    std::vector<EliminationStep> trace;
};

/// Eliminates interior edges terminal-to-initial, checks the boundary values against the projected
/// system, and back-substitutes interval midpoints. `boundary_values` must name every boundary edge.
ExtensionResult extend_from_boundary(const ClassicalDisk& disk, const EdgeDistribution& boundary_values);

/// Same over a bouquet, eliminating the shared edge last.
ExtensionResult extend_from_boundary(const DiskBouquet& bouquet, const EdgeDistribution& boundary_values);

struct BouquetCheck {
    bool extends = true;
    /// Index pairs of disks whose composite circle has a violated row, with that row.
    std::vector<std::pair<std::size_t, std::size_t>> violated_pairs;
    std::vector<LinearInequality> violated_rows;
};

/// Composite circles of each pair of disks: boundaries without the shared edge, joined.
std::vector<std::vector<EdgeId>> composite_circles(const DiskBouquet& bouquet);

/// All composite-circle inequality sets hold on the bouquet boundary.
BouquetCheck check_extension_bouquet(const DiskBouquet& bouquet, const EdgeDistribution& boundary_values);

/// Whether the base graph is a circle or a flower (two vertices joined by at least two lines).
bool is_circle_or_flower(const Graph& g);

struct FineVerdict {
    Verdict verdict = Verdict::noncontextual;
    std::optional<Circle> circle;
    std::optional<LinearInequality> violated;
};

/// Circle-inequality test on every circle of the base graph. Throws InvalidInput unless p lives on
/// the cone of a circle or flower graph.
FineVerdict fine_check_flower(const EdgeDistribution& p);

}  // namespace ctxlab
