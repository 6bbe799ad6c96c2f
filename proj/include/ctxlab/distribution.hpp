#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ctxlab/error.hpp"
#include "ctxlab/rational.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab {

using ScenarioPtr = std::shared_ptr<const Scenario>;

inline ScenarioPtr share(Scenario s) { return std::make_shared<const Scenario>(std::move(s)); }

/// Same object, or structurally equal edges and triangles.
bool same_scenario(const ScenarioPtr& a, const ScenarioPtr& b);

/**
 * A simplicial distribution in edge coordinates: one value p_t^0 in [0, 1] per edge, aligned with
 * the scenario's edge order. Triangle nonnegativity is not enforced here; `validate` reports it and
 * operations that need a valid distribution throw InvalidDistribution.
 */
class EdgeDistribution {
public:
    EdgeDistribution(ScenarioPtr scenario, std::vector<Rational> values);
    /// Values keyed by edge id; every edge must be present and no unknown ids are allowed.
    static EdgeDistribution from_map(ScenarioPtr scenario, const std::map<EdgeId, Rational>& values);
    /// Every edge set to `value`.
    static EdgeDistribution constant(ScenarioPtr scenario, const Rational& value);

    const Scenario& scenario() const noexcept { return *scenario_; }
    const ScenarioPtr& scenario_ptr() const noexcept { return scenario_; }
    const std::vector<Rational>& values() const noexcept { return values_; }
    const Rational& operator[](std::size_t edge) const { return values_[edge]; }
    const Rational& value(std::string_view edge) const { return values_[scenario_->edge_index(edge)]; }
    /// 2 p^0 - 1.
    Rational expectation(std::size_t edge) const { return 2 * values_[edge] - 1; }

    bool is_deterministic() const;

    friend bool operator==(const EdgeDistribution& a, const EdgeDistribution& b)
    {
        return same_scenario(a.scenario_, b.scenario_) && a.values_ == b.values_;
    }
    /// Orders by values only; meaningful for distributions on one scenario.
    friend bool operator<(const EdgeDistribution& a, const EdgeDistribution& b) { return a.values_ < b.values_; }

private:
    ScenarioPtr scenario_;
    std::vector<Rational> values_;
};

/// Outcome probabilities of one triangle, index 2a + b for the outcome pair (a, b).
using TriangleEntries = std::array<Rational, 4>;

struct TriangleTable {
    std::vector<TriangleEntries> entries;  // aligned with scenario triangles
};

/// 1/2 (p_x^a + p_y^b - p_z^{a+b+1}) for each outcome, with x = d2, y = d0, z = d1. Unchecked.
TriangleEntries triangle_entries(const EdgeDistribution& p, std::size_t triangle);

/// Throws InvalidDistribution naming the first negative entry.
TriangleTable triangle_table(const EdgeDistribution& p);

struct TriangleViolation {
    std::string triangle;
    int a = 0;
    int b = 0;
    Rational value;
};

/// Negative table entries; empty means the distribution is valid.
std::vector<TriangleViolation> validate(const EdgeDistribution& p);

/// Throws InvalidDistribution unless `validate(p)` is empty.
void require_valid(const EdgeDistribution& p);

/// A Z/2 label per edge with even parity on every triangle.
class OutcomeAssignment {
public:
    /// Throws InvalidInput on a size mismatch or a triangle with odd parity.
    OutcomeAssignment(ScenarioPtr scenario, std::vector<std::uint8_t> bits);

    const Scenario& scenario() const noexcept { return *scenario_; }
    const ScenarioPtr& scenario_ptr() const noexcept { return scenario_; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::uint8_t operator[](std::size_t edge) const { return bits_[edge]; }

    /// The deterministic distribution: value 1 where the bit is 0.
    EdgeDistribution distribution() const;
    /// One character per edge in edge order.
    std::string bit_string() const;

    friend bool operator==(const OutcomeAssignment& a, const OutcomeAssignment& b)
    {
        return same_scenario(a.scenario_, b.scenario_) && a.bits_ == b.bits_;
    }
    friend bool operator<(const OutcomeAssignment& a, const OutcomeAssignment& b) { return a.bits_ < b.bits_; }

private:
    ScenarioPtr scenario_;
    std::vector<std::uint8_t> bits_;
};

/// Number of outcome assignments (a power of two) without enumerating them.
std::uint64_t deterministic_count(const Scenario& s);

/**
 * All outcome assignments. Cones are indexed by their cone-edge bits (first base vertex is the most
 * significant bit); other scenarios solve the parity system over Z/2 and are sorted by bits.
 * Throws GuardrailExceeded beyond `limits.max_assignments`.
 */
std::vector<OutcomeAssignment> deterministic_enumerate(const ScenarioPtr& s, const Limits& limits = {});

/// Same set as deterministic_enumerate but always through the Z/2 parity system.
std::vector<OutcomeAssignment> deterministic_enumerate_parity(const ScenarioPtr& s, const Limits& limits = {});

/// Monoid product: per edge p q + (1 - p)(1 - q).
EdgeDistribution product(const EdgeDistribution& p, const EdgeDistribution& q);

/// Outcome-wise convolution of two triangle tables.
TriangleEntries convolve(const TriangleEntries& p, const TriangleEntries& q);

/// Action of a deterministic distribution: flips p^0 and p^1 on every edge labelled 1.
EdgeDistribution act(const OutcomeAssignment& s, const EdgeDistribution& p);

/// Distinct images of p under every deterministic distribution, sorted.
std::vector<EdgeDistribution> orbit(const EdgeDistribution& p, const Limits& limits = {});

enum class Sign { plus, minus };

/**
 * Element of G±: p+ (boundary value 1) or p- (boundary value 0) on each cone triangle; every cone
 * edge gets 1/2. Signs are keyed by base edge id; missing edges are +.
 */
EdgeDistribution p_pm_element(const ScenarioPtr& cone_scenario, const std::map<EdgeId, Sign>& signs);

/// Same, with one '+' or '-' per base edge in base-edge order.
EdgeDistribution p_pm_element(const ScenarioPtr& cone_scenario, std::string_view pattern);

enum class Verdict { noncontextual, contextual };

std::string_view to_string(Verdict v);

/// Whether p lies in G±.
bool is_p_pm_element(const EdgeDistribution& p);

/// Noncontextual iff the minus pattern sums to zero around every circle of the base graph.
/// Throws InvalidInput unless p is in G±.
Verdict g_pm_classify(const EdgeDistribution& p);

/// Values on a sub-scenario whose edges (and triangles, by id and faces) belong to p's scenario.
EdgeDistribution restrict(const EdgeDistribution& p, const ScenarioPtr& sub);

}  // namespace ctxlab
