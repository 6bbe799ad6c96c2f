#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "ctxlab/collapse_bell.hpp"
#include "ctxlab/distribution.hpp"
#include "ctxlab/fm.hpp"
#include "ctxlab/graph.hpp"
#include "ctxlab/inequality.hpp"
#include "ctxlab/polytope.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab::json_io {

using json = nlohmann::json;

/// Rationals travel as "num/den" strings; integers are accepted as numbers or strings.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// Cones carry "cone_of" with their base graph; other scenarios list edges, faces and triangles.
json to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

json to_json(const ClassicalDisk& d);
json to_json(const DiskBouquet& b);

/// {"values": {edge: rational}} over the scenario's edges.
json to_json(const EdgeDistribution& p);
/// Every edge of `s` must have a value; unknown edges are rejected.
EdgeDistribution distribution_from_json(const json& j, const ScenarioPtr& s);
/// Values on the listed edges only, as a distribution on a scenario without triangles.
EdgeDistribution boundary_from_json(const json& j, const std::vector<EdgeId>& edges);

/// {"coeffs": {...}, "rhs": "...", "sense": "geq", "label": "..."}; "leq" rows are flipped on read.
json to_json(const LinearInequality& r);
LinearInequality inequality_from_json(const json& j);
/// A single row object or an array of rows.
std::vector<LinearInequality> inequalities_from_json(const json& j);

json to_json(const InequalitySystem& sys);
InequalitySystem system_from_json(const json& j);

json to_json(const std::vector<EliminationStep>& trace);

json to_json(const CollapseMap& cm);

json to_json(const ContextualityCertificate& c);

json to_json(const OutcomeAssignment& a);

/// Reads and parses a JSON file; InvalidInput on IO or syntax errors.
json read_file(const std::filesystem::path& path);

}  // namespace ctxlab::json_io
