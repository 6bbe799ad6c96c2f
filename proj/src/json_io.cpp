#include "ctxlab/json_io.hpp"

#include <fstream>
#include <set>

namespace ctxlab::json_io {

namespace {

const json& field(const json& j, std::string_view key)
{
    if (!j.is_object())
        throw InvalidInput("expected a JSON object with field \"" + std::string(key) + "\"");
    auto it = j.find(key);
    if (it == j.end())
        throw InvalidInput("missing field \"" + std::string(key) + "\"");
    return *it;
}

std::string string_of(const json& j, std::string_view what)
{
    if (!j.is_string())
        throw InvalidInput(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> strings_of(const json& j, std::string_view what)
{
    if (!j.is_array())
        throw InvalidInput(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j)
        out.push_back(string_of(e, what));
    return out;
}

json rational_map(const std::map<EdgeId, Rational>& m)
{
    json out = json::object();
    for (const auto& [k, v] : m)
        out[k] = to_json(v);
    return out;
}

}  // namespace

json to_json(const Rational& r)
{
    return to_string(r);
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw InvalidInput("malformed rational \"" + j.get<std::string>() + "\"");
        }
    }
    throw InvalidInput("rationals must be \"num/den\" strings or integers, got " + j.dump());
}

json to_json(const Graph& g)
{
    json edges = json::array();
    for (const Edge& e : g.edges())
        edges.push_back({{"id", e.id}, {"d0", e.d0}, {"d1", e.d1}});
    return {{"vertices", g.vertices()}, {"edges", edges}};
}

Graph graph_from_json(const json& j)
{
    std::vector<VertexId> vertices = strings_of(field(j, "vertices"), "graph vertices");
    const json& edges = field(j, "edges");
    if (!edges.is_array())
        throw InvalidInput("graph edges must be an array");
    std::vector<Edge> out;
    for (const auto& e : edges)
        out.push_back({string_of(field(e, "id"), "edge id"), string_of(field(e, "d0"), "edge d0"),
                       string_of(field(e, "d1"), "edge d1")});
    return Graph(std::move(vertices), std::move(out));
}

json to_json(const Scenario& s)
{
    json out;
    if (const ConeStructure* c = s.cone())
        out["cone_of"] = to_json(c->base);
    out["edges"] = s.edges();
    json faces = json::object();
    for (std::size_t i = 0; i < s.edge_count(); ++i) {
        if (const auto& f = s.faces()[i])
            faces[s.edges()[i]] = {{"d0", f->d0}, {"d1", f->d1}};
    }
    out["faces"] = faces;
    json triangles = json::array();
    for (const Triangle& t : s.triangles())
        triangles.push_back({{"id", t.id}, {"d0", t.d0}, {"d1", t.d1}, {"d2", t.d2}});
    out["triangles"] = triangles;
    return out;
}

Scenario scenario_from_json(const json& j)
{
    if (!j.is_object())
        throw InvalidInput("scenario must be a JSON object");
    if (j.contains("cone_of")) {
        Scenario s = cone(graph_from_json(j["cone_of"]));
        if (j.contains("edges") && strings_of(j["edges"], "scenario edges") != s.edges())
            throw InvalidInput("scenario edges disagree with the cone of \"cone_of\"");
        return s;
    }
    std::vector<EdgeId> edges = strings_of(field(j, "edges"), "scenario edges");
    std::vector<std::optional<EdgeFaces>> faces(edges.size());
    if (j.contains("faces")) {
        const json& f = j["faces"];
        if (!f.is_object())
            throw InvalidInput("scenario faces must be an object keyed by edge id");
        for (const auto& [id, v] : f.items()) {
            auto it = std::find(edges.begin(), edges.end(), id);
            if (it == edges.end())
                throw InvalidInput("faces given for unknown edge \"" + id + "\"");
            faces[static_cast<std::size_t>(it - edges.begin())] =
                EdgeFaces{string_of(field(v, "d0"), "face d0"), string_of(field(v, "d1"), "face d1")};
        }
    }
    std::vector<Triangle> triangles;
    if (j.contains("triangles")) {
        if (!j["triangles"].is_array())
            throw InvalidInput("scenario triangles must be an array");
        for (const auto& t : j["triangles"])
            triangles.push_back({string_of(field(t, "id"), "triangle id"), string_of(field(t, "d0"), "triangle d0"),
                                 string_of(field(t, "d1"), "triangle d1"), string_of(field(t, "d2"), "triangle d2")});
    }
    return Scenario(std::move(edges), std::move(faces), std::move(triangles));
}

json to_json(const ClassicalDisk& d)
{
    json out = to_json(d.scenario);
    out["boundary"] = d.boundary;
    out["elimination_order"] = d.elimination_order;
    return out;
}

json to_json(const DiskBouquet& b)
{
    json out = to_json(b.scenario);
    out["shared"] = b.shared;
    out["sizes"] = b.sizes;
    out["disk_boundaries"] = b.disk_boundaries;
    out["boundary"] = b.boundary;
    out["elimination_order"] = b.elimination_order;
    return out;
}

json to_json(const EdgeDistribution& p)
{
    json values = json::object();
    for (std::size_t i = 0; i < p.values().size(); ++i)
        values[p.scenario().edges()[i]] = to_json(p[i]);
    return {{"values", values}};
}

namespace {

std::map<EdgeId, Rational> values_of(const json& j)
{
    const json& v = j.is_object() && j.contains("values") ? j["values"] : j;
    if (!v.is_object())
        throw InvalidInput("distribution values must be an object keyed by edge id");
    std::map<EdgeId, Rational> out;
    for (const auto& [k, x] : v.items())
        out[k] = rational_from_json(x);
    return out;
}

}  // namespace

EdgeDistribution distribution_from_json(const json& j, const ScenarioPtr& s)
{
    return EdgeDistribution::from_map(s, values_of(j));
}

EdgeDistribution boundary_from_json(const json& j, const std::vector<EdgeId>& edges)
{
    auto values = values_of(j);
    std::vector<Rational> v;
    for (const auto& e : edges) {
        auto it = values.find(e);
        if (it == values.end())
            throw InvalidInput("boundary values are missing edge \"" + e + "\"");
        v.push_back(it->second);
        values.erase(it);
    }
    if (!values.empty())
        throw InvalidInput("boundary values name non-boundary edge \"" + values.begin()->first + "\"");
    return EdgeDistribution(share(Scenario(edges, {}, {})), std::move(v));
}

json to_json(const LinearInequality& r)
{
    json out{{"coeffs", rational_map(r.coeffs)}, {"rhs", to_json(r.rhs)}, {"sense", "geq"}};
    if (!r.label.empty())
        out["label"] = r.label;
    return out;
}

LinearInequality inequality_from_json(const json& j)
{
    LinearInequality r;
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_object())
        throw InvalidInput("inequality coeffs must be an object keyed by edge id");
    for (const auto& [k, v] : coeffs.items())
        r.add(k, rational_from_json(v));
    r.rhs = j.contains("rhs") ? rational_from_json(j["rhs"]) : Rational(0);
    std::string sense = j.contains("sense") ? string_of(j["sense"], "sense") : "geq";
    if (sense == "leq") {
        for (auto& [k, v] : r.coeffs)
            v = -v;
        r.rhs = -r.rhs;
    } else if (sense != "geq") {
        throw InvalidInput("inequality sense must be \"geq\" or \"leq\"");
    }
    if (j.contains("label"))
        r.label = string_of(j["label"], "label");
    return r;
}

std::vector<LinearInequality> inequalities_from_json(const json& j)
{
    std::vector<LinearInequality> out;
    if (j.is_array()) {
        for (const auto& r : j)
            out.push_back(inequality_from_json(r));
    } else if (j.is_object() && j.contains("rows")) {
        return inequalities_from_json(j["rows"]);
    } else {
        out.push_back(inequality_from_json(j));
    }
    return out;
}

json to_json(const InequalitySystem& sys)
{
    json rows = json::array();
    for (const auto& r : sys.rows)
        rows.push_back(to_json(r));
    return {{"mode", std::string(to_string(sys.mode))}, {"variables", sys.variables}, {"rows", rows}};
}

InequalitySystem system_from_json(const json& j)
{
    InequalitySystem sys;
    sys.mode = j.contains("mode") ? parse_mode(string_of(j["mode"], "mode")) : Mode::expectation;
    sys.variables = strings_of(field(j, "variables"), "variables");
    if (std::set<EdgeId>(sys.variables.begin(), sys.variables.end()).size() != sys.variables.size())
        throw InvalidInput("system variables must be distinct");
    sys.rows = inequalities_from_json(field(j, "rows"));
    return sys;
}

json to_json(const std::vector<EliminationStep>& trace)
{
    json out = json::array();
    for (const auto& s : trace) {
        json lower = json::array(), upper = json::array();
        for (const auto& r : s.lower)
            lower.push_back(to_json(r));
        for (const auto& r : s.upper)
            upper.push_back(to_json(r));
        out.push_back({{"variable", s.variable}, {"lower", lower}, {"upper", upper}});
    }
    return out;
}

json to_json(const CollapseMap& cm)
{
    json edge_map = json::object();
    for (std::size_t e = 0; e < cm.source.edges().size(); ++e) {
        const auto& img = cm.edge_map[e];
        edge_map[cm.source.edges()[e].id] = img ? json(*img) : json(nullptr);
    }
    json vertex_map = json::object();
    for (std::size_t v = 0; v < cm.source.vertices().size(); ++v)
        vertex_map[cm.source.vertices()[v]] = cm.vertex_map[v];
    return {{"source", to_json(cm.source)},
            {"target", to_json(cm.target)},
            {"edge_map", edge_map},
            {"vertex_map", vertex_map},
            {"collapsed", cm.collapsed_edges()}};
}

json to_json(const OutcomeAssignment& a)
{
    return a.bit_string();
}

json to_json(const ContextualityCertificate& c)
{
    json out{{"verdict", std::string(to_string(c.verdict))}};
    if (c.verdict == Verdict::noncontextual) {
        json mixture = json::object();
        for (const auto& [a, w] : c.mixture)
            mixture[a.bit_string()] = to_json(w);
        out["mixture"] = mixture;
    }
    if (c.separating)
        out["separating"] = to_json(*c.separating);
    if (c.farkas)
        out["farkas"] = to_json(*c.farkas);
    return out;
}

json read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open \"" + path.string() + "\"");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput("\"" + path.string() + "\" is not valid JSON: " + e.what());
    }
}

}  // namespace ctxlab::json_io
