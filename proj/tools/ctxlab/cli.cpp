#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "ctxlab/collapse_bell.hpp"
#include "ctxlab/fm.hpp"
#include "ctxlab/json_io.hpp"
#include "ctxlab/polytope.hpp"

namespace ctxlab::cli {

namespace {

using json_io::json;
using json_io::to_json;

constexpr const char* schema = "ctxlab/1";

// Accepts a bare document, a command envelope, or an object wrapping it under `key`.
json unwrap(json j, std::string_view key)
{
    if (j.is_object() && j.contains("schema") && j.contains("payload"))
        j = j["payload"];
    if (j.is_object() && j.contains(key))
        j = j[std::string(key)];
    return j;
}

json load(const std::string& path, std::string_view key)
{
    return unwrap(json_io::read_file(path), key);
}

ScenarioPtr load_scenario(const std::string& path)
{
    json j = load(path, "scenario");
    return share(json_io::scenario_from_json(j));
}

Graph load_graph(const std::string& path)
{
    json j = load(path, "graph");
    if (j.is_object() && j.contains("cone_of"))
        j = j["cone_of"];
    return json_io::graph_from_json(j);
}

EdgeDistribution load_distribution(const std::string& path, const ScenarioPtr& s)
{
    return json_io::distribution_from_json(load(path, "distribution"), s);
}

std::vector<LinearInequality> load_rows(const std::string& path)
{
    return json_io::inequalities_from_json(load(path, "rows"));
}

json rows_json(const std::vector<LinearInequality>& rows)
{
    json out = json::array();
    for (const auto& r : rows)
        out.push_back(to_json(r));
    return out;
}

json contextual_by_circles(const EdgeDistribution& p)
{
    FineVerdict v = fine_check_flower(p);
    json out{{"method", "circles"}, {"verdict", std::string(to_string(v.verdict))}};
    if (v.circle)
        out["circle"] = v.circle->edges;
    if (v.violated)
        out["violated"] = to_json(*v.violated);
    return out;
}

json contextual_by_lp(const EdgeDistribution& p, const Limits& limits)
{
    json out{{"method", "lp"}};
    json cert = to_json(is_noncontextual_lp(p, limits));
    out["verdict"] = cert["verdict"];
    cert.erase("verdict");
    out["certificate"] = cert;
    return out;
}

bool circles_apply(const Scenario& s)
{
    return s.cone() && is_circle_or_flower(s.cone()->base);
}

json envelope(const std::string& command, std::string_view status, json payload, const json& diagnostics)
{
    return {{"schema", schema},
            {"command", command},
            {"status", std::string(status)},
            {"payload", std::move(payload)},
            {"diagnostics", diagnostics}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact workbench for simplicial contextuality scenarios", "ctxlab"};
    app.require_subcommand(1);

    Limits limits = Limits::from_environment();
    json diagnostics = json::array();
    std::string command;
    std::function<json()> action;

    auto verb = [&](CLI::App* group, const std::string& name, const std::string& help) {
        return group->add_subcommand(name, help);
    };
    auto set = [&](CLI::App* sub, std::function<json()> f) {
        sub->callback([&action, f = std::move(f)] { action = f; });
    };

    // positional and option storage shared by the verbs
    std::string file1, file2;
    int n = 0, m = 0;
    std::vector<int> sizes;
    std::vector<std::string> names;
    std::string method = "auto", mode_text = "probability", pattern, trace_path;
    bool adjacency = false, lp_prune = false, drop_trivial = false;

    // scenario
    CLI::App* scenario = app.add_subcommand("scenario", "Build scenarios")->require_subcommand(1);
    {
        auto* c = verb(scenario, "cone", "Cone of a graph file");
        c->add_option("graph", file1, "Graph JSON")->required();
        set(c, [&] {
            Graph g = load_graph(file1);
            return json{{"graph", to_json(g)}, {"scenario", to_json(cone(g))}};
        });
        auto family = [&](const std::string& name, const std::string& help, std::function<Graph()> make) {
            auto* s = verb(scenario, name, help);
            return std::pair{s, make};
        };
        auto [circ, mk_circ] = family("circle", "Cone of the N-circle", [&] { return circle(n); });
        circ->add_option("--n", n, "Circle length")->required();
        auto [wedge, mk_wedge] = family("wedge", "Cone of a wedge of n loops", [&] { return wedge_circles(n); });
        wedge->add_option("--n", n, "Number of loops")->required();
        auto [flow, mk_flow] = family("flower", "Cone of a flower", [&] { return flower(sizes); });
        flow->add_option("--petals", sizes, "Petal lengths, comma separated")->required()->delimiter(',');
        auto [bip, mk_bip] = family("bipartite", "Cone of K_{m,n}", [&] { return complete_bipartite(m, n); });
        bip->add_option("--m", m, "Left part size")->required();
        bip->add_option("--n", n, "Right part size")->required();
        for (auto [sub, make] : {std::pair{circ, mk_circ}, {wedge, mk_wedge}, {flow, mk_flow}, {bip, mk_bip}}) {
            set(sub, [make] {
                Graph g = make();
                return json{{"graph", to_json(g)}, {"scenario", to_json(cone(g))}};
            });
        }
        auto* disk = verb(scenario, "disk", "Classical N-disk");
        disk->add_option("--n", n, "Boundary length")->required();
        set(disk, [&] { return json{{"scenario", to_json(classical_disk(n))}}; });
        auto* bouquet = verb(scenario, "bouquet", "Disks glued along one edge");
        bouquet->add_option("--sizes", sizes, "Disk sizes, comma separated")->required()->delimiter(',');
        set(bouquet, [&] { return json{{"scenario", to_json(disk_bouquet(sizes))}}; });
    }

    // ineq
    CLI::App* ineq = app.add_subcommand("ineq", "Inequality systems")->require_subcommand(1);
    {
        auto* h = verb(ineq, "hrep", "Triangle rows of a scenario");
        h->add_option("scenario", file1, "Scenario JSON")->required();
        set(h, [&] {
            HRep rep = h_representation(load_scenario(file1));
            return json{{"count", rep.rows.size()}, {"rows", rows_json(rep.rows)}};
        });
        auto* c = verb(ineq, "circle", "Circle inequalities");
        c->add_option("--n", n, "Circle length");
        c->add_option("--edges", names, "Edge ids, comma separated (default t1..tN)")->delimiter(',');
        c->add_option("--mode", mode_text, "probability or expectation")->capture_default_str();
        set(c, [&] {
            std::vector<EdgeId> edges = names;
            if (edges.empty()) {
                if (n < 1)
                    throw InvalidInput("give --n or --edges");
                for (int i = 1; i <= n; ++i)
                    edges.push_back("t" + std::to_string(i));
            } else if (n != 0 && static_cast<std::size_t>(n) != edges.size()) {
                throw InvalidInput("--n disagrees with the number of --edges");
            }
            InequalitySystem sys = convert(circle_inequalities(edges), parse_mode(mode_text));
            return to_json(sys);
        });
    }

    // fm
    CLI::App* fm = app.add_subcommand("fm", "Fourier-Motzkin elimination")->require_subcommand(1);
    {
        auto* e = verb(fm, "eliminate", "Eliminate variables in order");
        e->add_option("system", file1, "System JSON")->required();
        e->add_option("--vars", names, "Variables to eliminate, comma separated")->required()->delimiter(',');
        e->add_option("--trace", trace_path, "Write the elimination trace here");
        e->add_flag("--lp-prune", lp_prune, "Also drop LP-redundant rows");
        set(e, [&] {
            InequalitySystem sys = json_io::system_from_json(load(file1, "system"));
            std::vector<EliminationStep> trace;
            for (const auto& v : names) {
                EliminationStep step;
                sys = eliminate_variable(sys, v, &step, {.lp_redundancy = lp_prune});
                trace.push_back(std::move(step));
            }
            if (!trace_path.empty()) {
                std::ofstream f(trace_path);
                if (!f)
                    throw InvalidInput("cannot write \"" + trace_path + "\"");
                f << json_io::to_json(trace).dump(2) << '\n';
            }
            return json{{"eliminated", names}, {"system", to_json(sys)}};
        });
    }

    // extend
    CLI::App* extend = app.add_subcommand("extend", "Extend boundary values to a disk")->require_subcommand(1);
    {
        auto result = [](const ExtensionResult& r) {
            json out{{"extends", r.extends}};
            if (r.witness)
                out["witness"] = to_json(*r.witness);
            if (r.violated)
                out["violated"] = to_json(*r.violated);
            return out;
        };
        auto* d = verb(extend, "disk", "Classical N-disk");
        d->add_option("boundary", file1, "Boundary values JSON")->required();
        d->add_option("--n", n, "Boundary length")->required();
        set(d, [&, result] {
            ClassicalDisk disk = classical_disk(n);
            auto p = json_io::boundary_from_json(load(file1, "distribution"), disk.boundary);
            json out = result(extend_from_boundary(disk, p));
            out["boundary"] = disk.boundary;
            return out;
        });
        auto* b = verb(extend, "bouquet", "Disks glued along one edge");
        b->add_option("boundary", file1, "Boundary values JSON")->required();
        b->add_option("--sizes", sizes, "Disk sizes, comma separated")->required()->delimiter(',');
        set(b, [&, result] {
            DiskBouquet bq = disk_bouquet(sizes);
            auto p = json_io::boundary_from_json(load(file1, "distribution"), bq.boundary);
            json out = result(extend_from_boundary(bq, p));
            BouquetCheck quick = check_extension_bouquet(bq, p);
            json pairs = json::array();
            for (std::size_t i = 0; i < quick.violated_pairs.size(); ++i) {
                auto [a, c] = quick.violated_pairs[i];
                pairs.push_back({{"disks", {a, c}}, {"violated", to_json(quick.violated_rows[i])}});
            }
            out["composite_circles"] = composite_circles(bq);
            out["composite_violations"] = pairs;
            out["boundary"] = bq.boundary;
            return out;
        });
    }

    // check
    CLI::App* check = app.add_subcommand("check", "Checks on a distribution")->require_subcommand(1);
    {
        auto two_files = [&](CLI::App* sub) {
            sub->add_option("scenario", file1, "Scenario JSON")->required();
            sub->add_option("distribution", file2, "Distribution JSON")->required();
        };
        auto* v = verb(check, "validate", "Triangle nonnegativity");
        two_files(v);
        set(v, [&] {
            auto p = load_distribution(file2, load_scenario(file1));
            json violations = json::array();
            for (const auto& t : validate(p))
                violations.push_back({{"triangle", t.triangle}, {"a", t.a}, {"b", t.b}, {"value", to_json(t.value)}});
            return json{{"valid", violations.empty()}, {"violations", violations}};
        });
        auto* c = verb(check, "contextual", "Contextuality verdict");
        two_files(c);
        c->add_option("--method", method, "lp, circles or auto")
            ->check(CLI::IsMember({"lp", "circles", "auto"}))
            ->capture_default_str();
        set(c, [&] {
            auto p = load_distribution(file2, load_scenario(file1));
            require_valid(p);
            bool circles = method == "circles" || (method == "auto" && circles_apply(p.scenario()));
            return circles ? contextual_by_circles(p) : contextual_by_lp(p, limits);
        });
        auto* s = verb(check, "strong", "Strong contextuality");
        two_files(s);
        set(s, [&] {
            auto p = load_distribution(file2, load_scenario(file1));
            require_valid(p);
            auto sup = support(p, limits);
            json bits = json::array();
            for (const auto& a : sup)
                bits.push_back(a.bit_string());
            return json{{"strongly_contextual", sup.empty()}, {"support", bits}};
        });
        auto* x = verb(check, "vertex", "Vertex test by tight-row rank");
        two_files(x);
        set(x, [&] {
            auto s = load_scenario(file1);
            auto p = load_distribution(file2, s);
            require_valid(p);
            HRep h = h_representation(s);
            json tight = json::array();
            for (std::size_t i : tight_set(h, p))
                tight.push_back(h.rows[i].label);
            return json{{"vertex", is_vertex(h, p)},
                        {"rank", rank_of(h, p)},
                        {"edges", s->edge_count()},
                        {"tight", tight}};
        });
    }

    // vertices
    CLI::App* vertices = app.add_subcommand("vertices", "Vertex enumeration")->require_subcommand(1);
    {
        auto* e = verb(vertices, "enumerate", "Double description");
        e->add_option("scenario", file1, "Scenario JSON")->required();
        e->add_flag("--adjacency", adjacency, "Also list adjacent vertex pairs");
        set(e, [&] {
            VertexEnumeration ve = enumerate_vertices(load_scenario(file1), adjacency, limits);
            json list = json::array();
            std::size_t det = 0;
            for (const auto& v : ve.vertices) {
                json j = to_json(v);
                j["deterministic"] = v.is_deterministic();
                det += v.is_deterministic();
                list.push_back(j);
            }
            json out{{"count", ve.vertices.size()}, {"deterministic", det}, {"vertices", list}};
            if (adjacency)
                out["adjacency"] = ve.adjacency;
            return out;
        });
    }

    // collapse
    CLI::App* coll = app.add_subcommand("collapse", "Collapsing maps")->require_subcommand(1);
    {
        auto edges_option = [&](CLI::App* sub) {
            sub->add_option("--edges", names, "Edges to collapse, comma separated")->required()->delimiter(',');
        };
        auto* g = verb(coll, "graph", "Collapse edges of a graph");
        g->add_option("graph", file1, "Graph JSON")->required();
        edges_option(g);
        set(g, [&] { return to_json(collapse(load_graph(file1), names)); });
        auto* d = verb(coll, "distribution", "Pull a distribution on the collapsed cone back to the source cone");
        d->add_option("graph", file1, "Source graph JSON")->required();
        d->add_option("distribution", file2, "Distribution on the cone of the collapsed graph")->required();
        edges_option(d);
        set(d, [&] {
            ConePushforward f = cone_pushforward(collapse(load_graph(file1), names));
            auto q = pushforward_distribution(f, load_distribution(file2, f.target));
            return json{{"scenario", to_json(*f.source)}, {"distribution", to_json(q)}};
        });
        auto* i = verb(coll, "inequality", "Push rows on the source cone to the collapsed cone");
        i->add_option("graph", file1, "Source graph JSON")->required();
        i->add_option("rows", file2, "Row or rows JSON (probability coordinates)")->required();
        edges_option(i);
        i->add_flag("--drop-trivial", drop_trivial, "Omit rows implied by the box");
        set(i, [&] {
            ConePushforward f = cone_pushforward(collapse(load_graph(file1), names));
            json rows = json::array();
            for (const auto& r : load_rows(file2)) {
                LinearInequality img = pushforward_inequality(f, r);
                bool trivial = is_box_trivial(img, Mode::probability);
                if (trivial && drop_trivial)
                    continue;
                json j = to_json(img);
                j["trivial"] = trivial;
                rows.push_back(j);
            }
            return json{{"scenario", to_json(*f.target)}, {"rows", rows}};
        });
    }

    // generate
    CLI::App* gen = app.add_subcommand("generate", "Contextual vertices")->require_subcommand(1);
    {
        auto* pr = verb(gen, "pr", "PR boxes on the cone of the N-circle");
        pr->add_option("--n", n, "Circle length")->required();
        pr->add_option("--pattern", pattern, "Signs per circle edge, e.g. +++- (default: all)");
        set(pr, [&] {
            std::vector<std::string> patterns;
            if (!pattern.empty()) {
                patterns.push_back(pattern);
            } else {
                if (n < 1 || n > 20)
                    throw GuardrailExceeded("listing every PR box is limited to N <= 20");
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                    std::string p;
                    for (int k = 0; k < n; ++k)
                        p += mask >> k & 1u ? '-' : '+';
                    if (std::count(p.begin(), p.end(), '-') % 2 == 1)
                        patterns.push_back(p);
                }
            }
            json list = json::array();
            std::optional<Scenario> s;
            for (const auto& p : patterns) {
                EdgeDistribution d = pr_box(n, p);
                json j = to_json(d);
                j["pattern"] = p;
                list.push_back(j);
                s = d.scenario();
            }
            json out{{"scenario", to_json(*s)}, {"count", list.size()}};
            if (pattern.empty())
                out["distributions"] = list;
            else
                out["distribution"] = list.front();
            return out;
        });
        auto* v = verb(gen, "vertices", "Contextual vertices by collapsing to a wedge");
        v->add_option("graph", file1, "Graph JSON")->required();
        set(v, [&] {
            Graph g = load_graph(file1);
            auto list = generate_contextual_vertices(g, limits);
            json out = json::array();
            for (const auto& d : list) {
                json j = to_json(d);
                j["certificate"] = "contextual-vertex";
                out.push_back(j);
            }
            return json{{"scenario", to_json(cone(g))}, {"count", list.size()}, {"vertices", out}};
        });
    }

    // orbit
    CLI::App* orb = app.add_subcommand("orbit", "Orbits under deterministic distributions")->require_subcommand(1);
    {
        auto* d = verb(orb, "distribution", "Orbit of a distribution");
        d->add_option("scenario", file1, "Scenario JSON")->required();
        d->add_option("distribution", file2, "Distribution JSON")->required();
        set(d, [&] {
            auto p = load_distribution(file2, load_scenario(file1));
            json list = json::array();
            for (const auto& q : orbit(p, limits))
                list.push_back(to_json(q));
            return json{{"count", list.size()}, {"orbit", list}};
        });
        auto* i = verb(orb, "inequality", "Orbit of a row");
        i->add_option("scenario", file1, "Scenario JSON")->required();
        i->add_option("row", file2, "Row JSON (probability coordinates)")->required();
        set(i, [&] {
            auto rows = load_rows(file2);
            if (rows.size() != 1)
                throw InvalidInput("orbit inequality takes exactly one row");
            auto list = inequality_orbit(load_scenario(file1), rows.front(), limits);
            return json{{"count", list.size()}, {"orbit", rows_json(list)}};
        });
    }

    // probe
    CLI::App* probe = app.add_subcommand("probe", "Experimental checks")->require_subcommand(1);
    {
        auto* l = verb(probe, "loop-support", "Does the row's base-edge support form a closed walk");
        l->add_option("graph", file1, "Graph JSON")->required();
        l->add_option("row", file2, "Row JSON")->required();
        set(l, [&] {
            Graph g = load_graph(file1);
            auto rows = load_rows(file2);
            json out = json::array();
            for (const auto& r : rows) {
                json support = json::array();
                for (const Edge& e : g.edges()) {
                    if (r.coefficient(e.id) != 0)
                        support.push_back(e.id);
                }
                out.push_back({{"loop_support", loop_support_check(r, g)}, {"support", support}});
            }
            return json{{"results", out}};
        });
    }

    std::vector<const char*> argv{"ctxlab"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    auto name_command = [&] {
        for (const CLI::App* group : app.get_subcommands()) {
            command = group->get_name();
            for (const CLI::App* sub : group->get_subcommands())
                command += " " + sub->get_name();
        }
    };
    auto fail = [&](std::string_view kind, const std::string& message, int code) {
        json payload{{"error", std::string(kind)}, {"message", message}};
        out << envelope(command, "error", payload, diagnostics).dump(2) << '\n';
        return code;
    };
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        name_command();
        return fail("usage", e.what(), exit_usage);
    }
    name_command();
    try {
        json payload = action();
        out << envelope(command, "ok", std::move(payload), diagnostics).dump(2) << '\n';
        return exit_ok;
    } catch (const GuardrailExceeded& e) {
        return fail("guardrail", e.what(), exit_guardrail);
    } catch (const InvalidInput& e) {
        return fail("invalid-input", e.what(), exit_usage);
    } catch (const json::exception& e) {
        return fail("invalid-input", e.what(), exit_usage);
    } catch (const std::invalid_argument& e) {
        return fail("invalid-input", e.what(), exit_usage);
    }
}

}  // namespace ctxlab::cli
