#include <catch_amalgamated.hpp>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "ctxlab/json_io.hpp"
#include "support.hpp"

using namespace ctxlab;
using json_io::json;
using testsupport::random_mixture;
using testsupport::uniform_int;

namespace {

struct Result {
    int code;
    std::string text;
    json doc;
};

Result ctxlab_run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    Result r{code, out.str(), {}};
    if (!r.text.empty() && r.text.front() == '{')
        r.doc = json::parse(r.text);
    return r;
}

std::filesystem::path workdir()
{
    static std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / ("ctxlab_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write(const std::string& name, const json& j)
{
    auto path = workdir() / name;
    std::ofstream(path) << j.dump(2);
    return path.string();
}

std::string write_text(const std::string& name, const std::string& text)
{
    auto path = workdir() / name;
    std::ofstream(path) << text;
    return path.string();
}

json payload(const Result& r)
{
    REQUIRE(r.code == 0);
    REQUIRE(r.doc["schema"] == "ctxlab/1");
    REQUIRE(r.doc["status"] == "ok");
    return r.doc["payload"];
}

std::set<LinearInequality> rows_of(const json& rows)
{
    std::set<LinearInequality> out;
    for (const auto& r : rows)
        out.insert(normalize(json_io::inequality_from_json(r)));
    return out;
}

std::set<LinearInequality> chsh_rows()
{
    std::set<LinearInequality> out;
    for (unsigned mask = 0; mask < 16; ++mask) {
        if (std::popcount(mask) % 2 == 0)
            continue;
        LinearInequality r;
        r.rhs = -2;
        for (int i = 0; i < 4; ++i) {
            int s = mask >> i & 1u ? -1 : 1;
            r.add("t" + std::to_string(i + 1), 2 * s);
            r.rhs += s;
        }
        out.insert(normalize(r));
    }
    return out;
}

}  // namespace

TEST_CASE("envelope and exit codes", "[cli]")
{
    auto r = ctxlab_run({"ineq", "circle", "--n", "3"});
    CHECK(r.code == 0);
    CHECK(r.doc["schema"] == "ctxlab/1");
    CHECK(r.doc["command"] == "ineq circle");
    CHECK(r.doc["status"] == "ok");
    CHECK(r.doc["diagnostics"].is_array());

    auto bad = ctxlab_run({"frobnicate"});
    CHECK(bad.code == cli::exit_usage);
    CHECK(bad.doc["status"] == "error");
    CHECK(bad.doc["payload"]["error"] == "usage");

    auto missing = ctxlab_run({"vertices", "enumerate", (workdir() / "nope.json").string()});
    CHECK(missing.code == cli::exit_usage);
    CHECK(missing.doc["payload"]["error"] == "invalid-input");

    auto garbage = ctxlab_run({"vertices", "enumerate", write_text("garbage.json", "{not json")});
    CHECK(garbage.code == cli::exit_usage);

    auto help = ctxlab_run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.text.find("scenario") != std::string::npos);
}

TEST_CASE("vertex enumeration of the CHSH cone", "[cli]")
{
    auto s = payload(ctxlab_run({"scenario", "circle", "--n", "4"}));
    std::string chsh = write("chsh.json", s["scenario"]);
    auto v = payload(ctxlab_run({"vertices", "enumerate", chsh, "--adjacency"}));
    CHECK(v["count"] == 24);
    CHECK(v["deterministic"] == 16);
    CHECK(v["vertices"].size() == 24);
    CHECK(v["adjacency"].is_array());

    // the whole envelope is accepted as input too
    std::string wrapped = write("chsh_env.json", ctxlab_run({"scenario", "circle", "--n", "4"}).doc);
    CHECK(payload(ctxlab_run({"vertices", "enumerate", wrapped}))["count"] == 24);
}

TEST_CASE("circle rows from the command line", "[cli]")
{
    auto p = payload(ctxlab_run({"ineq", "circle", "--n", "4"}));
    CHECK(p["mode"] == "probability");
    CHECK(p["rows"].size() == 8);
    CHECK(rows_of(p["rows"]) == chsh_rows());
    auto e = payload(ctxlab_run({"ineq", "circle", "--edges", "a,b,c", "--mode", "expectation"}));
    CHECK(e["variables"] == json({"a", "b", "c"}));
    CHECK(e["rows"].size() == 4);
    CHECK(ctxlab_run({"ineq", "circle"}).code == cli::exit_usage);
    CHECK(ctxlab_run({"ineq", "circle", "--n", "3", "--mode", "odds"}).code == cli::exit_usage);
}

TEST_CASE("auto method agrees with the LP on flowers", "[cli]")
{
    auto s = payload(ctxlab_run({"scenario", "flower", "--petals", "2,2,2"}));
    std::string sfile = write("flower.json", s["scenario"]);
    auto scenario = share(json_io::scenario_from_json(s["scenario"]));
    std::vector<EdgeDistribution> pool = testsupport::deterministic_points(scenario);
    for (unsigned mask = 0; mask < 64; mask += 7) {
        std::string pattern;
        for (int i = 0; i < 6; ++i)
            pattern += mask >> i & 1u ? '-' : '+';
        pool.push_back(p_pm_element(scenario, pattern));
    }
    int contextual = 0;
    for (int i = 0; i < 25; ++i) {
        auto p = random_mixture(pool, static_cast<std::size_t>(uniform_int(1, 3)));
        std::string pfile = write("p.json", json_io::to_json(p));
        auto a = payload(ctxlab_run({"check", "contextual", sfile, pfile, "--method", "auto"}));
        auto l = payload(ctxlab_run({"check", "contextual", sfile, pfile, "--method", "lp"}));
        auto c = payload(ctxlab_run({"check", "contextual", sfile, pfile, "--method", "circles"}));
        CHECK(a["method"] == "circles");
        CHECK(a["verdict"] == l["verdict"]);
        CHECK(c["verdict"] == l["verdict"]);
        contextual += l["verdict"] == "contextual";
    }
    CHECK(contextual > 0);

    // circles are refused where they do not apply; auto falls back to the LP
    auto k = payload(ctxlab_run({"scenario", "bipartite", "--m", "2", "--n", "2"}));
    auto w = payload(ctxlab_run({"scenario", "wedge", "--n", "2"}));
    std::string wfile = write("wedge.json", w["scenario"]);
    std::string half = write("half.json", json_io::to_json(EdgeDistribution::constant(
                                              share(json_io::scenario_from_json(w["scenario"])), Rational(1, 2))));
    CHECK(payload(ctxlab_run({"check", "contextual", wfile, half}))["method"] == "lp");
    auto refused = ctxlab_run({"check", "contextual", wfile, half, "--method", "circles"});
    CHECK(refused.code == cli::exit_usage);
    CHECK(k["scenario"]["edges"].size() == 8);
}

TEST_CASE("output is byte-identical across runs", "[cli]")
{
    auto s = payload(ctxlab_run({"scenario", "circle", "--n", "3"}));
    std::string sfile = write("c3.json", s["scenario"]);
    auto a = ctxlab_run({"vertices", "enumerate", sfile, "--adjacency"});
    auto b = ctxlab_run({"vertices", "enumerate", sfile, "--adjacency"});
    CHECK(a.text == b.text);
    auto g = ctxlab_run({"generate", "pr", "--n", "5"});
    CHECK(g.text == ctxlab_run({"generate", "pr", "--n", "5"}).text);
    CHECK(payload(g)["count"] == 16);
}

TEST_CASE("guardrail exit code", "[cli]")
{
    auto s = payload(ctxlab_run({"scenario", "circle", "--n", "4"}));
    std::string sfile = write("chsh_g.json", s["scenario"]);
    auto pr = payload(ctxlab_run({"generate", "pr", "--n", "4", "--pattern", "+++-"}));
    std::string pfile = write("pr.json", pr);
    ::setenv("CTXLAB_GUARDRAIL", "10", 1);
    auto r = ctxlab_run({"check", "contextual", sfile, pfile, "--method", "lp"});
    auto circles = ctxlab_run({"check", "contextual", sfile, pfile, "--method", "circles"});
    ::unsetenv("CTXLAB_GUARDRAIL");
    CHECK(r.code == cli::exit_guardrail);
    CHECK(r.doc["payload"]["error"] == "guardrail");
    CHECK(circles.code == 0);
    CHECK(ctxlab_run({"check", "contextual", sfile, pfile, "--method", "lp"}).code == 0);
}

TEST_CASE("distribution checks", "[cli]")
{
    auto s = payload(ctxlab_run({"scenario", "circle", "--n", "4"}));
    std::string sfile = write("chsh_c.json", s["scenario"]);
    std::string pfile = write("pr_c.json", payload(ctxlab_run({"generate", "pr", "--n", "4", "--pattern", "-+++"})));
    auto v = payload(ctxlab_run({"check", "validate", sfile, pfile}));
    CHECK(v["valid"] == true);
    auto strong = payload(ctxlab_run({"check", "strong", sfile, pfile}));
    CHECK(strong["strongly_contextual"] == true);
    auto vert = payload(ctxlab_run({"check", "vertex", sfile, pfile}));
    CHECK(vert["vertex"] == true);
    CHECK(vert["rank"] == 8);
    auto lp = payload(ctxlab_run({"check", "contextual", sfile, pfile, "--method", "lp"}));
    CHECK(lp["verdict"] == "contextual");
    CHECK(lp["certificate"].contains("separating"));

    json bad = json_io::to_json(EdgeDistribution::constant(share(json_io::scenario_from_json(s["scenario"])), 0));
    std::string badfile = write("bad.json", bad);
    auto inv = payload(ctxlab_run({"check", "validate", sfile, badfile}));
    CHECK(inv["valid"] == false);
    CHECK(inv["violations"].size() > 0);
    CHECK(ctxlab_run({"check", "contextual", sfile, badfile}).code == cli::exit_usage);

    auto orb = payload(ctxlab_run({"orbit", "distribution", sfile, pfile}));
    CHECK(orb["count"] == 8);
    json row{{"coeffs", {{"t1", "1"}, {"t2", "1"}, {"t3", "1"}, {"t4", "-1"}}}, {"rhs", "2"}, {"sense", "leq"}};
    auto orbi = payload(ctxlab_run({"orbit", "inequality", sfile, write("row.json", row)}));
    CHECK(orbi["count"] == 8);
    CHECK(rows_of(orbi["orbit"]) == chsh_rows());
}

TEST_CASE("elimination and extension commands", "[cli]")
{
    auto d = payload(ctxlab_run({"scenario", "disk", "--n", "4"}));
    CHECK(d["scenario"]["boundary"].size() == 4);
    std::string dfile = write("disk.json", d["scenario"]);
    auto h = payload(ctxlab_run({"ineq", "hrep", dfile}));
    CHECK(h["count"] == 8);
    json sys{{"mode", "probability"}, {"variables", d["scenario"]["edges"]}, {"rows", h["rows"]}};
    std::string trace = (workdir() / "trace.json").string();
    auto e = payload(ctxlab_run({"fm", "eliminate", write("sys.json", sys), "--vars", "z2", "--trace", trace}));
    CHECK(rows_of(e["system"]["rows"]) ==
          rows_of(payload(ctxlab_run({"ineq", "circle", "--edges", "tau1,tau2,tau3,tau4"}))["rows"]));
    json t = json_io::read_file(trace);
    REQUIRE(t.size() == 1);
    CHECK(t[0]["variable"] == "z2");
    CHECK(t[0]["lower"].size() + t[0]["upper"].size() == 8);

    json half{{"values", {{"tau1", "1/2"}, {"tau2", "1/2"}, {"tau3", "1/2"}, {"tau4", "1/2"}}}};
    auto ext = payload(ctxlab_run({"extend", "disk", write("half4.json", half), "--n", "4"}));
    CHECK(ext["extends"] == true);
    CHECK(ext["witness"]["values"]["z2"] == "1/2");
    json box{{"values", {{"tau1", 1}, {"tau2", 1}, {"tau3", 1}, {"tau4", 0}}}};
    auto no = payload(ctxlab_run({"extend", "disk", write("box4.json", box), "--n", "4"}));
    CHECK(no["extends"] == false);
    CHECK(no.contains("violated"));

    json bq{{"values", {{"d1.tau2", 1}, {"d1.tau3", 1}, {"d2.tau2", 1}, {"d2.tau3", 0}}}};
    auto b = payload(ctxlab_run({"extend", "bouquet", write("bq.json", bq), "--sizes", "3,3"}));
    CHECK(b["extends"] == false);
    CHECK(b["composite_violations"].size() == 1);
    CHECK(b["composite_circles"].size() == 1);
    CHECK(ctxlab_run({"extend", "disk", write("short.json", json{{"values", {{"tau1", 1}}}}), "--n", "4"}).code ==
          cli::exit_usage);
}

TEST_CASE("collapse, generation and probe commands", "[cli]")
{
    auto c4 = payload(ctxlab_run({"scenario", "circle", "--n", "4"}));
    std::string gfile = write("c4graph.json", c4["graph"]);
    auto cm = payload(ctxlab_run({"collapse", "graph", gfile, "--edges", "t4"}));
    CHECK(cm["edge_map"]["t4"].is_null());
    CHECK(cm["vertex_map"]["v4"] == "v1");
    CHECK(cm["target"]["edges"].size() == 3);

    auto rows = payload(ctxlab_run({"ineq", "circle", "--n", "4"}));
    auto img = payload(ctxlab_run({"collapse", "inequality", gfile, write("chsh_rows.json", rows), "--edges", "t4",
                                   "--drop-trivial"}));
    CHECK(img["rows"].size() == 4);
    CHECK(rows_of(img["rows"]) == rows_of(payload(ctxlab_run({"ineq", "circle", "--n", "3"}))["rows"]));

    json p{{"values", {{"t1", 1}, {"t2", 1}, {"t3", 0}, {"(c,v1)", "1/2"}, {"(c,v2)", "1/2"}, {"(c,v3)", "1/2"}}}};
    auto q = payload(ctxlab_run({"collapse", "distribution", gfile, write("p3.json", p), "--edges", "t4"}));
    CHECK(q["distribution"]["values"]["t4"] == "1");
    CHECK(q["distribution"]["values"]["(c,v4)"] == "1/2");

    auto gen = payload(ctxlab_run({"generate", "vertices", gfile}));
    CHECK(gen["count"] == 8);
    for (const auto& v : gen["vertices"])
        CHECK(v["certificate"] == "contextual-vertex");

    auto probe = payload(ctxlab_run({"probe", "loop-support", gfile, write("chsh_rows2.json", rows)}));
    CHECK(probe["results"].size() == 8);
    for (const auto& r : probe["results"])
        CHECK(r["loop_support"] == true);

    CHECK(ctxlab_run({"collapse", "graph", gfile, "--edges", "t1,t2,t3,t4"}).code == cli::exit_usage);
}
