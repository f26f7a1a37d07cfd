#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "hcat/error.hpp"
#include "hcat/instances.hpp"
#include "hcat/io.hpp"
#include "hcat/suites.hpp"

using namespace hcat;
namespace fs = std::filesystem;

namespace {

struct Common {
    SuiteOptions suite;
    std::string out;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.suite.seed, "random seed");
    app->add_option("--tol", c.suite.tol, "tolerance (suite default when omitted)")->check(CLI::PositiveNumber);
    app->add_option("--n", c.suite.n, "sample count (suite default when omitted)")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "write the JSON report here, plus a .csv mirror");
    app->add_flag("--negative-control", c.suite.negative_control, "run only the negative control");
}

int emit(const Report& r, const Common& c) {
    std::string json = r.to_json().dump(2) + "\n";
    std::cout << json;
    if (!c.out.empty()) {
        std::ofstream(c.out) << json;
        fs::path csv(c.out);
        csv.replace_extension(".csv");
        std::ofstream(csv) << r.to_csv();
    }
    return r.passed() ? 0 : 1;
}

std::vector<NamedSpace> spaces_from(const std::string& path, std::optional<double> kappa) {
    if (path.empty()) {
        auto all = bundled_spaces();
        if (kappa)
            for (auto& s : all) s.kappa = *kappa;
        return all;
    }
    auto s = space_from_json(load_json(path));
    double k = kappa ? *kappa : s->curvature_bound();
    return {{fs::path(path).stem().string(), s, k}};
}

std::vector<EdgeFlow> flows_in_dir(const GraphPtr& g, const std::string& dir) {
    if (!fs::is_directory(dir)) fail(ErrorCode::ConfigError, "not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<EdgeFlow> out;
    for (const auto& f : files) out.push_back(flow_from_json(g, load_json(f.string())));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calculus on CAT(kappa) spaces: verification suites and demos"};
    app.require_subcommand(1);

    Common common;
    std::optional<double> kappa;
    std::string space_file, measure_file, graph_file, flow_file, flows_dir;
    int grid = 9;

    auto* verify = app.add_subcommand("verify", "comparison, angle, cone calculus and curve suites");
    verify->require_subcommand(1);
    std::string which;
    for (const char* name : {"cat", "angles", "cone-calc", "curves"}) {
        auto* sub = verify->add_subcommand(name);
        sub->add_option("--space", space_file, "space descriptor (bundled instances when omitted)");
        if (std::string(name) == "cat") sub->add_option("--kappa", kappa, "comparison curvature");
        add_common(sub, common);
        sub->callback([&which, name] { which = name; });
    }

    auto* bary = app.add_subcommand("barycenter", "barycenter solver with certificates");
    bary->add_option("--space", space_file);
    bary->add_option("--measure", measure_file);
    add_common(bary, common);

    auto* sup = app.add_subcommand("superpose", "path superposition of flows");
    sup->add_option("--graph", graph_file);
    sup->add_option("--flow", flow_file);
    add_common(sup, common);

    auto* emb = app.add_subcommand("embed", "embedding of a flow into the tangent bundle");
    emb->add_option("--graph", graph_file);
    emb->add_option("--flow", flow_file);
    emb->add_option("--grid", grid, "grid points per edge")->check(CLI::PositiveNumber);
    add_common(emb, common);

    auto* hil = app.add_subcommand("hilbert", "parallelogram law for the derivation norm");
    hil->add_option("--graph", graph_file, "graph (bundled 15-edge tree when omitted)");
    hil->add_option("--flows", flows_dir, "directory of flow files (random flows when omitted)");
    add_common(hil, common);

    auto* cex = app.add_subcommand("counterexample", "lip-based parallelogram on a Dirac measure");
    add_common(cex, common);

    auto* gen = app.add_subcommand("generate", "print an instance as JSON");
    gen->require_subcommand(1);
    int edges = 15, nodes = 8, extra = 2;
    std::uint64_t gseed = 0;
    auto* gtree = gen->add_subcommand("tree", "random tree space");
    gtree->add_option("--edges", edges);
    gtree->add_option("--seed", gseed);
    auto* ggraph = gen->add_subcommand("graph", "random metric graph");
    ggraph->add_option("--nodes", nodes);
    ggraph->add_option("--extra", extra, "edges beyond a spanning tree");
    ggraph->add_option("--seed", gseed);
    auto* gflow = gen->add_subcommand("flow", "random flow on a graph");
    gflow->add_option("--graph", graph_file)->required();
    gflow->add_option("--seed", gseed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            auto spaces = spaces_from(space_file, kappa);
            if (which == "cat") return emit(suite_cat(spaces, common.suite), common);
            if (which == "angles") return emit(suite_angles(spaces, common.suite), common);
            if (which == "cone-calc") return emit(suite_cone_calc(spaces, common.suite), common);
            return emit(suite_curves(spaces, common.suite), common);
        }
        if (bary->parsed()) {
            if (space_file.empty() != measure_file.empty())
                fail(ErrorCode::ConfigError, "--space and --measure go together");
            if (space_file.empty()) return emit(suite_barycenter(common.suite), common);
            auto s = space_from_json(load_json(space_file));
            return emit(barycenter_report(measure_from_json(s, load_json(measure_file)), common.suite), common);
        }
        if (sup->parsed() || emb->parsed()) {
            if (graph_file.empty() != flow_file.empty())
                fail(ErrorCode::ConfigError, "--graph and --flow go together");
            std::vector<EdgeFlow> flows;
            if (!graph_file.empty()) {
                auto g = graph_from_json(load_json(graph_file));
                flows.push_back(flow_from_json(g, load_json(flow_file)));
            } else if (sup->parsed()) {
                flows = bundled_flows(common.suite.n > 0 ? common.suite.n : 50, common.suite.seed);
            } else {
                int count = common.suite.n > 0 ? common.suite.n : 6;
                for (int k = 0; k < count; ++k) {
                    std::uint64_t s = common.suite.seed + k;
                    flows.push_back(random_flow(tree_graph(*make_random_tree(15, s)), s + 3));
                    flows.push_back(random_flow(random_metric_graph(9, 3, s + 50), s + 3));
                }
            }
            if (sup->parsed()) return emit(suite_superpose(flows, common.suite), common);
            return emit(suite_embed(flows, grid, common.suite), common);
        }
        if (hil->parsed()) {
            GraphPtr g = graph_file.empty() ? bundled_tree15() : graph_from_json(load_json(graph_file));
            std::vector<EdgeFlow> flows;
            if (!flows_dir.empty()) flows = flows_in_dir(g, flows_dir);
            return emit(suite_hilbert(g, flows, common.suite), common);
        }
        if (cex->parsed()) return emit(suite_counterexample(common.suite), common);
        if (gtree->parsed()) {
            auto t = make_random_tree(edges, gseed);
            auto j = graph_to_json(MetricGraph(t->geometry(), {}, t->names()));
            j.erase("density");
            j["type"] = "tree";
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (ggraph->parsed()) {
            std::cout << graph_to_json(*random_metric_graph(nodes, extra, gseed)).dump(2) << "\n";
            return 0;
        }
        if (gflow->parsed()) {
            auto g = graph_from_json(load_json(graph_file));
            std::cout << flow_to_json(random_flow(g, gseed)).dump(2) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ConfigError ? 2 : 1;
    }
    return 1;
}
