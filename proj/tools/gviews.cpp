// gviews: load graphs, materialize views and collections, run analytics.
//
// Exit codes: 0 ok, 2 user error, 3 internal invariant violation.

#include "gviews/aggregate/aggregate.hpp"
#include "gviews/analytics/analytics.hpp"
#include "gviews/bench/generators.hpp"
#include "gviews/bench/report.hpp"
#include "gviews/bench/workspace.hpp"
#include "gviews/error.hpp"
#include "gviews/gvdl/binder.hpp"
#include "gviews/gvdl/parser.hpp"
#include "gviews/ordering/ordering.hpp"
#include "gviews/splitting/splitting.hpp"
#include "gviews/views/ebm.hpp"
#include "gviews/views/eds.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using namespace gviews;

namespace {

struct Globals {
    std::string workspace;
    unsigned threads = 1;
};

fs::path workspace_root(const Globals& g) {
    return g.workspace.empty() ? bench::Workspace::default_root() : fs::path(g.workspace);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

NodeId dense_node(const PropertyGraph& g, std::uint64_t external) {
    auto v = g.find_external(external);
    if (!v) throw Error(ErrorKind::UnknownSource, "node " + std::to_string(external) + " is not in the graph");
    return *v;
}

// --- load ------------------------------------------------------------------

struct LoadArgs {
    std::string name, nodes, edges;
};

int cmd_load(const Globals& gl, const LoadArgs& a) {
    bench::Workspace ws(workspace_root(gl));
    if (ws.graphs().count(a.name)) throw Error(ErrorKind::NameExists, "graph " + a.name);
    auto g = load_graph(a.nodes, a.edges);
    ws.add_graph({a.name, "base", "", 0, 0}, g);
    std::printf("graph %s: |V|=%zu |E|=%zu\n", a.name.c_str(), g.num_nodes(), g.num_edges());
    return 0;
}

// --- create ----------------------------------------------------------------

struct CreateArgs {
    std::string file;
    std::string ordering = "default";
    bool symmetric = false;
};

ViewOrder pick_order(const std::string& how, const EdgeBooleanMatrix& ebm, unsigned threads) {
    if (how == "default") return ViewOrder::identity(ebm.views());
    if (how == "optimized") return optimize_order(ebm, threads);
    if (how.rfind("random:", 0) == 0) {
        std::uint64_t seed = 0;
        try {
            seed = std::stoull(how.substr(7));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "bad seed in --ordering " + how);
        }
        return random_order(ebm.views(), seed);
    }
    throw Error(ErrorKind::InvalidArgument, "--ordering must be default, optimized or random:SEED");
}

int cmd_create(const Globals& gl, const CreateArgs& a) {
    bench::Workspace ws(workspace_root(gl));
    const auto statements = gvdl::parse_script(bench::read_file(a.file));
    for (const auto& stmt : statements) {
        const auto& name = gvdl::statement_name(stmt);
        const auto& graph = gvdl::statement_graph(stmt);
        if (!ws.graphs().count(graph)) throw Error(ErrorKind::NotFound, "no graph named " + graph);
        if (ws.collections().count(name) || ws.graphs().count(name)) {
            throw Error(ErrorKind::NameExists, name);
        }
        const auto g = ws.load_graph(graph);
        const auto text = gvdl::to_gvdl(stmt);
        const auto t0 = std::chrono::steady_clock::now();

        if (const auto* c = std::get_if<gvdl::ViewCollectionDef>(&stmt)) {
            const auto bound = gvdl::bind(*c, g);
            const auto ebm = compute_ebm(g, bound, gl.threads);
            const auto t1 = std::chrono::steady_clock::now();
            const auto order = pick_order(a.ordering, ebm, gl.threads);
            const double ordering_ms = ms_since(t1);
            const auto eds = compute_eds(ebm, order, name);
            const double cct = ms_since(t0);

            bench::CollectionEntry e;
            e.name = name;
            e.graph = graph;
            for (std::size_t t = 0; t < eds.size(); ++t) e.views.push_back(eds.view_name_at(t));
            e.ordering = a.ordering;
            e.diffs = eds.total_count();
            e.cct_ms = cct;
            e.ordering_ms = ordering_ms;
            ws.add_collection(e, eds, text);
            std::string names;
            for (const auto& v : e.views) names += (names.empty() ? "" : ",") + v;
            std::printf("collection %s: %zu views, order %s\n#diffs = %llu\nCCT = %.3f ms (ordering %.3f ms)\n",
                        name.c_str(), e.views.size(), names.c_str(),
                        static_cast<unsigned long long>(e.diffs), cct, ordering_ms);
        } else if (const auto* v = std::get_if<gvdl::ViewDef>(&stmt)) {
            const auto bound = gvdl::bind(*v, g);
            std::vector<EdgeId> edges;
            for (const auto& e : g.edge_stream())
                if (gvdl::eval_predicate(bound.predicate, e, g)) edges.push_back(e.eid);
            bench::CollectionEntry e;
            e.name = name;
            e.graph = graph;
            e.kind = "view";
            e.views = {name};
            e.edges = edges.size();
            e.diffs = edges.size();
            e.cct_ms = ms_since(t0);
            ws.add_view(e, edges, text);
            std::printf("view %s: %zu edges\nCCT = %.3f ms\n", name.c_str(), edges.size(), e.cct_ms);
        } else {
            const auto& agg = std::get<gvdl::AggregateViewDef>(stmt);
            const auto bound = gvdl::bind(agg, g);
            auto s = aggregate::materialize_aggregate(g, bound, {a.symmetric, gl.threads});
            ws.add_graph({name, "aggregate", graph, 0, 0}, s.graph);
            std::printf("aggregate view %s: %zu super-nodes, %zu super-edges\nCCT = %.3f ms\n",
                        name.c_str(), s.graph.num_nodes(), s.graph.num_edges(), ms_since(t0));
        }
    }
    return 0;
}

// --- run -------------------------------------------------------------------

struct RunArgs {
    std::string collection, algorithm;
    std::string mode = "diff";
    std::size_t batch = 10;
    std::string proxy = "wall";
    std::optional<std::uint64_t> source;
    std::string pairs;
    int iters = 10;
    double damping = 0.85;
    std::string weight;
    std::size_t repeat = 1;
    std::uint64_t seed = 1;
    std::string name;
    std::uint32_t iteration_cap = 1'000'000;
};

std::vector<std::pair<NodeId, NodeId>> parse_pairs(const PropertyGraph& g, const std::string& text) {
    std::vector<std::pair<NodeId, NodeId>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const auto item = text.substr(pos, end - pos);
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "pair '" + item + "' is not src:dst");
        try {
            out.emplace_back(dense_node(g, std::stoull(item.substr(0, colon))),
                             dense_node(g, std::stoull(item.substr(colon + 1))));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidArgument, "pair '" + item + "' is not numeric");
        }
        pos = end + 1;
    }
    return out;
}

int cmd_run(const Globals& gl, const RunArgs& a) {
    bench::Workspace ws(workspace_root(gl));
    const auto& entry = ws.collection(a.collection);
    const auto g = ws.load_graph(entry.graph);
    const auto eds = ws.load_collection(a.collection);

    analytics::AnalyticsSpec spec;
    spec.algorithm = analytics::parse_algorithm(a.algorithm);
    spec.iterations = a.iters;
    spec.damping = a.damping;
    if (!a.weight.empty()) spec.weight_property = a.weight;
    if (a.source) spec.source = dense_node(g, *a.source);
    if (spec.algorithm == analytics::Algorithm::Mpsp) {
        if (!a.pairs.empty()) {
            spec.pairs = parse_pairs(g, a.pairs);
        } else if (g.num_nodes() > 0) {
            std::mt19937_64 rng(a.seed);
            std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.num_nodes() - 1));
            for (int i = 0; i < 5; ++i) spec.pairs.emplace_back(pick(rng), pick(rng));
        }
    }
    analytics::validate(spec, g);

    splitting::SplitOptions opts;
    opts.strategy = splitting::parse_strategy(a.mode);
    opts.batch = a.batch;
    opts.proxy = splitting::parse_time_proxy(a.proxy);
    opts.engine.iteration_cap = a.iteration_cap;
    if (a.repeat == 0) throw Error(ErrorKind::InvalidArgument, "--repeat must be positive");

    bench::BenchReport report;
    report.collection = a.collection;
    report.algorithm = std::string(analytics::to_string(spec.algorithm));
    report.mode = a.mode;
    report.batch = a.batch;
    report.time_proxy = a.proxy;
    report.diffs = eds.total_count();
    report.cct_ms = entry.cct_ms;
    report.ordering_ms = entry.ordering_ms;
    report.repeat = a.repeat;
    splitting::SplitResult res;
    for (std::size_t r = 0; r < a.repeat; ++r) {
        res = splitting::run_split(spec, g, eds, opts);
        report.repeat_totals_ms.push_back(res.log.total_millis());
    }
    report.log = res.log;

    const auto run_name = a.name.empty() ? a.collection + "." + report.algorithm + "." + a.mode : a.name;
    ws.put_run({run_name, a.collection, report.algorithm, a.mode, report.total_ms()},
               [&](const fs::path& dir) {
                   bench::write_file_atomic(dir / "results.csv", bench::format_results(spec, g, res.output));
                   bench::write_file_atomic(dir / "diffs.csv", bench::format_diffs(spec, g, res.output));
                   bench::write_file_atomic(dir / "runlog.csv", res.log.to_csv());
                   bench::write_file_atomic(dir / "report.json", report.to_json());
               });

    std::printf("run %s: %s on %s, mode %s\n", run_name.c_str(), report.algorithm.c_str(),
                a.collection.c_str(), a.mode.c_str());
    std::printf("%-16s %-8s %10s %12s %12s\n", "view", "decision", "size", "ms", "work");
    for (const auto& e : res.log.entries) {
        std::printf("%-16s %-8s %10zu %12.3f %12llu\n", e.view.c_str(),
                    std::string(splitting::to_string(e.decision)).c_str(), e.size, e.millis,
                    static_cast<unsigned long long>(e.work.keys));
    }
    std::printf("#diffs = %llu\ntotal = %.3f ms (median of %zu: %.3f ms)\nresults: %s\n",
                static_cast<unsigned long long>(report.diffs), report.total_ms(), a.repeat,
                report.median_total_ms(), (ws.root() / "runs" / run_name / "results.csv").c_str());
    return 0;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
    std::string kind, out;
    bench::GenParams p;
    bool load = false;
};

int cmd_gen(const Globals& gl, const GenArgs& a) {
    auto w = bench::generate(a.kind, a.p);
    fs::create_directories(a.out);
    const fs::path out(a.out);
    write_graph(w.graph, out / "nodes.csv", out / "edges.csv");
    bench::write_file_atomic(out / "collection.gvdl", w.gvdl);
    std::printf("%s: |V|=%zu |E|=%zu -> %s\n", a.kind.c_str(), w.graph.num_nodes(),
                w.graph.num_edges(), a.out.c_str());
    if (a.load) {
        bench::Workspace ws(workspace_root(gl));
        ws.add_graph({a.p.graph_name, "base", "", 0, 0}, w.graph);
        std::printf("registered graph %s\n", a.p.graph_name.c_str());
    }
    return 0;
}

// --- stats -----------------------------------------------------------------

int cmd_stats(const Globals& gl, const std::string& name) {
    bench::Workspace ws(workspace_root(gl));
    for (const auto& [n, g] : ws.graphs()) {
        if (!name.empty() && n != name) continue;
        std::printf("graph %s (%s%s%s): |V|=%zu |E|=%zu\n", n.c_str(), g.kind.c_str(),
                    g.source.empty() ? "" : " of ", g.source.c_str(), g.nodes, g.edges);
    }
    for (const auto& [n, c] : ws.collections()) {
        if (!name.empty() && n != name) continue;
        std::printf("%s %s on %s: %zu views, ordering %s, #diffs = %llu, CCT = %.3f ms\n",
                    c.kind.c_str(), n.c_str(), c.graph.c_str(), c.views.size(), c.ordering.c_str(),
                    static_cast<unsigned long long>(c.diffs), c.cct_ms);
    }
    for (const auto& [n, r] : ws.runs()) {
        if (!name.empty() && n != name && r.collection != name) continue;
        std::printf("run %s: %s %s on %s, %.3f ms\n", n.c_str(), r.algorithm.c_str(), r.mode.c_str(),
                    r.collection.c_str(), r.total_ms);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gviews: graph views, view collections and differential analytics"};
    app.require_subcommand(1);
    Globals gl;
    app.add_option("--workspace,-w", gl.workspace, "workspace directory (default $GVIEWS_WORKSPACE)");
    app.add_option("--threads", gl.threads, "worker threads")->check(CLI::Range(1U, 256U));

    LoadArgs la;
    auto* load = app.add_subcommand("load", "register a graph from node and edge CSV files");
    load->add_option("name", la.name)->required();
    load->add_option("nodes", la.nodes)->required();
    load->add_option("edges", la.edges)->required();

    CreateArgs ca;
    auto* create = app.add_subcommand("create", "materialize the views in a GVDL file");
    create->add_option("file", ca.file)->required();
    create->add_option("--ordering", ca.ordering, "default | optimized | random:SEED");
    create->add_flag("--symmetric", ca.symmetric, "aggregate views: undirected super-edges");

    RunArgs ra;
    auto* run = app.add_subcommand("run", "run an analytics computation on a collection");
    run->add_option("collection", ra.collection)->required();
    run->add_option("algorithm", ra.algorithm, "wcc | scc | bfs | sssp | pr | mpsp")->required();
    run->add_option("--mode", ra.mode, "diff | scratch | adaptive");
    run->add_option("--batch", ra.batch, "views per splitting batch");
    run->add_option("--time-proxy", ra.proxy, "wall | work");
    run->add_option("--source", ra.source, "bfs/sssp source (node ID as in the input)");
    run->add_option("--pairs", ra.pairs, "mpsp pairs src:dst,src:dst,...");
    run->add_option("--iters", ra.iters, "pagerank iterations");
    run->add_option("--damping", ra.damping, "pagerank damping");
    run->add_option("--weight-prop", ra.weight, "edge weight property (sssp/mpsp)");
    run->add_option("--repeat", ra.repeat, "repetitions; the report carries the median");
    run->add_option("--seed", ra.seed, "seed for default mpsp pairs");
    run->add_option("--name", ra.name, "run name (default collection.algorithm.mode)");
    run->add_option("--iteration-cap", ra.iteration_cap, "loop iteration limit");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a synthetic graph and collection");
    gen->add_option("kind", ga.kind,
                    "expanding-window | sliding-window | community-removal | random-churn | caut")
        ->required();
    gen->add_option("out", ga.out, "output directory")->required();
    gen->add_option("--graph-name", ga.p.graph_name);
    gen->add_option("--name", ga.p.collection_name, "collection name");
    gen->add_option("--nodes", ga.p.nodes);
    gen->add_option("--edges", ga.p.edges);
    gen->add_option("--views", ga.p.views);
    gen->add_option("--seed", ga.p.seed);
    gen->add_option("--window", ga.p.window);
    gen->add_option("--communities", ga.p.communities);
    gen->add_option("--k", ga.p.removed, "communities removed per view");
    gen->add_option("--intra", ga.p.intra, "share of intra-community edges");
    gen->add_option("--adds", ga.p.adds);
    gen->add_option("--dels", ga.p.dels);
    gen->add_option("--year-windows", ga.p.year_windows);
    gen->add_option("--author-steps", ga.p.author_steps);
    gen->add_flag("--load", ga.load, "also register the graph in the workspace");

    std::string stats_name;
    auto* stats = app.add_subcommand("stats", "list workspace contents");
    stats->add_option("name", stats_name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*load) return cmd_load(gl, la);
        if (*create) return cmd_create(gl, ca);
        if (*run) return cmd_run(gl, ra);
        if (*gen) return cmd_gen(gl, ga);
        if (*stats) return cmd_stats(gl, stats_name);
    } catch (const Error& e) {
        std::fprintf(stderr, "gviews: %s\n", e.what());
        return is_user_error(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gviews: internal error: %s\n", e.what());
        return 3;
    }
    return 3;
}
