#include "fixtures.hpp"

#include "gviews/analytics/analytics.hpp"
#include "gviews/engine/dataflow.hpp"
#include "gviews/engine/execution.hpp"
#include "gviews/error.hpp"
#include "gviews/views/eds.hpp"
#include "random_graph.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace gviews;
using namespace gviews::engine;
using analytics::Algorithm;
using analytics::AnalyticsSpec;

namespace {

Time at(std::initializer_list<std::uint32_t> c) {
    Time t;
    for (auto x : c) t.c[t.len++] = x;
    return t;
}

std::vector<Update> diffs_at(const Execution& ex, const char* probe, const Time& t) {
    std::vector<Update> out;
    for (const auto& d : ex.probe(probe))
        if (d.time == t) out.emplace_back(d.record, d.mult);
    consolidate(out);
    return out;
}

Record rec(std::int64_t a, std::int64_t b = 0) { return {a, b, 0, 0}; }

EdgeDifferenceStream walk_stream() {
    return compute_eds(fixtures::walk_matrix(), ViewOrder::identity(3), "walk");
}

AnalyticsSpec sssp_from(NodeId s) {
    AnalyticsSpec spec;
    spec.algorithm = Algorithm::Sssp;
    spec.source = s;
    return spec;
}

}  // namespace

TEST(Time, ProductOrderAndLub) {
    EXPECT_TRUE(at({0, 1}).le(at({1, 1})));
    EXPECT_FALSE(at({0, 2}).le(at({1, 1})));
    EXPECT_FALSE(at({1, 1}).le(at({0, 2})));
    EXPECT_EQ(at({0, 2}).lub(at({1, 1})), at({1, 2}));
    // Lexicographic processing order is a linear extension of the product order.
    EXPECT_LT(at({0, 2}), at({1, 1}));
    EXPECT_LT(at({1}), at({1, 0}));
}

TEST(Consolidate, DropsZeroesAndMerges) {
    std::vector<Update> u{{rec(2), 1}, {rec(1), 1}, {rec(2), -1}, {rec(1), 2}};
    consolidate(u);
    ASSERT_EQ(u.size(), 1U);
    EXPECT_EQ(u[0], (Update{rec(1), 3}));
}

TEST(Engine, LinearOperators) {
    Dataflow df;
    auto in = df.input("in");
    auto doubled = df.map(in, [](const Record& r) { return rec(r[0] * 2); });
    auto odd = df.filter(in, [](const Record& r) { return r[0] % 2 == 1; });
    df.probe(df.concat({doubled, df.negate(odd)}), "out");
    Execution ex(df);
    ex.feed("in", {{rec(1), 1}, {rec(2), 1}, {rec(3), 1}});
    ex.step(0);
    std::vector<Update> want{{rec(1), -1}, {rec(2), 1}, {rec(3), -1}, {rec(4), 1}, {rec(6), 1}};
    EXPECT_EQ(ex.accumulate("out", 0), want);
}

TEST(Engine, ReduceRetractsOldOutput) {
    Dataflow df;
    auto in = df.input("in");
    auto counts = df.reduce(in, 1, [](const Record& k, std::span<const Update> v,
                                      std::vector<Update>& out) {
        std::int64_t n = 0;
        for (const auto& u : v) n += u.second;
        out.push_back({rec(k[0], n), 1});
    });
    df.probe(counts, "out");
    Execution ex(df);
    ex.feed("in", {{rec(7, 1), 1}, {rec(7, 2), 1}});
    ex.step(0);
    ex.feed("in", {{rec(7, 3), 1}});
    ex.step(1);
    std::vector<Update> want{{rec(7, 2), -1}, {rec(7, 3), 1}};
    EXPECT_EQ(ex.probe_at("out", 1), want);
    EXPECT_THROW(ex.step(1), Error);
}

TEST(Engine, JoinIsBilinear) {
    Dataflow df;
    auto l = df.input("l");
    auto r = df.input("r");
    df.probe(df.join(l, r, 1, [](const Record& a, const Record& b) { return rec(a[1], b[1]); }),
             "out");
    Execution ex(df);
    ex.feed("l", {{rec(1, 10), 1}, {rec(2, 20), 1}});
    ex.feed("r", {{rec(1, 5), 2}});
    ex.step(0);
    ex.feed("r", {{rec(2, 6), 1}, {rec(1, 5), -2}});
    ex.step(1);
    std::vector<Update> want{{rec(20, 6), 1}};
    EXPECT_EQ(ex.accumulate("out", 1), want);
}

TEST(Engine, NegativeAccumulationIsRejected) {
    Dataflow df;
    auto in = df.input("in");
    df.probe(df.distinct(in), "out");
    Execution ex(df);
    ex.feed("in", {{rec(1), -1}});
    try {
        ex.step(0);
        FAIL() << "expected InconsistentStream";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconsistentStream);
    }
}

TEST(Engine, DivergingLoopHitsIterationCap) {
    Dataflow df;
    auto in = df.input("in");
    df.probe(df.iterate(in,
                        [&](Stream x) {
                            return df.map(x, [](const Record& r) { return rec(r[0] + 1); });
                        }),
             "out");
    Execution ex(df, ExecutionOptions{50});
    ex.feed("in", {{rec(0), 1}});
    try {
        ex.step(0);
        FAIL() << "expected NonTermination";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonTermination);
    }
}

TEST(Engine, NestedLoopsReachFixpoint) {
    // Outer loop: x -> distinct(x + inner), where inner caps values at 5.
    Dataflow df;
    auto in = df.input("in");
    auto out = df.iterate(in, [&](Stream x) {
        auto capped = df.iterate(x, [&](Stream y) {
            auto next = df.map(y, [](const Record& r) { return rec(std::min<std::int64_t>(r[0] + 1, 5)); });
            return df.distinct(df.concat({df.enter(x), next}));
        });
        return df.distinct(df.concat({x, capped}));
    });
    df.probe(out, "out");
    Execution ex(df);
    ex.feed("in", {{rec(2), 1}});
    ex.step(0);
    std::vector<Update> want{{rec(2), 1}, {rec(3), 1}, {rec(4), 1}, {rec(5), 1}};
    EXPECT_EQ(ex.accumulate("out", 0), want);
    ex.feed("in", {{rec(0), 1}, {rec(2), -1}});
    ex.step(1);
    want = {{rec(0), 1}, {rec(1), 1}, {rec(2), 1}, {rec(3), 1}, {rec(4), 1}, {rec(5), 1}};
    EXPECT_EQ(ex.accumulate("out", 1), want);
}

TEST(Engine, WalkthroughFirstIterationDiffs) {
    auto g = fixtures::walk_graph();
    auto eds = walk_stream();
    auto spec = sssp_from(0);
    auto df = analytics::build_dataflow(spec, g.num_nodes());
    analytics::EdgeEncoder enc(spec, g);
    Execution ex(df);
    std::vector<Update> nodes;
    for (NodeId v = 0; v < 4; ++v) nodes.push_back({rec(v), 1});
    ex.feed("nodes", nodes);
    for (std::uint32_t t = 0; t < 3; ++t) {
        std::vector<Update> d;
        for (const auto& x : eds.at(t)) d.emplace_back(enc.encode(x.edge), x.multiplicity);
        ex.feed("edges", d);
        ex.step(t);
    }
    std::vector<Update> want{
        {rec(1, 2), 1}, {rec(1, kInfinity), -1}, {rec(2, 10), 1}, {rec(2, kInfinity), -1}};
    EXPECT_EQ(diffs_at(ex, "distances", at({0, 1})), want);

    auto g0 = analytics::to_results(ex.accumulate("result", 0));
    EXPECT_EQ(g0, (analytics::Results{{0, 0}, {1, 2}, {2, 4}, {3, 6}}));
    auto g1 = analytics::to_results(ex.accumulate("result", 1));
    EXPECT_EQ(g1[1], (std::pair<std::int64_t, std::int64_t>{1, 1}));
    // Net change at G1 for w1 is -(w1,2) +(w1,1).
    auto d1 = ex.probe_at("result", 1);
    EXPECT_NE(std::find(d1.begin(), d1.end(), Update{rec(1, 2), -1}), d1.end());
    EXPECT_NE(std::find(d1.begin(), d1.end(), Update{rec(1, 1), 1}), d1.end());
}

TEST(Engine, BellmanFordOnG0) {
    auto g = fixtures::walk_graph();
    auto r = analytics::run_on_view(sssp_from(0), g, {0, 2, 4, 5});
    EXPECT_EQ(r, (analytics::Results{{0, 0}, {1, 2}, {2, 4}, {3, 6}}));
}

TEST(Engine, EmptyEdgeSetLeavesOnlySource) {
    auto g = fixtures::walk_graph();
    EXPECT_EQ(analytics::run_on_view(sssp_from(2), g, {}), (analytics::Results{{2, 0}}));
}

TEST(Engine, WccOnTwoDisjointPairs) {
    auto g = parse_graph("id:uint\n0\n1\n2\n3\n", "src:uint,dst:uint\n0,1\n1,0\n3,2\n2,3\n");
    AnalyticsSpec spec;
    auto r = analytics::run_on_view(spec, g, {0, 1, 2, 3});
    EXPECT_EQ(r, (analytics::Results{{0, 0}, {1, 0}, {2, 2}, {3, 2}}));
}

TEST(Engine, AccumulateAtG1AndFirstPosition) {
    auto g = fixtures::walk_graph();
    auto out = analytics::run_on_collection(sssp_from(0), g, walk_stream());
    ASSERT_EQ(out.views.size(), 3U);
    auto first = analytics::accumulate(out, 0);
    EXPECT_EQ(first, analytics::to_results(out.views[0].diffs));
    EXPECT_EQ(analytics::accumulate(out, 1)[1].second, 1);
}

TEST(Engine, AccumulateRejectsDoubleCounting) {
    analytics::OutputDiffStream out;
    out.view_names = {"a", "b"};
    out.views.resize(2);
    out.views[0].diffs = {{rec(1, 1), 1}};
    out.views[1].diffs = {{rec(1, 1), 1}};
    try {
        analytics::accumulate(out, 1);
        FAIL() << "expected InconsistentStream";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconsistentStream);
    }
}

TEST(Engine, IdenticalViewsCostNothing) {
    std::mt19937_64 rng(3);
    auto g = testutil::random_graph(rng, 40, 120);
    std::vector<std::vector<bool>> rows(g.num_edges(), std::vector<bool>(6, false));
    for (std::size_t e = 0; e < rows.size(); e += 2) rows[e].assign(6, true);
    auto eds = compute_eds(EdgeBooleanMatrix::from_rows(rows), ViewOrder::identity(6));
    for (auto a : {Algorithm::Wcc, Algorithm::Scc, Algorithm::Sssp, Algorithm::PageRank}) {
        AnalyticsSpec spec;
        spec.algorithm = a;
        auto out = analytics::run_on_collection(spec, g, eds);
        EXPECT_GT(out.views[0].work.keys, 0U);
        for (std::size_t t = 1; t < 6; ++t) {
            EXPECT_TRUE(out.views[t].diffs.empty()) << analytics::to_string(a) << " view " << t;
            EXPECT_EQ(out.views[t].work.keys, 0U) << analytics::to_string(a) << " view " << t;
        }
    }
}

TEST(Engine, PathLeafChangeIsLocal) {
    const std::size_t n = 200;
    std::string nodes = "id:uint\n", edges = "src:uint,dst:uint\n";
    for (std::size_t i = 0; i < n; ++i) nodes += std::to_string(i) + "\n";
    for (std::size_t i = 0; i + 1 < n; ++i) edges += std::to_string(i) + "," + std::to_string(i + 1) + "\n";
    auto g = parse_graph(nodes, edges);
    std::vector<std::vector<bool>> rows(g.num_edges(), {true, true});
    rows.back()[1] = false;  // drop the edge into the last node
    auto eds = compute_eds(EdgeBooleanMatrix::from_rows(rows), ViewOrder::identity(2));
    AnalyticsSpec spec;
    spec.algorithm = Algorithm::Bfs;
    auto out = analytics::run_on_collection(spec, g, eds);
    EXPECT_GT(out.views[0].work.keys, n);
    EXPECT_LT(out.views[1].work.keys, 20U);
    EXPECT_EQ(out.views[1].diffs.size(), 1U);
}

TEST(Engine, DisjointViewsRecomputeEverything) {
    std::mt19937_64 rng(11);
    auto g = testutil::random_graph(rng, 30, 80);
    std::vector<std::vector<bool>> rows(g.num_edges(), std::vector<bool>(2));
    for (std::size_t e = 0; e < rows.size(); ++e) rows[e] = {e % 2 == 0, e % 2 == 1};
    auto eds = compute_eds(EdgeBooleanMatrix::from_rows(rows), ViewOrder::identity(2));
    AnalyticsSpec spec;
    auto out = analytics::run_on_collection(spec, g, eds);
    WorkStats scratch;
    analytics::run_on_view(spec, g, reconstruct(eds, 1), {}, &scratch);
    EXPECT_GE(out.views[1].work.keys, scratch.keys);
}

TEST(Engine, ProbeDiffsAreConsolidated) {
    std::mt19937_64 rng(5);
    auto g = testutil::random_graph(rng, 25, 60);
    auto eds = testutil::random_collection(rng, g, 4);
    AnalyticsSpec spec;
    spec.algorithm = Algorithm::Scc;
    auto df = analytics::build_dataflow(spec, g.num_nodes());
    analytics::EdgeEncoder enc(spec, g);
    Execution ex(df);
    std::vector<Update> nodes;
    for (NodeId v = 0; v < g.num_nodes(); ++v) nodes.push_back({rec(v), 1});
    ex.feed("nodes", nodes);
    for (std::uint32_t t = 0; t < eds.size(); ++t) {
        std::vector<Update> d;
        for (const auto& x : eds.at(t)) d.emplace_back(enc.encode(x.edge), x.multiplicity);
        ex.feed("edges", d);
        ex.step(t);
    }
    std::map<std::pair<Time, Record>, std::int64_t> net;
    for (const auto& d : ex.probe("result")) net[{d.time, d.record}] += d.mult;
    for (const auto& [k, m] : net) EXPECT_NE(m, 0);
}

TEST(Engine, WccFixpointIsStable) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testutil::random_graph(rng, 30, 25);
        std::vector<EdgeId> all(g.num_edges());
        std::iota(all.begin(), all.end(), 0U);
        auto r = analytics::run_on_view(AnalyticsSpec{}, g, all);
        std::vector<std::int64_t> label(g.num_nodes());
        for (const auto& [v, l] : r) label[v] = l;
        // One more propagation round changes nothing.
        for (const auto& e : g.edge_stream()) {
            EXPECT_EQ(label[e.src], label[e.dst]);
        }
    }
}

// Old views are folded together, so toggling one edge costs the same at
// view 60 as at view 6.
TEST(Engine, HistoryDoesNotGrowWithViews) {
    std::mt19937_64 rng(12);
    auto g = testutil::random_graph(rng, 60, 150);
    std::vector<std::vector<bool>> rows(g.num_edges(), std::vector<bool>(61, true));
    for (std::size_t j = 1; j < 61; j += 2) rows[7][j] = false;
    auto eds = compute_eds(EdgeBooleanMatrix::from_rows(rows), ViewOrder::identity(61));
    auto out = analytics::run_on_collection(sssp_from(0), g, eds);
    EXPECT_EQ(out.views[6].work.keys, out.views[60].work.keys);
    EXPECT_LE(out.views[60].work.scanned, out.views[6].work.scanned * 11 / 10);
    auto want = analytics::scratch_oracle(sssp_from(0), g, reconstruct(eds, 59));
    EXPECT_EQ(analytics::accumulate(out, 59), want);
}
