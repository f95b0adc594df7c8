#include "gviews/bench/generators.hpp"
#include "gviews/error.hpp"
#include "gviews/gvdl/binder.hpp"
#include "gviews/gvdl/parser.hpp"
#include "gviews/splitting/splitting.hpp"
#include "gviews/views/eds.hpp"
#include "random_graph.hpp"

#include <gtest/gtest.h>

using namespace gviews;
using namespace gviews::splitting;
using analytics::Algorithm;
using analytics::AnalyticsSpec;

namespace {

EdgeDifferenceStream stream_of(const bench::Workload& w) {
    auto stmt = gvdl::parse(w.gvdl);
    auto c = gvdl::bind(std::get<gvdl::ViewCollectionDef>(stmt), w.graph);
    auto ebm = compute_ebm(w.graph, c);
    return compute_eds(ebm, ViewOrder::identity(ebm.views()), c.def.name);
}

EdgeDifferenceStream identical_views(const PropertyGraph& g, std::size_t k) {
    std::vector<std::vector<bool>> rows(g.num_edges(), std::vector<bool>(k, true));
    return compute_eds(EdgeBooleanMatrix::from_rows(rows), ViewOrder::identity(k));
}

}  // namespace

TEST(CostModel, ExactLineThroughTwoPoints) {
    CostModel m;
    m.record(Mode::Scratch, 100, 1.0);
    m.record(Mode::Scratch, 200, 2.0);
    auto f = m.fit(Mode::Scratch);
    EXPECT_NEAR(f.slope, 0.01, 1e-12);
    EXPECT_NEAR(f.intercept, 0.0, 1e-12);
}

TEST(CostModel, SinglePointIsProportional) {
    CostModel m;
    m.record(Mode::Differential, 50, 2.0);
    EXPECT_DOUBLE_EQ(m.predict(Mode::Differential, 100), 4.0);
    EXPECT_DOUBLE_EQ(m.predict(Mode::Differential, 0), 0.0);
}

TEST(CostModel, ZeroSizeObservationSetsIntercept) {
    CostModel m;
    m.record(Mode::Scratch, 0, 3.0);
    EXPECT_DOUBLE_EQ(m.predict(Mode::Scratch, 1000), 3.0);
    m.record(Mode::Scratch, 10, 5.0);
    auto f = m.fit(Mode::Scratch);
    EXPECT_DOUBLE_EQ(f.intercept, 3.0);
    EXPECT_DOUBLE_EQ(f.slope, 0.2);
}

TEST(CostModel, PredictionsAreClampedAndSlopeNonNegative) {
    CostModel m;
    m.record(Mode::Scratch, 10, 5.0);
    m.record(Mode::Scratch, 20, 1.0);
    auto f = m.fit(Mode::Scratch);
    EXPECT_GE(f.slope, 0.0);
    EXPECT_GE(m.predict(Mode::Scratch, 1e9), 0.0);
    LinearFit neg{-1, 2};
    EXPECT_EQ(neg(10), 0.0);
}

TEST(CostModel, ColdModelRefusesToDecide) {
    CostModel m;
    m.record(Mode::Scratch, 10, 1);
    try {
        m.decide(10, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ColdModel);
    }
}

TEST(CostModel, DecisionsFollowPredictions) {
    CostModel m;
    m.record(Mode::Scratch, 1e6, 10.0);
    m.record(Mode::Differential, 1e3, 0.1);
    EXPECT_EQ(m.decide(1e6, 1e3), Mode::Differential);
    // Fully disjoint views: diff = previous + current.
    EXPECT_EQ(m.decide(1e6, 2e6), Mode::Scratch);
    // Tie.
    EXPECT_EQ(m.decide(1e6, 1e5), Mode::Differential);
}

TEST(CostModel, DecideIsMonotoneInDiffSize) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0, 100);
    for (int trial = 0; trial < 200; ++trial) {
        CostModel m;
        for (int i = 0; i < 4; ++i) {
            m.record(Mode::Scratch, u(rng), u(rng));
            m.record(Mode::Differential, u(rng), u(rng));
        }
        const double view = u(rng);
        bool seen_scratch = false;
        for (double d = 0; d <= 200; d += 0.5) {
            auto mode = m.decide(view, d);
            if (seen_scratch) EXPECT_EQ(mode, Mode::Scratch);
            seen_scratch = seen_scratch || mode == Mode::Scratch;
        }
    }
}

TEST(Split, IdenticalViewsStayDifferential) {
    std::mt19937_64 rng(2);
    auto g = testutil::random_graph(rng, 40, 120);
    auto eds = identical_views(g, 20);
    SplitOptions opts;
    opts.proxy = TimeProxy::Work;
    opts.batch = 5;
    AnalyticsSpec spec;
    spec.algorithm = Algorithm::Bfs;
    auto res = run_split(spec, g, eds, opts);
    EXPECT_EQ(res.log.scratch_positions(), std::vector<std::size_t>{0});
    for (std::size_t t = 1; t < 20; ++t) EXPECT_EQ(res.log.entries[t].work.keys, 0U);
    opts.strategy = Strategy::Differential;
    auto diff = run_split(spec, g, eds, opts);
    EXPECT_LE(res.log.total_keys(), diff.log.total_keys() * 105 / 100);
}

TEST(Split, WarmupIsFixed) {
    std::mt19937_64 rng(3);
    auto g = testutil::random_graph(rng, 30, 60);
    auto eds = testutil::random_collection(rng, g, 6);
    for (auto proxy : {TimeProxy::Wall, TimeProxy::Work}) {
        SplitOptions opts;
        opts.proxy = proxy;
        auto res = run_split(AnalyticsSpec{}, g, eds, opts);
        EXPECT_EQ(res.log.entries[0].decision, Mode::Scratch);
        EXPECT_EQ(res.log.entries[1].decision, Mode::Differential);
    }
}

TEST(Split, ForcedPlansAreCorrect) {
    std::mt19937_64 rng(5);
    for (int seed = 0; seed < 6; ++seed) {
        auto g = testutil::random_graph(rng, 25, 50);
        auto eds = testutil::random_collection(rng, g, 5, 0.4);
        for (auto a : {Algorithm::Wcc, Algorithm::Scc, Algorithm::Sssp, Algorithm::PageRank}) {
            AnalyticsSpec spec;
            spec.algorithm = a;
            SplitOptions opts;
            std::vector<Mode> plan;
            for (std::size_t t = 0; t < 5; ++t)
                plan.push_back((seed >> (t % 3)) & 1 ? Mode::Scratch : Mode::Differential);
            opts.forced = plan;
            auto res = run_split(spec, g, eds, opts);
            for (std::size_t t = 0; t < 5; ++t) {
                EXPECT_TRUE(analytics::results_match(
                    a, analytics::accumulate(res.output, t),
                    analytics::scratch_oracle(spec, g, reconstruct(eds, t))));
            }
        }
    }
}

TEST(Split, DisjointViewsPageRankGoesScratch) {
    bench::GenParams p;
    p.nodes = 150;
    p.edges = 3000;
    p.views = 22;
    auto w = bench::sliding_window(p);
    auto eds = stream_of(w);
    AnalyticsSpec spec;
    spec.algorithm = Algorithm::PageRank;
    SplitOptions opts;
    opts.proxy = TimeProxy::Work;
    auto res = run_split(spec, w.graph, eds, opts);
    // Second batch is positions 12..21.
    for (std::size_t t = 12; t < 22; ++t) EXPECT_EQ(res.log.entries[t].decision, Mode::Scratch) << t;
}

TEST(Split, RunLogCsv) {
    RunLog log;
    RunLogEntry e;
    e.view = "GV1";
    e.decision = Mode::Scratch;
    e.size = 12;
    e.time = 3.5;
    e.work.keys = 7;
    log.entries.push_back(e);
    EXPECT_EQ(log.to_csv(), "view,decision,size,time,work\nGV1,scratch,12,3.5,7\n");
}

TEST(Split, ParseNames) {
    EXPECT_EQ(parse_strategy("adaptive"), Strategy::Adaptive);
    EXPECT_EQ(parse_time_proxy("work"), TimeProxy::Work);
    EXPECT_THROW(parse_strategy("fast"), Error);
}
