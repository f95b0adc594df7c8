#include "fixtures.hpp"

#include "gviews/aggregate/aggregate.hpp"
#include "gviews/bench/generators.hpp"
#include "gviews/gvdl/parser.hpp"
#include "gviews/views/ebm.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace gviews;
using namespace gviews::aggregate;

namespace {

gvdl::BoundAggregateView bind_aggregate(const char* text, const PropertyGraph& g) {
    return gvdl::bind(std::get<gvdl::AggregateViewDef>(gvdl::parse(text)), g);
}

const char* kCityCalls =
    "create view City-Calls-City on Calls nodes group by city aggregate num-phones: count(*) "
    "edges aggregate total-duration: sum(duration)";

std::string city(const PropertyGraph& s, NodeId v) { return std::get<std::string>(s.node(v).props[0]); }

// Reference: bucket base edges by endpoint city straight from the CSV rows.
std::map<std::pair<std::string, std::string>, std::int64_t> city_totals(const PropertyGraph& g) {
    std::map<std::pair<std::string, std::string>, std::int64_t> out;
    for (const auto& e : g.edge_stream()) {
        out[{*std::get_if<std::string>(g.node_property(e.src, "city")),
             *std::get_if<std::string>(g.node_property(e.dst, "city"))}] +=
            std::get<std::int64_t>(*g.edge_property(e.eid, "duration"));
    }
    return out;
}

}  // namespace

TEST(Aggregate, CityCallsCity) {
    auto g = fixtures::call_graph();
    for (unsigned threads : {1U, 4U}) {
        auto s = materialize_aggregate(g, bind_aggregate(kCityCalls, g), {false, threads});
        const auto& sg = s.graph;
        ASSERT_EQ(sg.num_nodes(), 2U);
        EXPECT_EQ(city(sg, 0), "LA");  // sorted group keys
        EXPECT_EQ(city(sg, 1), "NY");
        EXPECT_EQ(std::get<std::int64_t>(*sg.node_property(0, "num-phones")), 5);
        EXPECT_EQ(std::get<std::int64_t>(*sg.node_property(1, "num-phones")), 3);
        std::map<std::pair<std::string, std::string>, std::int64_t> got;
        std::int64_t total = 0;
        for (const auto& e : sg.edge_stream()) {
            auto d = std::get<std::int64_t>(*sg.edge_property(e.eid, "total-duration"));
            got[{city(sg, e.src), city(sg, e.dst)}] = d;
            total += d;
        }
        std::map<std::pair<std::string, std::string>, std::int64_t> want{
            {{"LA", "NY"}, 73}, {{"NY", "LA"}, 41}, {{"LA", "LA"}, 20}, {{"NY", "NY"}, 52}};
        EXPECT_EQ(got, want);
        EXPECT_EQ(got, city_totals(g));
        EXPECT_EQ(total, 186);
    }
}

TEST(Aggregate, IdentityGrouping) {
    auto g = parse_graph("id:uint,name:string\n1,a\n2,b\n3,c\n", "src:uint,dst:uint\n1,2\n2,3\n3,1\n1,3\n");
    auto s = materialize_aggregate(g, bind_aggregate("create view v on g nodes group by name aggregate count(*)", g));
    ASSERT_EQ(s.graph.num_nodes(), 3U);
    ASSERT_EQ(s.graph.num_edges(), 4U);
    for (const auto& e : s.graph.edge_stream()) {
        EXPECT_EQ(std::get<std::int64_t>(e.props[0]), 1);
        const auto& base = g.edge_stream();
        bool found = false;
        for (const auto& b : base) found = found || (b.src == e.src && b.dst == e.dst);
        EXPECT_TRUE(found);
    }
}

TEST(Aggregate, NoMatchingGroupIsEmpty) {
    auto g = fixtures::call_graph();
    auto s = materialize_aggregate(
        g, bind_aggregate("create view v on Calls nodes group by [(city = 'SF'), (profession = 'Pilot')] aggregate count(*)", g));
    EXPECT_EQ(s.graph.num_nodes(), 0U);
    EXPECT_EQ(s.graph.num_edges(), 0U);
}

TEST(Aggregate, PredicateListUsesFirstMatchAndExcludesTheRest) {
    auto g = fixtures::call_graph();
    auto s = materialize_aggregate(
        g, bind_aggregate("create view t on Calls nodes group by [(city = 'NY' and profession = 'Doctor'), "
                          "(city = 'LA' and profession = 'Lawyer'), (city = 'NY')] aggregate count(*) "
                          "edges aggregate n: count(*), d: sum(duration)",
                          g));
    // Groups: 0 = NY doctor {5}, 1 = LA lawyer {8}, 2 = other NY {4, 7}.
    ASSERT_EQ(s.graph.num_nodes(), 3U);
    std::int64_t members = 0, edges = 0;
    for (const auto& n : s.graph.nodes()) members += std::get<std::int64_t>(n.props[1]);
    EXPECT_EQ(members, 4);
    std::int64_t grouped_edges = 0;
    for (const auto& e : g.edge_stream())
        grouped_edges += s.group_of[e.src] >= 0 && s.group_of[e.dst] >= 0;
    for (const auto& e : s.graph.edge_stream()) edges += std::get<std::int64_t>(e.props[0]);
    EXPECT_EQ(edges, grouped_edges);
    EXPECT_EQ(s.group_of[g.find_external(5).value()], 0);
}

TEST(Aggregate, MassConservationOnRandomGraphs) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        bench::GenParams p;
        p.seed = seed;
        p.nodes = 60;
        p.edges = 400;
        p.communities = 4;
        auto w = bench::community_removal(p);
        auto g = parse_graph(format_nodes_csv(w.graph),
                             "src:uint,dst:uint,w:int\n" + [&] {
                                 std::string s;
                                 for (const auto& e : w.graph.edge_stream())
                                     s += std::to_string(w.graph.external_id(e.src)) + "," +
                                          std::to_string(w.graph.external_id(e.dst)) + "," +
                                          std::to_string(e.eid % 17) + "\n";
                                 return s;
                             }());
        auto s = materialize_aggregate(
            g, bind_aggregate("create view v on g nodes group by community aggregate count(*) edges aggregate sum(w)", g),
            {false, 3});
        std::int64_t base = 0, super = 0, nodes = 0;
        for (const auto& e : g.edge_stream()) base += std::get<std::int64_t>(e.props[0]);
        for (const auto& e : s.graph.edge_stream()) super += std::get<std::int64_t>(e.props[0]);
        for (const auto& n : s.graph.nodes()) nodes += std::get<std::int64_t>(n.props[1]);
        EXPECT_EQ(base, super);
        EXPECT_EQ(nodes, 60);
    }
}

TEST(Aggregate, Symmetrize) {
    auto g = fixtures::call_graph();
    auto s = materialize_aggregate(g, bind_aggregate(kCityCalls, g), {true, 1});
    ASSERT_EQ(s.graph.num_edges(), 3U);
    std::int64_t total = 0;
    for (const auto& e : s.graph.edge_stream()) {
        EXPECT_LE(e.src, e.dst);
        total += std::get<std::int64_t>(e.props[0]);
    }
    EXPECT_EQ(total, 186);
}
