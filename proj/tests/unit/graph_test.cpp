#include "fixtures.hpp"

#include "gviews/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace gviews;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST(GraphStore, LoadsCallGraph) {
    auto g = fixtures::call_graph();
    EXPECT_EQ(g.num_nodes(), 8U);
    EXPECT_EQ(g.num_edges(), 15U);
    // External 5 is the fifth row, so dense ID 4.
    ASSERT_EQ(g.find_external(5), NodeId{4});
    EXPECT_EQ(std::get<std::string>(*g.node_property(4, "city")), "NY");
    EXPECT_EQ(std::get<std::string>(*g.node_property(4, "profession")), "Doctor");

    auto edges = g.edge_stream();
    ASSERT_EQ(edges.size(), 15U);
    EXPECT_EQ(edges[0].eid, 0U);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        EXPECT_EQ(edges[i].eid, i);
        EXPECT_LT(edges[i].src, g.num_nodes());
        EXPECT_LT(edges[i].dst, g.num_nodes());
    }
    // Parallel edges survive.
    EXPECT_EQ(edges[2].src, edges[3].src);
    EXPECT_EQ(edges[2].dst, edges[3].dst);
}

TEST(GraphStore, EdgeStreamIsDeterministic) {
    auto g = fixtures::call_graph();
    auto a = g.edge_stream();
    auto b = g.edge_stream();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
    EXPECT_EQ(fixtures::call_graph(), g);
}

TEST(GraphStore, EmptyEdgeFile) {
    auto g = parse_graph("id:uint\n0\n1\n2\n", "src:uint,dst:uint\n");
    EXPECT_EQ(g.num_nodes(), 3U);
    EXPECT_EQ(g.num_edges(), 0U);
    EXPECT_TRUE(g.edge_stream().empty());
}

TEST(GraphStore, DanglingEdgeNamesRow) {
    std::string edges = "src:uint,dst:uint,duration:int,year:int\n1,999,3,2019\n";
    try {
        parse_graph(fixtures::kCallNodes, edges);
        FAIL() << "expected DanglingEdge";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DanglingEdge);
        EXPECT_NE(std::string(e.what()).find("999"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
    }
}

TEST(GraphStore, RejectsBadInput) {
    EXPECT_EQ(kind_of([] { parse_graph("id:uint,a:float\n1,2\n", "src:uint,dst:uint\n"); }),
              ErrorKind::SchemaError);
    EXPECT_EQ(kind_of([] { parse_graph("name:string\nx\n", "src:uint,dst:uint\n"); }),
              ErrorKind::SchemaError);
    EXPECT_EQ(kind_of([] { parse_graph("id:uint\n1\n1\n", "src:uint,dst:uint\n"); }),
              ErrorKind::DuplicateNode);
    EXPECT_EQ(kind_of([] { parse_graph("id:uint,n:int\n1,abc\n", "src:uint,dst:uint\n"); }),
              ErrorKind::ValueParseError);
    EXPECT_EQ(kind_of([] { load_graph("/nonexistent/nodes.csv", "/nonexistent/edges.csv"); }),
              ErrorKind::MissingFile);
}

TEST(GraphStore, ValueParseErrorReportsColumn) {
    try {
        parse_graph("id:uint,age:int\n1,7\n2,old\n", "src:uint,dst:uint\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ValueParseError);
        EXPECT_NE(std::string(e.what()).find("age"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos);
    }
}

TEST(GraphStore, CommentsQuotesAndBools) {
    auto g = parse_graph(
        "# people\nid:uint,name:string,vip:bool\n10,\"Smith, J\",true\n# skip\n20,Doe,0\n",
        "src:uint,dst:uint,w:int\n10,20,-4\n20,20,+5\n");
    ASSERT_EQ(g.num_nodes(), 2U);
    EXPECT_EQ(std::get<std::string>(*g.node_property(0, "name")), "Smith, J");
    EXPECT_EQ(std::get<bool>(*g.node_property(0, "vip")), true);
    EXPECT_EQ(std::get<bool>(*g.node_property(1, "vip")), false);
    EXPECT_EQ(std::get<std::int64_t>(*g.edge_property(0, "w")), -4);
    EXPECT_EQ(g.edge(1).src, g.edge(1).dst);  // self-loop
}

TEST(GraphStore, RoundTripThroughFiles) {
    auto g = fixtures::call_graph();
    auto dir = std::filesystem::temp_directory_path() / "gviews_graph_rt";
    std::filesystem::create_directories(dir);
    write_graph(g, dir / "n.csv", dir / "e.csv");
    auto h = load_graph(dir / "n.csv", dir / "e.csv");
    EXPECT_EQ(g, h);
    EXPECT_EQ(format_nodes_csv(h), format_nodes_csv(g));
    std::filesystem::remove_all(dir);
}

TEST(GraphStore, RoundTripQuotedStrings) {
    auto g = parse_graph("id:uint,s:string\n3,\"a,\"\"b\"\"\"\n4,#x\n", "src:uint,dst:uint\n3,4\n");
    auto h = parse_graph(format_nodes_csv(g), format_edges_csv(g));
    EXPECT_EQ(g, h);
    EXPECT_EQ(std::get<std::string>(*h.node_property(0, "s")), "a,\"b\"");
}

TEST(GraphStore, IdMapListsExternalIds) {
    auto g = parse_graph("id:uint\n100\n7\n", "src:uint,dst:uint\n7,100\n");
    EXPECT_EQ(format_id_map(g), "dense,external\n0,100\n1,7\n");
    EXPECT_EQ(g.edge(0).src, 1U);
    EXPECT_EQ(g.edge(0).dst, 0U);
}
