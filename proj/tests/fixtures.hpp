#pragma once

// Hand-transcribed graphs shared by unit and acceptance tests.

#include "gviews/graph/property_graph.hpp"
#include "gviews/gvdl/binder.hpp"
#include "gviews/gvdl/parser.hpp"
#include "gviews/views/ebm.hpp"

#include <array>
#include <string>

namespace fixtures {

// Phone-call graph: 8 people, 15 calls (two parallel 8->7 calls).
inline const char* kCallNodes =
    "id:uint,city:string,profession:string\n"
    "1,LA,Engineer\n"
    "2,LA,Doctor\n"
    "3,LA,Engineer\n"
    "4,NY,Lawyer\n"
    "5,NY,Doctor\n"
    "6,LA,Engineer\n"
    "7,NY,Lawyer\n"
    "8,LA,Lawyer\n";

inline const char* kCallEdges =
    "src:uint,dst:uint,duration:int,year:int\n"
    "5,2,7,2015\n"
    "2,5,19,2019\n"
    "8,7,13,2019\n"
    "8,7,18,2019\n"
    "8,5,6,2019\n"
    "5,4,18,2019\n"
    "4,3,32,2017\n"
    "2,3,1,2010\n"
    "1,5,10,2018\n"
    "1,2,3,2019\n"
    "1,2,12,2017\n"
    "6,5,7,2018\n"
    "5,6,2,2013\n"
    "6,1,4,2019\n"
    "5,7,34,2019\n";

inline gviews::PropertyGraph call_graph() { return gviews::parse_graph(kCallNodes, kCallEdges); }

// 200 edges over a small ring of nodes; only edge IDs matter for the
// range-predicate collection.
inline gviews::PropertyGraph range_graph(std::size_t edges = 200, std::size_t nodes = 10) {
    std::string n = "id:uint\n";
    for (std::size_t i = 0; i < nodes; ++i) n += std::to_string(i) + "\n";
    std::string e = "src:uint,dst:uint\n";
    for (std::size_t i = 0; i < edges; ++i) {
        e += std::to_string(i % nodes) + "," + std::to_string((i * 7 + 3) % nodes) + "\n";
    }
    return gviews::parse_graph(n, e);
}

// The four range views as printed (upper bound 199).
inline const char* kCallAnalysisListing =
    "create view collection call-analysis on Calls\n"
    "    [GV1: ID < 100],\n"
    "    [GV2: ID \xE2\x89\xA5 50 and ID < 199],\n"
    "    [GV3: ID \xE2\x89\xA5 10 and ID < 100],\n"
    "    [GV4: ID \xE2\x89\xA5 60 and ID < 199]\n";

// Same collection with the upper bound covering e199, matching the drawn
// matrix rows (e100-e199 -> 0101).
inline const char* kCallAnalysisMatrix =
    "create view collection call-analysis on Calls\n"
    "    [GV1: ID < 100],\n"
    "    [GV2: ID >= 50 and ID <= 199],\n"
    "    [GV3: ID >= 10 and ID < 100],\n"
    "    [GV4: ID >= 60 and ID <= 199]\n";

inline gviews::gvdl::BoundCollection bind_collection(const char* text,
                                                     const gviews::PropertyGraph& g) {
    auto stmt = gviews::gvdl::parse(text);
    return gviews::gvdl::bind(std::get<gviews::gvdl::ViewCollectionDef>(stmt), g);
}

// Expected row pattern for edge e (GV1..GV4).
inline std::array<bool, 4> matrix_row(std::size_t e) {
    if (e < 10) return {1, 0, 0, 0};
    if (e < 50) return {1, 0, 1, 0};
    if (e < 60) return {1, 1, 1, 0};
    if (e < 100) return {1, 1, 1, 1};
    return {0, 1, 0, 1};
}

// Shortest-path walkthrough: s=0, w1=1, w2=2, w3=3. e0/e1 and e2/e3 are the
// two costs of (s,w1) and (s,w2); the views swap one for the other.
inline const char* kWalkNodes = "id:uint,name:string\n0,s\n1,w1\n2,w2\n3,w3\n";
inline const char* kWalkEdges =
    "src:uint,dst:uint,duration:int\n"
    "0,1,2\n"
    "0,1,1\n"
    "0,2,10\n"
    "0,2,1\n"
    "1,2,2\n"
    "2,3,2\n";

inline gviews::PropertyGraph walk_graph() { return gviews::parse_graph(kWalkNodes, kWalkEdges); }

// Columns G0, G1, G2.
inline gviews::EdgeBooleanMatrix walk_matrix() {
    return gviews::EdgeBooleanMatrix::from_rows({{1, 0, 0},
                                                 {0, 1, 1},
                                                 {1, 1, 0},
                                                 {0, 0, 1},
                                                 {1, 1, 1},
                                                 {1, 1, 1}},
                                                {"G0", "G1", "G2"});
}

}  // namespace fixtures
