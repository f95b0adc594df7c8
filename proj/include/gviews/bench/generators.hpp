#pragma once

#include "gviews/graph/property_graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gviews::bench {

/// A synthetic base graph plus a GVDL collection over it.
struct Workload {
    PropertyGraph graph;
    std::string gvdl;
};

struct GenParams {
    std::string graph_name = "Synth";
    std::string collection_name = "synth";
    std::size_t nodes = 200;
    std::size_t edges = 1000;
    std::size_t views = 10;
    std::uint64_t seed = 1;
    std::int64_t window = 10;     // expanding/sliding width
    std::size_t communities = 5;  // community-removal N
    std::size_t removed = 2;      // community-removal k
    double intra = 0.8;           // share of edges inside one community
    std::size_t adds = 20;        // random-churn per view
    std::size_t dels = 20;
    std::size_t year_windows = 3;  // C_aut shape
    std::size_t author_steps = 5;
};

/// Edges carry `ts:int` uniform in [0, views*window). View i keeps ts < (i+1)*window.
Workload expanding_window(const GenParams& p);
/// View i keeps i*window <= ts < (i+1)*window; views are pairwise disjoint.
Workload sliding_window(const GenParams& p);
/// Nodes carry `community:int`. One view per k-subset of communities (in
/// lexicographic subset order), keeping edges with neither endpoint in it.
Workload community_removal(const GenParams& p);
/// Edges carry `born:int,died:int`; each view adds `adds` fresh edges and
/// deletes `dels` live ones. View i keeps born <= i and died > i.
Workload random_churn(const GenParams& p);
/// Edges carry `year:int,authors:int`. Views run author windows
/// [0,5], [0,10], ... inside each of `year_windows` non-overlapping year
/// windows, year-major, so the collection grows by additions and then jumps
/// at every year slide.
Workload caut(const GenParams& p);

/// `expanding-window|sliding-window|community-removal|random-churn|caut`.
Workload generate(std::string_view kind, const GenParams& p);

/// n choose k.
std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace gviews::bench
