#pragma once

#include "gviews/graph/property_graph.hpp"
#include "gviews/gvdl/binder.hpp"

#include <cstdint>
#include <vector>

namespace gviews::aggregate {

struct AggregateOptions {
    bool symmetric = false;  // merge (a,b) and (b,a) into one super-edge a->b, a <= b
    unsigned threads = 1;
};

/// Super-nodes are numbered by sorted group key. Node columns are the
/// group-by properties (or `group:int`, the predicate index, for predicate
/// lists) followed by the node aggregates; edge columns are the edge
/// aggregates. All aggregates are int.
struct SummaryGraph {
    PropertyGraph graph;
    std::vector<std::int64_t> group_of;  // per base node; -1 when ungrouped
};

/// Nodes matching no group, and every edge touching one, are left out.
SummaryGraph materialize_aggregate(const PropertyGraph& g, const gvdl::BoundAggregateView& def,
                                   AggregateOptions opts = {});

}  // namespace gviews::aggregate
