#pragma once

#include "gviews/analytics/analytics.hpp"
#include "gviews/splitting/splitting.hpp"

#include <string>
#include <vector>

namespace gviews::bench {

struct BenchReport {
    std::string collection;
    std::string algorithm;
    std::string mode;
    std::size_t batch = 0;
    std::string time_proxy;
    std::uint64_t diffs = 0;  // EDS entries of the collection
    double cct_ms = 0;
    double ordering_ms = 0;
    std::size_t repeat = 1;
    std::vector<double> repeat_totals_ms;  // one per repetition
    splitting::RunLog log;                 // the last repetition

    double total_ms() const { return log.total_millis(); }
    double median_total_ms() const;
    std::string to_json() const;
};

/// `view,vertex,result` for every view, accumulated. Vertices and label
/// values are external node IDs; MPSP vertices are pair indices; PageRank
/// values are printed with 17 significant digits.
std::string format_results(const analytics::AnalyticsSpec& spec, const PropertyGraph& g,
                           const analytics::OutputDiffStream& out);
/// `view,vertex,result,multiplicity`: the raw output difference stream.
std::string format_diffs(const analytics::AnalyticsSpec& spec, const PropertyGraph& g,
                         const analytics::OutputDiffStream& out);

}  // namespace gviews::bench
