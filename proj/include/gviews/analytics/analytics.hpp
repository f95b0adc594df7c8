#pragma once

#include "gviews/engine/dataflow.hpp"
#include "gviews/engine/execution.hpp"
#include "gviews/graph/property_graph.hpp"
#include "gviews/views/eds.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gviews::analytics {

enum class Algorithm { Wcc, Scc, Bfs, Sssp, PageRank, Mpsp };

std::string_view to_string(Algorithm a);
/// `wcc|scc|bfs|sssp|pr|mpsp`; throws InvalidArgument otherwise.
Algorithm parse_algorithm(std::string_view name);

struct AnalyticsSpec {
    Algorithm algorithm = Algorithm::Wcc;
    NodeId source = 0;                              // bfs, sssp
    std::vector<std::pair<NodeId, NodeId>> pairs;   // mpsp
    int iterations = 10;                            // pr
    double damping = 0.85;                          // pr
    /// sssp/mpsp edge weight. Unset: `duration` if the graph has it, else 1.
    std::optional<std::string> weight_property;
};

/// (vertex, value) sorted by vertex. PageRank values are bit-cast doubles;
/// MPSP rows are (pair index, distance).
using Results = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Checks an AnalyticsSpec against the graph. Throws UnknownSource, UnknownProperty,
/// TypeMismatch or InvalidArgument.
void validate(const AnalyticsSpec& spec, const PropertyGraph& g);

/// Inputs: `nodes` (n) and `edges` (src, dst, weight). Probe: `result`.
/// bfs/sssp also probe the loop variable as `distances`, (n, d) with
/// kInfinity for unreached nodes.
engine::Dataflow build_dataflow(const AnalyticsSpec& spec, std::size_t num_nodes);

/// Encodes base-graph edges as engine records for one spec.
class EdgeEncoder {
public:
    EdgeEncoder(const AnalyticsSpec& spec, const PropertyGraph& g);
    engine::Record encode(EdgeId e) const;

private:
    const PropertyGraph* g_;
    std::optional<std::size_t> weight_slot_;
};

Results to_results(const std::vector<engine::Update>& accumulated);

/// Single view through the engine (view dimension fixed at 0).
Results run_on_view(const AnalyticsSpec& spec, const PropertyGraph& g,
                    const std::vector<EdgeId>& edges, engine::ExecutionOptions opts = {},
                    engine::WorkStats* work = nullptr);

/// Textbook sequential implementations used as the reference.
Results scratch_oracle(const AnalyticsSpec& spec, const PropertyGraph& g,
                       const std::vector<EdgeId>& edges);

/// Exact equality, except PageRank values which may differ by `pr_tolerance`.
bool results_match(Algorithm a, const Results& x, const Results& y, double pr_tolerance = 1e-9);

struct ViewOutput {
    std::vector<engine::Update> diffs;  // (vertex, value) records
    engine::WorkStats work;
    double millis = 0;
    bool scratch = false;
};

struct OutputDiffStream {
    std::vector<std::string> view_names;  // in processing order
    std::vector<ViewOutput> views;
};

/// Sum of output differences at positions 0..t. Throws InconsistentStream
/// unless every net multiplicity is 0 or 1.
Results accumulate(const OutputDiffStream& out, std::size_t t);

/// Runs the views of a stream one position at a time. Each position is
/// either applied differentially to the live execution, or recomputed from
/// scratch in a fresh execution whose output is diffed against what has been
/// reported so far.
class CollectionRunner {
public:
    CollectionRunner(AnalyticsSpec spec, const PropertyGraph& g, const EdgeDifferenceStream& eds,
                     engine::ExecutionOptions opts = {});

    std::size_t size() const { return eds_->size(); }
    std::size_t position() const { return next_; }

    /// Processes the next position. Returns its output entry.
    const ViewOutput& step(bool scratch);

    /// Sizes the cost models use: |view t| and |diff t|.
    std::size_t view_size(std::size_t t) const { return view_sizes_.at(t); }
    std::size_t diff_size(std::size_t t) const { return eds_->at(t).size(); }

    const OutputDiffStream& output() const { return out_; }

private:
    AnalyticsSpec spec_;
    const PropertyGraph* g_;
    const EdgeDifferenceStream* eds_;
    engine::ExecutionOptions opts_;
    engine::Dataflow df_;
    EdgeEncoder enc_;
    std::optional<engine::Execution> exec_;
    std::uint32_t epoch_start_ = 0;
    std::vector<engine::Update> reported_;  // accumulated output so far
    std::vector<std::size_t> view_sizes_;
    std::size_t next_ = 0;
    OutputDiffStream out_;
};

/// All positions differentially.
OutputDiffStream run_on_collection(const AnalyticsSpec& spec, const PropertyGraph& g,
                                   const EdgeDifferenceStream& eds,
                                   engine::ExecutionOptions opts = {});

}  // namespace gviews::analytics
