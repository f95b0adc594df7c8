#include "gviews/analytics/analytics.hpp"

#include "gviews/error.hpp"

#include <chrono>

namespace gviews::analytics {

using engine::Record;
using engine::Update;

void validate(const AnalyticsSpec& spec, const PropertyGraph& g) {
    const auto n = g.num_nodes();
    auto check_node = [&](NodeId v, const char* what) {
        if (v >= n) {
            throw Error(ErrorKind::UnknownSource,
                        std::string(what) + " " + std::to_string(v) + " is not a node of the graph");
        }
    };
    switch (spec.algorithm) {
        case Algorithm::Bfs:
        case Algorithm::Sssp:
            check_node(spec.source, "source");
            break;
        case Algorithm::Mpsp:
            if (spec.pairs.empty()) throw Error(ErrorKind::InvalidArgument, "mpsp needs at least one pair");
            for (const auto& [s, d] : spec.pairs) {
                check_node(s, "pair source");
                check_node(d, "pair target");
            }
            break;
        case Algorithm::PageRank:
            if (spec.iterations < 0) throw Error(ErrorKind::InvalidArgument, "negative iteration count");
            if (!(spec.damping >= 0.0 && spec.damping <= 1.0)) {
                throw Error(ErrorKind::InvalidArgument, "damping must lie in [0, 1]");
            }
            break;
        default:
            break;
    }
    if (spec.weight_property) {
        auto slot = g.edge_schema().slot_of(*spec.weight_property);
        if (!slot) throw Error(ErrorKind::UnknownProperty, "edge property " + *spec.weight_property);
        if (g.edge_schema().at(*slot).type != ValueType::Int) {
            throw Error(ErrorKind::TypeMismatch, "weight property must be int");
        }
    }
    if (spec.algorithm == Algorithm::Sssp || spec.algorithm == Algorithm::Mpsp) {
        EdgeEncoder enc(spec, g);
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            if (enc.encode(e)[2] < 0) {
                throw Error(ErrorKind::InvalidArgument,
                            "negative weight on edge " + std::to_string(e));
            }
        }
    }
}

EdgeEncoder::EdgeEncoder(const AnalyticsSpec& spec, const PropertyGraph& g) : g_(&g) {
    if (spec.algorithm != Algorithm::Sssp && spec.algorithm != Algorithm::Mpsp) return;
    const std::string name = spec.weight_property.value_or("duration");
    auto slot = g.edge_schema().slot_of(name);
    if (slot && g.edge_schema().at(*slot).type == ValueType::Int) weight_slot_ = slot;
}

Record EdgeEncoder::encode(EdgeId e) const {
    const auto& r = g_->edge(e);
    std::int64_t w = 1;
    if (weight_slot_) w = std::get<std::int64_t>(r.props[*weight_slot_]);
    return {r.src, r.dst, w, 0};
}

Results to_results(const std::vector<Update>& accumulated) {
    Results out;
    out.reserve(accumulated.size());
    for (const auto& [r, m] : accumulated) {
        if (m != 1) {
            throw Error(ErrorKind::InconsistentStream,
                        "output record for vertex " + std::to_string(r[0]) + " has multiplicity " +
                            std::to_string(m));
        }
        out.emplace_back(r[0], r[1]);
    }
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].first == out[i - 1].first) {
            throw Error(ErrorKind::InconsistentStream,
                        "two results for vertex " + std::to_string(out[i].first));
        }
    }
    return out;
}

namespace {

std::vector<Update> node_updates(const PropertyGraph& g) {
    std::vector<Update> out;
    out.reserve(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) out.push_back({{v, 0, 0, 0}, 1});
    return out;
}

double millis_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

Results run_on_view(const AnalyticsSpec& spec, const PropertyGraph& g,
                    const std::vector<EdgeId>& edges, engine::ExecutionOptions opts,
                    engine::WorkStats* work) {
    validate(spec, g);
    auto df = build_dataflow(spec, g.num_nodes());
    EdgeEncoder enc(spec, g);
    engine::Execution exec(df, opts);
    std::vector<Update> ups;
    ups.reserve(edges.size());
    for (EdgeId e : edges) ups.emplace_back(enc.encode(e), 1);
    exec.feed("nodes", node_updates(g));
    exec.feed("edges", std::move(ups));
    exec.step(0);
    if (work) *work = exec.work(0);
    return to_results(exec.accumulate("result", 0));
}

Results accumulate(const OutputDiffStream& out, std::size_t t) {
    if (t >= out.views.size()) {
        throw Error(ErrorKind::InvalidArgument, "view position " + std::to_string(t) + " out of range");
    }
    std::vector<Update> acc;
    for (std::size_t s = 0; s <= t; ++s)
        acc.insert(acc.end(), out.views[s].diffs.begin(), out.views[s].diffs.end());
    engine::consolidate(acc);
    return to_results(acc);
}

CollectionRunner::CollectionRunner(AnalyticsSpec spec, const PropertyGraph& g,
                                   const EdgeDifferenceStream& eds, engine::ExecutionOptions opts)
    : spec_(std::move(spec)),
      g_(&g),
      eds_(&eds),
      opts_(opts),
      df_(build_dataflow(spec_, g.num_nodes())),
      enc_(spec_, g) {
    validate(spec_, g);
    std::int64_t size = 0;
    for (std::size_t t = 0; t < eds.size(); ++t) {
        for (const auto& d : eds.at(t)) size += d.multiplicity;
        if (size < 0) throw Error(ErrorKind::InconsistentStream, "negative view size");
        view_sizes_.push_back(static_cast<std::size_t>(size));
    }
}

const ViewOutput& CollectionRunner::step(bool scratch) {
    if (next_ >= eds_->size()) throw Error(ErrorKind::InvalidArgument, "collection exhausted");
    const std::size_t t = next_;
    ViewOutput vo;
    vo.scratch = scratch || !exec_;
    const auto start = std::chrono::steady_clock::now();
    if (vo.scratch) {
        // Fresh epoch on the full view; its output is re-expressed as a
        // difference against everything reported so far.
        exec_.emplace(df_, opts_);
        epoch_start_ = static_cast<std::uint32_t>(t);
        std::vector<Update> edges;
        for (EdgeId e : reconstruct(*eds_, t)) edges.emplace_back(enc_.encode(e), 1);
        exec_->feed("nodes", node_updates(*g_));
        exec_->feed("edges", std::move(edges));
        exec_->step(0);
        vo.diffs = exec_->probe_at("result", 0);
        for (const auto& [r, m] : reported_) vo.diffs.emplace_back(r, -m);
        engine::consolidate(vo.diffs);
        vo.work = exec_->work(0);
    } else {
        const auto local = static_cast<std::uint32_t>(t) - epoch_start_;
        std::vector<Update> diff;
        for (const auto& d : eds_->at(t)) diff.emplace_back(enc_.encode(d.edge), d.multiplicity);
        exec_->feed("edges", std::move(diff));
        exec_->step(local);
        vo.diffs = exec_->probe_at("result", local);
        vo.work = exec_->work(local);
    }
    vo.millis = millis_since(start);
    reported_.insert(reported_.end(), vo.diffs.begin(), vo.diffs.end());
    engine::consolidate(reported_);
    if (out_.views.empty()) out_.view_names.reserve(eds_->size());
    out_.view_names.push_back(eds_->view_name_at(t));
    out_.views.push_back(std::move(vo));
    ++next_;
    return out_.views.back();
}

OutputDiffStream run_on_collection(const AnalyticsSpec& spec, const PropertyGraph& g,
                                   const EdgeDifferenceStream& eds, engine::ExecutionOptions opts) {
    CollectionRunner runner(spec, g, eds, opts);
    while (runner.position() < runner.size()) runner.step(false);
    return runner.output();
}

}  // namespace gviews::analytics
