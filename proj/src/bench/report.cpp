#include "gviews/bench/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace gviews::bench {

using analytics::Algorithm;

double BenchReport::median_total_ms() const {
    if (repeat_totals_ms.empty()) return total_ms();
    auto v = repeat_totals_ms;
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string BenchReport::to_json() const {
    nlohmann::json j;
    j["collection"] = collection;
    j["algorithm"] = algorithm;
    j["mode"] = mode;
    j["batch"] = batch;
    j["time_proxy"] = time_proxy;
    j["diffs"] = diffs;
    j["cct_ms"] = cct_ms;
    j["ordering_ms"] = ordering_ms;
    j["repeat"] = repeat;
    j["repeat_totals_ms"] = repeat_totals_ms;
    j["median_total_ms"] = median_total_ms();
    j["total_ms"] = total_ms();
    j["total_work"] = log.total_keys();
    j["total_scanned"] = log.total_scanned();
    auto& views = j["views"] = nlohmann::json::array();
    for (const auto& e : log.entries) {
        views.push_back({{"position", e.position},
                         {"view", e.view},
                         {"decision", std::string(splitting::to_string(e.decision))},
                         {"size", e.size},
                         {"ms", e.millis},
                         {"work", e.work.keys},
                         {"scanned", e.work.scanned},
                         {"emitted", e.work.emitted}});
    }
    return j.dump(2) + "\n";
}

namespace {

std::string vertex(const analytics::AnalyticsSpec& spec, const PropertyGraph& g, std::int64_t v) {
    if (spec.algorithm == Algorithm::Mpsp) return std::to_string(v);
    return std::to_string(g.external_id(static_cast<NodeId>(v)));
}

std::string value(const analytics::AnalyticsSpec& spec, const PropertyGraph& g, std::int64_t x) {
    switch (spec.algorithm) {
        case Algorithm::Wcc:
        case Algorithm::Scc:
            return std::to_string(g.external_id(static_cast<NodeId>(x)));
        case Algorithm::PageRank: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", engine::as_double(x));
            return buf;
        }
        default:
            return std::to_string(x);
    }
}

}  // namespace

std::string format_results(const analytics::AnalyticsSpec& spec, const PropertyGraph& g,
                           const analytics::OutputDiffStream& out) {
    std::string s = "view,vertex,result\n";
    for (std::size_t t = 0; t < out.views.size(); ++t) {
        for (const auto& [v, x] : analytics::accumulate(out, t))
            s += out.view_names[t] + "," + vertex(spec, g, v) + "," + value(spec, g, x) + "\n";
    }
    return s;
}

std::string format_diffs(const analytics::AnalyticsSpec& spec, const PropertyGraph& g,
                         const analytics::OutputDiffStream& out) {
    std::string s = "view,vertex,result,multiplicity\n";
    for (std::size_t t = 0; t < out.views.size(); ++t) {
        for (const auto& [r, m] : out.views[t].diffs) {
            s += out.view_names[t] + "," + vertex(spec, g, r[0]) + "," + value(spec, g, r[1]) + "," +
                 std::to_string(m) + "\n";
        }
    }
    return s;
}

}  // namespace gviews::bench
