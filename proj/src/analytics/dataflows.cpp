#include "gviews/analytics/analytics.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <map>

namespace gviews::analytics {

using engine::as_double;
using engine::Dataflow;
using engine::from_double;
using engine::kInfinity;
using engine::Record;
using engine::Stream;
using engine::Update;

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Wcc: return "wcc";
        case Algorithm::Scc: return "scc";
        case Algorithm::Bfs: return "bfs";
        case Algorithm::Sssp: return "sssp";
        case Algorithm::PageRank: return "pr";
        case Algorithm::Mpsp: return "mpsp";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::Wcc, Algorithm::Scc, Algorithm::Bfs, Algorithm::Sssp,
                   Algorithm::PageRank, Algorithm::Mpsp}) {
        if (name == to_string(a)) return a;
    }
    throw Error(ErrorKind::InvalidArgument,
                "unknown algorithm '" + std::string(name) + "' (wcc|scc|bfs|sssp|pr|mpsp)");
}

namespace {

// Keeps, per key, the record with the smallest field `key_len`.
Stream reduce_min(Dataflow& df, Stream s, std::size_t key_len, std::string name = "min") {
    return df.reduce(
        s, key_len,
        [key_len](const Record& key, std::span<const Update> in, std::vector<Update>& out) {
            auto best = in.front().first[key_len];
            for (const auto& [r, m] : in) best = std::min(best, r[key_len]);
            Record r = key;
            r[key_len] = best;
            out.emplace_back(r, 1);
        },
        std::move(name));
}

// Min-label propagation of `init` (n, label) along directed `edges` (src, dst).
Stream propagate(Dataflow& df, Stream edges, Stream init) {
    return df.iterate(init, [&](Stream labels) {
        auto e = df.enter(edges);
        auto seed = df.enter(init);
        auto msgs = df.join(e, labels, 1, [](const Record& ed, const Record& l) {
            return Record{ed[1], l[1], 0, 0};
        });
        return reduce_min(df, df.concat({seed, msgs}), 1, "min-label");
    });
}

Stream self_labels(Dataflow& df, Stream nodes) {
    return df.map(nodes, [](const Record& n) { return Record{n[0], n[0], 0, 0}; });
}

void build_wcc(Dataflow& df, Stream nodes, Stream edges) {
    auto fwd = df.map(edges, [](const Record& e) { return Record{e[0], e[1], 0, 0}; });
    auto bwd = df.map(edges, [](const Record& e) { return Record{e[1], e[0], 0, 0}; });
    df.probe(propagate(df, df.concat({fwd, bwd}), self_labels(df, nodes)), "result");
}

// Keeps edges whose endpoints carry equal labels after propagating over
// `cycle`; emits the survivors reversed.
Stream trim_edges(Dataflow& df, Stream cycle, Stream edges) {
    auto targets = df.map(edges, [](const Record& e) { return Record{e[1], e[1], 0, 0}; });
    auto labels = propagate(df, cycle, targets);
    auto with_src = df.join(edges, labels, 1, [](const Record& e, const Record& l) {
        return Record{e[1], e[0], l[1], 0};
    });
    auto with_both = df.join(with_src, labels, 1, [](const Record& e, const Record& l) {
        return Record{e[1], e[0], e[2], l[1]};
    });
    auto same = df.filter(with_both, [](const Record& r) { return r[2] == r[3]; });
    return df.map(same, [](const Record& r) { return Record{r[1], r[0], 0, 0}; });
}

void build_scc(Dataflow& df, Stream nodes, Stream edges) {
    auto fwd = df.map(edges, [](const Record& e) { return Record{e[0], e[1], 0, 0}; });
    auto rev = df.map(edges, [](const Record& e) { return Record{e[1], e[0], 0, 0}; });
    auto scc_edges = df.iterate(fwd, [&](Stream inner) {
        auto all = df.enter(fwd);
        auto trans = df.enter(rev);
        return trim_edges(df, trim_edges(df, inner, all), trans);
    });
    df.probe(propagate(df, scc_edges, self_labels(df, nodes)), "result");
}

void build_shortest_paths(Dataflow& df, Stream nodes, Stream edges, NodeId source, bool unit) {
    if (unit) {
        edges = df.map(edges, [](const Record& e) { return Record{e[0], e[1], 1, 0}; });
    }
    const std::int64_t s = source;
    auto init = df.map(nodes, [s](const Record& n) {
        return Record{n[0], n[0] == s ? 0 : kInfinity, 0, 0};
    });
    auto dist = df.iterate(init, [&](Stream d) {
        df.probe(d, "distances");
        auto e = df.enter(edges);
        auto reached = df.filter(d, [](const Record& r) { return r[1] != kInfinity; });
        auto msgs = df.join(e, reached, 1, [](const Record& ed, const Record& r) {
            return Record{ed[1], r[1] + ed[2], 0, 0};
        });
        return reduce_min(df, df.concat({d, msgs}), 1, "union-min");
    });
    df.probe(df.filter(dist, [](const Record& r) { return r[1] != kInfinity; }), "result");
}

void build_mpsp(Dataflow& df, Stream edges, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::vector<NodeId> sources;
    for (const auto& p : pairs) sources.push_back(p.first);
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    auto label = [&](NodeId s) {
        return static_cast<std::int64_t>(std::lower_bound(sources.begin(), sources.end(), s) -
                                         sources.begin());
    };
    std::vector<Record> seeds, wanted;
    for (NodeId s : sources) seeds.push_back({s, label(s), 0, 0});
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        wanted.push_back({pairs[i].second, label(pairs[i].first), static_cast<std::int64_t>(i), 0});
    }
    auto init = df.constant(std::move(seeds));
    auto dist = df.iterate(init, [&](Stream d) {
        auto e = df.enter(edges);
        auto msgs = df.join(e, d, 1, [](const Record& ed, const Record& r) {
            return Record{ed[1], r[1], r[2] + ed[2], 0};
        });
        return reduce_min(df, df.concat({d, msgs}), 2, "union-min");
    });
    auto table = df.constant(std::move(wanted));
    df.probe(df.join(dist, table, 2,
                     [](const Record& d, const Record& w) { return Record{w[2], d[2], 0, 0}; }),
             "result");
}

// Sum of doubles in ascending order, each repeated by its multiplicity.
double ordered_sum(std::vector<std::pair<double, std::int64_t>>& values) {
    std::sort(values.begin(), values.end());
    double s = 0;
    for (const auto& [v, m] : values)
        for (std::int64_t i = 0; i < m; ++i) s += v;
    return s;
}

void build_pagerank(Dataflow& df, Stream nodes, Stream edges, std::size_t n, int iterations,
                    double damping) {
    const double inv_n = n ? 1.0 / static_cast<double>(n) : 0.0;
    auto degree = df.reduce(
        edges, 1,
        [](const Record& key, std::span<const Update> in, std::vector<Update>& out) {
            std::int64_t c = 0;
            for (const auto& [r, m] : in) c += m;
            out.push_back({{key[0], c, 0, 0}, 1});
        },
        "out-degree");
    auto rank = df.map(nodes, [inv_n](const Record& r) {
        return Record{r[0], from_double(inv_n), 0, 0};
    });
    auto presence = df.map(nodes, [](const Record& r) { return Record{r[0], 0, 0, 0}; });
    auto broadcast = df.map(nodes, [](const Record& r) { return Record{0, r[0], 0, 0}; });

    for (int it = 0; it < iterations; ++it) {
        auto contrib = df.join(rank, degree, 1, [](const Record& r, const Record& d) {
            return Record{r[0], from_double(as_double(r[1]) / static_cast<double>(d[1])), 0, 0};
        });
        auto msgs = df.join(edges, contrib, 1, [](const Record& e, const Record& c) {
            return Record{e[1], 1, c[1], 0};
        });
        auto live = df.join(rank, degree, 1, [](const Record& r, const Record&) { return r; });
        auto dangling = df.map(df.concat({rank, df.negate(live)}),
                               [](const Record& r) { return Record{0, r[0], r[1], 0}; });
        auto dsum = df.reduce(
            dangling, 1,
            [](const Record&, std::span<const Update> in, std::vector<Update>& out) {
                std::vector<std::pair<double, std::int64_t>> v;
                for (const auto& [r, m] : in) v.emplace_back(as_double(r[2]), m);
                out.push_back({{0, from_double(ordered_sum(v)), 0, 0}, 1});
            },
            "dangling-mass");
        auto share = df.join(broadcast, dsum, 1, [](const Record& b, const Record& d) {
            return Record{b[1], 2, d[1], 0};
        });
        rank = df.reduce(
            df.concat({presence, msgs, share}), 1,
            [damping, inv_n](const Record& key, std::span<const Update> in,
                             std::vector<Update>& out) {
                std::vector<std::pair<double, std::int64_t>> v;
                double dangling_mass = 0;
                bool present = false;
                for (const auto& [r, m] : in) {
                    if (r[1] == 0) present = true;
                    if (r[1] == 1) v.emplace_back(as_double(r[2]), m);
                    if (r[1] == 2) dangling_mass = as_double(r[2]);
                }
                if (!present) return;
                const double s = ordered_sum(v);
                const double next = (1.0 - damping) * inv_n + damping * (s + dangling_mass * inv_n);
                out.push_back({{key[0], from_double(next), 0, 0}, 1});
            },
            "rank");
    }
    df.probe(rank, "result");
}

}  // namespace

engine::Dataflow build_dataflow(const AnalyticsSpec& spec, std::size_t num_nodes) {
    Dataflow df;
    auto nodes = df.input("nodes");
    auto edges = df.input("edges");
    switch (spec.algorithm) {
        case Algorithm::Wcc: build_wcc(df, nodes, edges); break;
        case Algorithm::Scc: build_scc(df, nodes, edges); break;
        case Algorithm::Bfs: build_shortest_paths(df, nodes, edges, spec.source, true); break;
        case Algorithm::Sssp: build_shortest_paths(df, nodes, edges, spec.source, false); break;
        case Algorithm::PageRank:
            build_pagerank(df, nodes, edges, num_nodes, spec.iterations, spec.damping);
            break;
        case Algorithm::Mpsp: build_mpsp(df, edges, spec.pairs); break;
    }
    return df;
}

}  // namespace gviews::analytics
