#include "gviews/aggregate/aggregate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <thread>

namespace gviews::aggregate {

namespace {

using Key = std::vector<Value>;

std::int64_t contribution(const gvdl::BoundAggregate& a, const std::vector<Value>& props) {
    if (a.def.fn == gvdl::Aggregate::Fn::Count) return 1;
    return std::get<std::int64_t>(props[a.slot]);
}

using Buckets = std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::int64_t>>;

void add_into(std::vector<std::int64_t>& acc, const std::vector<std::int64_t>& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

}  // namespace

SummaryGraph materialize_aggregate(const PropertyGraph& g, const gvdl::BoundAggregateView& def,
                                   AggregateOptions opts) {
    const bool by_property = !def.group_slots.empty();

    // Group key per base node.
    std::vector<std::optional<Key>> key_of(g.num_nodes());
    for (const auto& n : g.nodes()) {
        if (by_property) {
            Key k;
            for (auto slot : def.group_slots) k.push_back(n.props[slot]);
            key_of[n.nid] = std::move(k);
        } else {
            for (std::size_t i = 0; i < def.group_predicates.size(); ++i) {
                if (gvdl::eval_node_predicate(def.group_predicates[i], n)) {
                    key_of[n.nid] = Key{static_cast<std::int64_t>(i)};
                    break;
                }
            }
        }
    }
    std::map<Key, std::int64_t> index;
    for (const auto& k : key_of)
        if (k) index.emplace(*k, 0);
    std::int64_t next = 0;
    for (auto& [k, i] : index) i = next++;

    SummaryGraph out;
    out.group_of.assign(g.num_nodes(), -1);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (key_of[v]) out.group_of[v] = index.at(*key_of[v]);

    // Node aggregates.
    const auto na = def.node_aggregates.size();
    std::vector<std::vector<std::int64_t>> node_acc(index.size(), std::vector<std::int64_t>(na, 0));
    for (const auto& n : g.nodes()) {
        const auto grp = out.group_of[n.nid];
        if (grp < 0) continue;
        for (std::size_t i = 0; i < na; ++i) node_acc[grp][i] += contribution(def.node_aggregates[i], n.props);
    }

    // Edge aggregates, one partial map per edge range.
    const auto ea = def.edge_aggregates.size();
    const unsigned parts = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(g.num_edges() / 1024 + 1)));
    std::vector<Buckets> partial(parts);
    auto work = [&](unsigned p) {
        const std::size_t lo = g.num_edges() * p / parts, hi = g.num_edges() * (p + 1) / parts;
        std::vector<std::int64_t> row(ea);
        for (std::size_t e = lo; e < hi; ++e) {
            const auto& r = g.edge(static_cast<EdgeId>(e));
            auto a = out.group_of[r.src], b = out.group_of[r.dst];
            if (a < 0 || b < 0) continue;
            if (opts.symmetric && b < a) std::swap(a, b);
            for (std::size_t i = 0; i < ea; ++i) row[i] = contribution(def.edge_aggregates[i], r.props);
            auto [it, fresh] = partial[p].try_emplace({a, b}, row);
            if (!fresh) add_into(it->second, row);
        }
    };
    if (parts == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned p = 0; p < parts; ++p) pool.emplace_back(work, p);
        for (auto& t : pool) t.join();
    }
    Buckets buckets = std::move(partial[0]);
    for (unsigned p = 1; p < parts; ++p) {
        for (auto& [k, v] : partial[p]) {
            auto [it, fresh] = buckets.try_emplace(k, v);
            if (!fresh) add_into(it->second, v);
        }
    }

    std::vector<PropertyDef> ndefs, edefs;
    if (by_property) {
        for (auto slot : def.group_slots) ndefs.push_back(g.node_schema().at(slot));
    } else {
        ndefs.push_back({"group", ValueType::Int});
    }
    for (const auto& a : def.node_aggregates) ndefs.push_back({a.def.out_name, ValueType::Int});
    for (const auto& a : def.edge_aggregates) edefs.push_back({a.def.out_name, ValueType::Int});

    std::vector<NodeRecord> nodes;
    std::vector<std::uint64_t> external;
    for (const auto& [k, i] : index) {
        NodeRecord n{static_cast<NodeId>(i), k};
        for (auto x : node_acc[i]) n.props.emplace_back(x);
        nodes.push_back(std::move(n));
        external.push_back(static_cast<std::uint64_t>(i));
    }
    std::vector<EdgeRecord> edges;
    for (const auto& [k, v] : buckets) {
        EdgeRecord e{static_cast<EdgeId>(edges.size()), static_cast<NodeId>(k.first),
                     static_cast<NodeId>(k.second), {}};
        for (auto x : v) e.props.emplace_back(x);
        edges.push_back(std::move(e));
    }
    out.graph = PropertyGraph(Schema(ndefs), Schema(edefs), std::move(nodes), std::move(edges),
                              std::move(external));
    return out;
}

}  // namespace gviews::aggregate
