// Sequential reference implementations. None of this touches the engine.
#include "gviews/analytics/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace gviews::analytics {

namespace {

struct Arc {
    NodeId src, dst;
    std::int64_t w;
};

std::vector<Arc> arcs_of(const AnalyticsSpec& spec, const PropertyGraph& g,
                         const std::vector<EdgeId>& edges) {
    EdgeEncoder enc(spec, g);
    std::vector<Arc> out;
    out.reserve(edges.size());
    for (EdgeId e : edges) {
        auto r = enc.encode(e);
        out.push_back({static_cast<NodeId>(r[0]), static_cast<NodeId>(r[1]), r[2]});
    }
    return out;
}

Results wcc(std::size_t n, const std::vector<Arc>& arcs) {
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<NodeId(NodeId)> find = [&](NodeId x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& a : arcs) {
        auto x = find(a.src), y = find(a.dst);
        if (x == y) continue;
        if (x < y) std::swap(x, y);
        parent[x] = y;  // root is always the smaller ID
    }
    Results out;
    for (NodeId v = 0; v < n; ++v) out.emplace_back(v, find(v));
    return out;
}

Results tarjan(std::size_t n, const std::vector<Arc>& arcs) {
    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& a : arcs) adj[a.src].push_back(a.dst);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::vector<std::int64_t> label(n, 0);
    int counter = 0;

    // Iterative to survive long paths.
    struct Frame {
        NodeId v;
        std::size_t next;
    };
    for (NodeId root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.next < adj[f.v].size()) {
                NodeId w = adj[f.v][f.next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const NodeId v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] != index[v]) continue;
            std::vector<NodeId> comp;
            NodeId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            const NodeId m = *std::min_element(comp.begin(), comp.end());
            for (NodeId x : comp) label[x] = m;
        }
    }
    Results out;
    for (NodeId v = 0; v < n; ++v) out.emplace_back(v, label[v]);
    return out;
}

std::vector<std::int64_t> dijkstra(std::size_t n, const std::vector<std::vector<Arc>>& adj,
                                   NodeId s) {
    constexpr auto inf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> d(n, inf);
    using Item = std::pair<std::int64_t, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du != d[u]) continue;
        for (const auto& a : adj[u]) {
            if (du + a.w < d[a.dst]) {
                d[a.dst] = du + a.w;
                pq.push({d[a.dst], a.dst});
            }
        }
    }
    return d;
}

Results bfs(std::size_t n, const std::vector<Arc>& arcs, NodeId s) {
    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& a : arcs) adj[a.src].push_back(a.dst);
    std::vector<std::int64_t> d(n, -1);
    std::queue<NodeId> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId v : adj[u]) {
            if (d[v] < 0) {
                d[v] = d[u] + 1;
                q.push(v);
            }
        }
    }
    Results out;
    for (NodeId v = 0; v < n; ++v)
        if (d[v] >= 0) out.emplace_back(v, d[v]);
    return out;
}

std::vector<std::vector<Arc>> adjacency(std::size_t n, const std::vector<Arc>& arcs) {
    std::vector<std::vector<Arc>> adj(n);
    for (const auto& a : arcs) adj[a.src].push_back(a);
    return adj;
}

Results sssp(std::size_t n, const std::vector<Arc>& arcs, NodeId s) {
    auto d = dijkstra(n, adjacency(n, arcs), s);
    Results out;
    for (NodeId v = 0; v < n; ++v)
        if (d[v] != std::numeric_limits<std::int64_t>::max()) out.emplace_back(v, d[v]);
    return out;
}

Results mpsp(std::size_t n, const std::vector<Arc>& arcs,
             const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    auto adj = adjacency(n, arcs);
    Results out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto d = dijkstra(n, adj, pairs[i].first);
        const auto x = d[pairs[i].second];
        if (x != std::numeric_limits<std::int64_t>::max())
            out.emplace_back(static_cast<std::int64_t>(i), x);
    }
    return out;
}

double sorted_sum(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0;
    for (double x : v) s += x;
    return s;
}

// Power iteration. Sums are taken over ascending values so the engine's
// floating-point result is reproduced bit for bit.
Results pagerank(std::size_t n, const std::vector<Arc>& arcs, int iterations, double damping) {
    if (n == 0) return {};
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<std::int64_t> deg(n, 0);
    for (const auto& a : arcs) ++deg[a.src];
    std::vector<double> rank(n, inv_n);
    for (int it = 0; it < iterations; ++it) {
        std::vector<std::vector<double>> in(n);
        for (const auto& a : arcs) in[a.dst].push_back(rank[a.src] / static_cast<double>(deg[a.src]));
        std::vector<double> dangling;
        for (NodeId v = 0; v < n; ++v)
            if (deg[v] == 0) dangling.push_back(rank[v]);
        const double dsum = sorted_sum(dangling);
        std::vector<double> next(n);
        for (NodeId v = 0; v < n; ++v) {
            next[v] = (1.0 - damping) * inv_n + damping * (sorted_sum(in[v]) + dsum * inv_n);
        }
        rank = std::move(next);
    }
    Results out;
    for (NodeId v = 0; v < n; ++v) out.emplace_back(v, engine::from_double(rank[v]));
    return out;
}

}  // namespace

Results scratch_oracle(const AnalyticsSpec& spec, const PropertyGraph& g,
                       const std::vector<EdgeId>& edges) {
    const auto n = g.num_nodes();
    const auto arcs = arcs_of(spec, g, edges);
    switch (spec.algorithm) {
        case Algorithm::Wcc: return wcc(n, arcs);
        case Algorithm::Scc: return tarjan(n, arcs);
        case Algorithm::Bfs: return bfs(n, arcs, spec.source);
        case Algorithm::Sssp: return sssp(n, arcs, spec.source);
        case Algorithm::PageRank: return pagerank(n, arcs, spec.iterations, spec.damping);
        case Algorithm::Mpsp: return mpsp(n, arcs, spec.pairs);
    }
    return {};
}

bool results_match(Algorithm a, const Results& x, const Results& y, double pr_tolerance) {
    if (a != Algorithm::PageRank) return x == y;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].first != y[i].first) return false;
        const double d = engine::as_double(x[i].second) - engine::as_double(y[i].second);
        if (!(std::fabs(d) <= pr_tolerance)) return false;
    }
    return true;
}

}  // namespace gviews::analytics
