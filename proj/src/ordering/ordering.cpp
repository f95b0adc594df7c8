#include "gviews/ordering/ordering.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>

namespace gviews {

namespace {

constexpr std::size_t kExactMatchingLimit = 12;

// Distance contribution of rows [begin, end). Columns are repacked as bitsets
// so C^T(U-C) entries become popcounts of (a & ~b).
std::vector<std::uint64_t> partial_distances(const EdgeBooleanMatrix& ebm, std::size_t begin,
                                             std::size_t end) {
    const std::size_t n = ebm.views() + 1;
    const std::size_t words = (end - begin + 63) / 64;
    std::vector<std::uint64_t> cols(n * words, 0);  // column 0 stays zero
    for (std::size_t r = begin; r < end; ++r) {
        const std::size_t i = r - begin;
        for (std::size_t j = 0; j < ebm.views(); ++j) {
            if (ebm.get(r, j)) cols[(j + 1) * words + i / 64] |= std::uint64_t{1} << (i % 64);
        }
    }
    std::vector<std::uint64_t> d(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::uint64_t ab = 0, ba = 0;
            for (std::size_t w = 0; w < words; ++w) {
                const auto x = cols[a * words + w], y = cols[b * words + w];
                ab += std::popcount(x & ~y);
                ba += std::popcount(~x & y);
            }
            d[a * n + b] += ab + ba;
            d[b * n + a] += ab + ba;
        }
    }
    return d;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

using WeightedEdge = std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>;

std::vector<WeightedEdge> sorted_edges(const HammingClique& q,
                                       const std::vector<std::uint32_t>& nodes) {
    std::vector<WeightedEdge> e;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            e.emplace_back(q.weight(nodes[i], nodes[j]), nodes[i], nodes[j]);
    std::sort(e.begin(), e.end());
    return e;
}

// Kruskal, ties broken by (weight, u, v).
std::vector<std::pair<std::uint32_t, std::uint32_t>> minimum_spanning_tree(const HammingClique& q) {
    std::vector<std::uint32_t> all(q.size());
    std::iota(all.begin(), all.end(), 0U);
    UnionFind uf(q.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tree;
    for (const auto& [w, u, v] : sorted_edges(q, all)) {
        if (uf.unite(u, v)) tree.emplace_back(u, v);
        if (tree.size() + 1 == q.size()) break;
    }
    return tree;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> exact_matching(
    const HammingClique& q, const std::vector<std::uint32_t>& odd) {
    const std::size_t m = odd.size();
    const std::size_t full = (std::size_t{1} << m) - 1;
    constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
    // best[mask]: cheapest matching of the vertices not in mask.
    std::vector<std::uint64_t> best(full + 1, kInf);
    std::vector<std::uint8_t> partner(full + 1, 0);
    best[full] = 0;
    for (std::size_t mask = full; mask-- > 0;) {
        if (std::popcount(mask) % 2) continue;
        const auto i = static_cast<std::size_t>(std::countr_one(mask));
        for (std::size_t j = i + 1; j < m; ++j) {
            if (mask >> j & 1U) continue;
            const auto next = mask | (std::size_t{1} << i) | (std::size_t{1} << j);
            if (best[next] == kInf) continue;
            const auto c = best[next] + q.weight(odd[i], odd[j]);
            if (c < best[mask]) {
                best[mask] = c;
                partner[mask] = static_cast<std::uint8_t>(j);
            }
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t mask = 0; mask != full;) {
        const auto i = static_cast<std::size_t>(std::countr_one(mask));
        const auto j = partner[mask];
        out.emplace_back(odd[i], odd[j]);
        mask |= (std::size_t{1} << i) | (std::size_t{1} << j);
    }
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> greedy_matching(
    const HammingClique& q, const std::vector<std::uint32_t>& odd) {
    std::vector<bool> used(q.size(), false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& [w, u, v] : sorted_edges(q, odd)) {
        if (used[u] || used[v]) continue;
        used[u] = used[v] = true;
        out.emplace_back(u, v);
    }
    return out;
}

// Hierholzer from node 0, always leaving through the smallest-index neighbor.
std::vector<std::uint32_t> euler_circuit(std::size_t n,
                                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> adj(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].first].emplace_back(edges[i].second, i);
        adj[edges[i].second].emplace_back(edges[i].first, i);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<bool> used(edges.size(), false);
    std::vector<std::size_t> next(n, 0);
    std::vector<std::uint32_t> stack{0}, circuit;
    while (!stack.empty()) {
        const auto v = stack.back();
        auto& i = next[v];
        while (i < adj[v].size() && used[adj[v][i].second]) ++i;
        if (i == adj[v].size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            used[adj[v][i].second] = true;
            stack.push_back(adj[v][i].first);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;
}

std::uint64_t direct_tour_weight(const HammingClique& q, const std::vector<std::uint32_t>& t) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < t.size(); ++i) w += q.weight(t[i], t[(i + 1) % t.size()]);
    return w;
}

}  // namespace

HammingClique hamming_clique(const EdgeBooleanMatrix& ebm, unsigned threads,
                             std::size_t partitions) {
    const std::size_t n = ebm.views() + 1;
    threads = std::max(1U, threads);
    if (partitions == 0) partitions = threads;
    partitions = std::max<std::size_t>(1, std::min(partitions, std::max<std::size_t>(1, ebm.rows())));
    const std::size_t chunk = (ebm.rows() + partitions - 1) / partitions;

    std::vector<std::vector<std::uint64_t>> parts(partitions);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t p = first; p < partitions; p += stride) {
            const std::size_t begin = std::min(ebm.rows(), p * chunk);
            parts[p] = partial_distances(ebm, begin, std::min(ebm.rows(), begin + chunk));
        }
    };
    if (threads == 1 || partitions == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& t : pool) t.join();
    }

    HammingClique q(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::uint64_t sum = 0;
            for (const auto& d : parts) sum += d[a * n + b];
            q.set_weight(a, b, sum);
        }
    }
    return q;
}

CandidateOrder christofides_order(const HammingClique& q) {
    if (q.size() < 2) throw Error(ErrorKind::InvalidArgument, "clique needs at least one view");
    CandidateOrder out;
    if (q.size() == 2) {
        out.tour = {0, 1};
    } else {
        auto edges = minimum_spanning_tree(q);
        std::vector<std::uint32_t> degree(q.size(), 0);
        for (const auto& [u, v] : edges) {
            ++degree[u];
            ++degree[v];
        }
        std::vector<std::uint32_t> odd;
        for (std::uint32_t v = 0; v < q.size(); ++v)
            if (degree[v] % 2) odd.push_back(v);
        auto matching = odd.size() <= kExactMatchingLimit ? exact_matching(q, odd)
                                                          : greedy_matching(q, odd);
        edges.insert(edges.end(), matching.begin(), matching.end());

        std::vector<bool> seen(q.size(), false);
        for (auto v : euler_circuit(q.size(), edges)) {
            if (seen[v]) continue;
            seen[v] = true;
            out.tour.push_back(v);
        }
    }
    out.tour_weight = direct_tour_weight(q, out.tour);

    std::vector<std::uint32_t> chain;
    for (std::size_t i = 1; i < out.tour.size(); ++i) chain.push_back(out.tour[i] - 1);
    out.forward = ViewOrder(chain);
    out.backward = out.forward.reversed();
    return out;
}

void score(CandidateOrder& c, const EdgeBooleanMatrix& ebm) {
    c.ds_forward = diff_count(ebm, c.forward);
    c.ds_backward = diff_count(ebm, c.backward);
}

ViewOrder optimize_order(const EdgeBooleanMatrix& ebm, unsigned threads) {
    if (ebm.views() <= 1) return ViewOrder::identity(ebm.views());
    auto c = christofides_order(hamming_clique(ebm, threads));
    score(c, ebm);
    if (c.ds_forward != c.ds_backward) return c.ds_forward < c.ds_backward ? c.forward : c.backward;
    return c.forward[0] < c.backward[0] ? c.forward : c.backward;
}

ViewOrder brute_force_order(const EdgeBooleanMatrix& ebm) {
    if (ebm.views() > 8) {
        throw Error(ErrorKind::TooManyViews,
                    std::to_string(ebm.views()) + " views; exhaustive ordering supports at most 8");
    }
    std::vector<std::uint32_t> perm(ebm.views());
    std::iota(perm.begin(), perm.end(), 0U);
    auto best = perm;
    auto best_ds = diff_count(ebm, ViewOrder(perm));
    while (std::next_permutation(perm.begin(), perm.end())) {
        const auto ds = diff_count(ebm, ViewOrder(perm));
        if (ds < best_ds) {
            best_ds = ds;
            best = perm;
        }
    }
    return ViewOrder(best);
}

ViewOrder random_order(std::size_t k, std::uint64_t seed) {
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0U);
    std::mt19937_64 rng(seed);
    // Fisher-Yates with explicit draws so the result is library independent.
    for (std::size_t i = k; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    return ViewOrder(perm);
}

std::uint64_t tour_weight(const HammingClique& q, const std::vector<std::uint32_t>& tour) {
    return direct_tour_weight(q, tour);
}

std::uint64_t optimal_tour_weight(const HammingClique& q) {
    if (q.size() > 10) throw Error(ErrorKind::TooManyViews, "tour enumeration limited to 10 nodes");
    if (q.size() < 2) return 0;
    std::vector<std::uint32_t> rest(q.size() - 1);
    std::iota(rest.begin(), rest.end(), 1U);
    auto best = std::numeric_limits<std::uint64_t>::max();
    do {
        std::uint64_t w = q.weight(0, rest.front()) + q.weight(rest.back(), 0);
        for (std::size_t i = 1; i < rest.size(); ++i) w += q.weight(rest[i - 1], rest[i]);
        best = std::min(best, w);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

}  // namespace gviews
