#include "gviews/bench/generators.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <random>

namespace gviews::bench {

namespace {

std::string node_csv(std::size_t n, const std::vector<std::string>& extra = {}) {
    std::string s = "id:uint";
    s += extra.empty() ? "\n" : ",community:int\n";
    for (std::size_t i = 0; i < n; ++i) {
        s += std::to_string(i);
        if (!extra.empty()) s += "," + extra[i];
        s += '\n';
    }
    return s;
}

std::string header(const GenParams& p) {
    return "create view collection " + p.collection_name + " on " + p.graph_name + "\n";
}

std::string join_views(const std::vector<std::string>& views) {
    std::string s;
    for (std::size_t i = 0; i < views.size(); ++i) {
        s += "    " + views[i];
        s += i + 1 < views.size() ? ",\n" : "\n";
    }
    return s;
}

void check(const GenParams& p) {
    if (p.nodes == 0) throw Error(ErrorKind::InvalidArgument, "generator needs at least one node");
    if (p.views == 0) throw Error(ErrorKind::InvalidArgument, "generator needs at least one view");
    if (p.window <= 0) throw Error(ErrorKind::InvalidArgument, "window must be positive");
}

Workload windows(const GenParams& p, bool sliding) {
    check(p);
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<std::size_t> pick(0, p.nodes - 1);
    std::uniform_int_distribution<std::int64_t> ts(0, static_cast<std::int64_t>(p.views) * p.window - 1);
    std::string e = "src:uint,dst:uint,ts:int\n";
    for (std::size_t i = 0; i < p.edges; ++i) {
        const auto a = pick(rng), b = pick(rng);
        e += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(ts(rng)) + "\n";
    }
    std::vector<std::string> views;
    for (std::size_t i = 0; i < p.views; ++i) {
        const auto hi = static_cast<std::int64_t>(i + 1) * p.window;
        std::string v = "[W" + std::to_string(i + 1) + ": ";
        if (sliding) v += "ts >= " + std::to_string(hi - p.window) + " and ";
        v += "ts < " + std::to_string(hi) + "]";
        views.push_back(std::move(v));
    }
    return {parse_graph(node_csv(p.nodes), e), header(p) + join_views(views)};
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Workload expanding_window(const GenParams& p) { return windows(p, false); }
Workload sliding_window(const GenParams& p) { return windows(p, true); }

Workload community_removal(const GenParams& p) {
    check(p);
    const auto N = p.communities;
    if (N == 0 || p.removed == 0 || p.removed > N || p.nodes < N) {
        throw Error(ErrorKind::InvalidArgument, "community-removal needs 0 < k <= N <= nodes");
    }
    if (binomial(N, p.removed) > 4096) throw Error(ErrorKind::TooManyViews, "too many subsets");
    std::mt19937_64 rng(p.seed);
    std::vector<std::string> comm(p.nodes);
    std::vector<std::vector<std::size_t>> members(N);
    for (std::size_t v = 0; v < p.nodes; ++v) {
        const auto c = v % N;  // balanced communities
        comm[v] = std::to_string(c);
        members[c].push_back(v);
    }
    std::uniform_int_distribution<std::size_t> pick(0, p.nodes - 1), pc(0, N - 1);
    std::bernoulli_distribution inside(p.intra);
    std::string e = "src:uint,dst:uint\n";
    for (std::size_t i = 0; i < p.edges; ++i) {
        std::size_t a, b;
        if (inside(rng)) {
            const auto& m = members[pc(rng)];
            std::uniform_int_distribution<std::size_t> pm(0, m.size() - 1);
            a = m[pm(rng)];
            b = m[pm(rng)];
        } else {
            a = pick(rng);
            b = pick(rng);
        }
        e += std::to_string(a) + "," + std::to_string(b) + "\n";
    }

    std::vector<std::string> views;
    std::vector<std::size_t> subset(p.removed);
    for (std::size_t i = 0; i < p.removed; ++i) subset[i] = i;
    while (true) {
        std::string name = "R", pred;
        for (std::size_t i = 0; i < subset.size(); ++i) {
            name += (i ? "_" : "") + std::to_string(subset[i]);
            const auto c = std::to_string(subset[i]);
            pred += (i ? " and " : "") + std::string("src.community != ") + c +
                    " and dst.community != " + c;
        }
        views.push_back("[" + name + ": " + pred + "]");
        // Next k-subset in lexicographic order.
        std::size_t i = p.removed;
        while (i > 0 && subset[i - 1] == N - p.removed + i - 1) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < p.removed; ++j) subset[j] = subset[j - 1] + 1;
    }
    return {parse_graph(node_csv(p.nodes, comm), e), header(p) + join_views(views)};
}

Workload random_churn(const GenParams& p) {
    check(p);
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<std::size_t> pick(0, p.nodes - 1);
    struct Edge {
        std::size_t a, b;
        std::int64_t born, died;
    };
    const auto never = static_cast<std::int64_t>(p.views);
    std::vector<Edge> edges;
    std::vector<std::size_t> live;
    auto add = [&](std::int64_t born) {
        live.push_back(edges.size());
        edges.push_back({pick(rng), pick(rng), born, never});
    };
    for (std::size_t i = 0; i < p.edges; ++i) add(0);
    for (std::size_t v = 1; v < p.views; ++v) {
        for (std::size_t d = 0; d < p.dels && !live.empty(); ++d) {
            std::uniform_int_distribution<std::size_t> pl(0, live.size() - 1);
            const auto j = pl(rng);
            edges[live[j]].died = static_cast<std::int64_t>(v);
            live[j] = live.back();
            live.pop_back();
        }
        for (std::size_t a = 0; a < p.adds; ++a) add(static_cast<std::int64_t>(v));
    }
    std::string e = "src:uint,dst:uint,born:int,died:int\n";
    for (const auto& x : edges) {
        e += std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.born) + "," +
             std::to_string(x.died) + "\n";
    }
    std::vector<std::string> views;
    for (std::size_t v = 0; v < p.views; ++v) {
        views.push_back("[C" + std::to_string(v + 1) + ": born <= " + std::to_string(v) +
                        " and died > " + std::to_string(v) + "]");
    }
    return {parse_graph(node_csv(p.nodes), e), header(p) + join_views(views)};
}

Workload caut(const GenParams& p) {
    check(p);
    if (p.year_windows == 0 || p.author_steps == 0) {
        throw Error(ErrorKind::InvalidArgument, "caut needs year windows and author steps");
    }
    constexpr std::int64_t kFirstYear = 1996, kYearWidth = 5, kAuthorStep = 5;
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<std::size_t> pick(0, p.nodes - 1);
    std::uniform_int_distribution<std::int64_t> year(
        kFirstYear, kFirstYear + static_cast<std::int64_t>(p.year_windows) * kYearWidth - 1);
    std::uniform_int_distribution<std::int64_t> authors(
        1, static_cast<std::int64_t>(p.author_steps) * kAuthorStep);
    std::string e = "src:uint,dst:uint,year:int,authors:int\n";
    for (std::size_t i = 0; i < p.edges; ++i) {
        const auto a = pick(rng), b = pick(rng);
        e += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(year(rng)) + "," +
             std::to_string(authors(rng)) + "\n";
    }
    std::vector<std::string> views;
    for (std::size_t y = 0; y < p.year_windows; ++y) {
        const auto lo = kFirstYear + static_cast<std::int64_t>(y) * kYearWidth;
        for (std::size_t s = 0; s < p.author_steps; ++s) {
            const auto cap = static_cast<std::int64_t>(s + 1) * kAuthorStep;
            views.push_back("[Y" + std::to_string(lo) + "A" + std::to_string(cap) +
                            ": year >= " + std::to_string(lo) + " and year <= " +
                            std::to_string(lo + kYearWidth - 1) + " and authors <= " +
                            std::to_string(cap) + "]");
        }
    }
    return {parse_graph(node_csv(p.nodes), e), header(p) + join_views(views)};
}

Workload generate(std::string_view kind, const GenParams& p) {
    if (kind == "expanding-window") return expanding_window(p);
    if (kind == "sliding-window") return sliding_window(p);
    if (kind == "community-removal") return community_removal(p);
    if (kind == "random-churn") return random_churn(p);
    if (kind == "caut") return caut(p);
    throw Error(ErrorKind::InvalidArgument,
                "unknown generator '" + std::string(kind) +
                    "' (expanding-window|sliding-window|community-removal|random-churn|caut)");
}

}  // namespace gviews::bench
