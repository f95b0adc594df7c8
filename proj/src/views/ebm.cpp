#include "gviews/views/ebm.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <thread>

namespace gviews {

ViewOrder::ViewOrder(std::vector<std::uint32_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (auto v : perm_) {
        if (v >= perm_.size() || seen[v]) {
            throw Error(ErrorKind::InvalidArgument, "view order is not a permutation");
        }
        seen[v] = true;
    }
}

ViewOrder ViewOrder::identity(std::size_t k) {
    std::vector<std::uint32_t> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<std::uint32_t>(i);
    return ViewOrder(std::move(p));
}

ViewOrder ViewOrder::reversed() const {
    std::vector<std::uint32_t> p(perm_.rbegin(), perm_.rend());
    return ViewOrder(std::move(p));
}

EdgeBooleanMatrix::EdgeBooleanMatrix(std::size_t rows, std::vector<std::string> view_names)
    : rows_(rows),
      words_((view_names.size() + 63) / 64),
      names_(std::move(view_names)),
      bits_(rows_ * words_, 0) {}

EdgeBooleanMatrix EdgeBooleanMatrix::from_rows(const std::vector<std::vector<bool>>& rows,
                                               std::vector<std::string> view_names) {
    const std::size_t k = rows.empty() ? view_names.size() : rows.front().size();
    if (view_names.empty()) {
        for (std::size_t j = 0; j < k; ++j) view_names.push_back("GV" + std::to_string(j + 1));
    }
    if (view_names.size() != k) {
        throw Error(ErrorKind::InvalidArgument, "row width does not match view name count");
    }
    EdgeBooleanMatrix m(rows.size(), std::move(view_names));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != k) throw Error(ErrorKind::InvalidArgument, "ragged EBM rows");
        for (std::size_t j = 0; j < k; ++j) m.set(r, j, rows[r][j]);
    }
    return m;
}

std::size_t EdgeBooleanMatrix::column_count(std::size_t view) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) n += get(r, view);
    return n;
}

EdgeBooleanMatrix compute_ebm(const PropertyGraph& g, const gvdl::BoundCollection& c,
                              unsigned threads) {
    std::vector<std::string> names;
    for (const auto& v : c.views) names.push_back(v.name);
    EdgeBooleanMatrix m(g.num_edges(), std::move(names));

    const auto edges = g.edge_stream();
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            for (std::size_t j = 0; j < c.views.size(); ++j) {
                if (gvdl::eval_predicate(c.views[j].predicate, edges[e], g)) m.set(e, j, true);
            }
        }
    };

    threads = std::max(1U, threads);
    if (threads == 1 || edges.size() < 2 * threads) {
        fill(0, edges.size());
        return m;
    }
    // Each worker owns a disjoint row range, so the rows never share words.
    std::vector<std::thread> workers;
    const std::size_t chunk = (edges.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = std::min(edges.size(), w * chunk);
        const std::size_t end = std::min(edges.size(), begin + chunk);
        workers.emplace_back(fill, begin, end);
    }
    for (auto& t : workers) t.join();
    return m;
}

std::uint64_t row_diffs(const EdgeBooleanMatrix& ebm, std::size_t row, const ViewOrder& order) {
    std::uint64_t diffs = 0;
    bool prev = false;
    for (std::size_t t = 0; t < order.size(); ++t) {
        const bool cur = ebm.get(row, order[t]);
        diffs += cur != prev;
        prev = cur;
    }
    return diffs;
}

std::uint64_t row_blocks(const EdgeBooleanMatrix& ebm, std::size_t row, const ViewOrder& order) {
    std::uint64_t blocks = 0;
    bool prev = false;
    for (std::size_t t = 0; t < order.size(); ++t) {
        const bool cur = ebm.get(row, order[t]);
        blocks += cur && !prev;
        prev = cur;
    }
    return blocks;
}

namespace {

void check_order(const EdgeBooleanMatrix& ebm, const ViewOrder& order) {
    if (order.size() != ebm.views()) {
        throw Error(ErrorKind::InvalidArgument, "order has " + std::to_string(order.size()) +
                                                    " views, matrix has " +
                                                    std::to_string(ebm.views()));
    }
}

}  // namespace

std::uint64_t diff_count(const EdgeBooleanMatrix& ebm, const ViewOrder& order) {
    check_order(ebm, order);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < ebm.rows(); ++r) total += row_diffs(ebm, r, order);
    return total;
}

std::uint64_t consecutive_blocks(const EdgeBooleanMatrix& ebm, const ViewOrder& order) {
    check_order(ebm, order);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < ebm.rows(); ++r) total += row_blocks(ebm, r, order);
    return total;
}

}  // namespace gviews
