#pragma once

#include "gviews/graph/property_graph.hpp"
#include "gviews/gvdl/binder.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gviews {

/// A permutation of view indices 0..k-1. Position t holds the view shown at t.
class ViewOrder {
public:
    ViewOrder() = default;
    /// Throws InvalidArgument if `perm` is not a permutation.
    explicit ViewOrder(std::vector<std::uint32_t> perm);

    static ViewOrder identity(std::size_t k);

    std::size_t size() const { return perm_.size(); }
    std::uint32_t operator[](std::size_t position) const { return perm_[position]; }
    std::span<const std::uint32_t> positions() const { return perm_; }
    ViewOrder reversed() const;

    bool operator==(const ViewOrder&) const = default;

private:
    std::vector<std::uint32_t> perm_;
};

/// Edge boolean matrix: one k-bit membership row per base-graph edge.
class EdgeBooleanMatrix {
public:
    EdgeBooleanMatrix() = default;
    EdgeBooleanMatrix(std::size_t rows, std::vector<std::string> view_names);

    /// Builds a matrix from explicit rows (each of length k). Test convenience.
    static EdgeBooleanMatrix from_rows(const std::vector<std::vector<bool>>& rows,
                                       std::vector<std::string> view_names = {});

    std::size_t rows() const { return rows_; }
    std::size_t views() const { return names_.size(); }
    const std::vector<std::string>& view_names() const { return names_; }

    bool get(std::size_t row, std::size_t view) const {
        return (bits_[row * words_ + view / 64] >> (view % 64)) & 1U;
    }
    void set(std::size_t row, std::size_t view, bool value) {
        auto& w = bits_[row * words_ + view / 64];
        const std::uint64_t mask = std::uint64_t{1} << (view % 64);
        w = value ? (w | mask) : (w & ~mask);
    }

    std::span<const std::uint64_t> row_words(std::size_t row) const {
        return {bits_.data() + row * words_, words_};
    }
    std::size_t words_per_row() const { return words_; }

    /// Number of set bits in column `view`.
    std::size_t column_count(std::size_t view) const;

    bool operator==(const EdgeBooleanMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t words_ = 0;
    std::vector<std::string> names_;
    std::vector<std::uint64_t> bits_;
};

/// Evaluates every view predicate on every edge. Rows are computed on
/// `threads` disjoint edge ranges; the result does not depend on `threads`.
EdgeBooleanMatrix compute_ebm(const PropertyGraph& g, const gvdl::BoundCollection& c,
                              unsigned threads = 1);

/// Total EDS entries under `order`: per row, the number of membership changes
/// along the order with an implicit leading 0.
std::uint64_t diff_count(const EdgeBooleanMatrix& ebm, const ViewOrder& order);

/// Total maximal runs of 1-cells over all rows under `order`.
std::uint64_t consecutive_blocks(const EdgeBooleanMatrix& ebm, const ViewOrder& order);

/// Per-row helpers, exposed for property tests.
std::uint64_t row_diffs(const EdgeBooleanMatrix& ebm, std::size_t row, const ViewOrder& order);
std::uint64_t row_blocks(const EdgeBooleanMatrix& ebm, std::size_t row, const ViewOrder& order);

}  // namespace gviews
