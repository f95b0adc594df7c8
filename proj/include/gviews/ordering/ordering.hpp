#pragma once

#include "gviews/views/ebm.hpp"

#include <cstdint>
#include <vector>

namespace gviews {

/// Complete graph over the zero column (node 0) and the k views (nodes 1..k),
/// weighted by Hamming distance between columns.
class HammingClique {
public:
    HammingClique() = default;
    explicit HammingClique(std::size_t n) : n_(n), w_(n * n, 0) {}

    std::size_t size() const { return n_; }
    std::uint64_t weight(std::size_t a, std::size_t b) const { return w_[a * n_ + b]; }
    void set_weight(std::size_t a, std::size_t b, std::uint64_t w) {
        w_[a * n_ + b] = w;
        w_[b * n_ + a] = w;
    }

    bool operator==(const HammingClique&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Sums per-partition distance matrices D_i = C_i^T (U - C_i) + (U - C_i)^T C_i
/// where C_i is a row block of the zero-padded matrix. Partitions are processed
/// on up to `threads` workers; the sum does not depend on the split.
HammingClique hamming_clique(const EdgeBooleanMatrix& ebm, unsigned threads = 1,
                             std::size_t partitions = 0);

struct CandidateOrder {
    std::vector<std::uint32_t> tour;  // clique nodes, starts at 0, closing edge implied
    std::uint64_t tour_weight = 0;
    ViewOrder forward;  // chain after dropping node 0
    ViewOrder backward;
    std::uint64_t ds_forward = 0;  // filled by score()
    std::uint64_t ds_backward = 0;
};

/// Christofides on the clique: MST, exact matching on odd vertices (greedy
/// above 12), Euler circuit from node 0 with smallest-neighbor-first, shortcut.
CandidateOrder christofides_order(const HammingClique& q);

void score(CandidateOrder& c, const EdgeBooleanMatrix& ebm);

/// The better direction of the Christofides chain. Ties go to the direction
/// whose first view has the smaller index.
ViewOrder optimize_order(const EdgeBooleanMatrix& ebm, unsigned threads = 1);

/// Exact minimizer of diff_count; first in lexicographic order among ties.
/// Throws TooManyViews for k > 8.
ViewOrder brute_force_order(const EdgeBooleanMatrix& ebm);

ViewOrder random_order(std::size_t k, std::uint64_t seed);

/// Closed-tour weight of `tour` (any vertex sequence, closing edge included).
std::uint64_t tour_weight(const HammingClique& q, const std::vector<std::uint32_t>& tour);

/// Minimum closed-tour weight by enumeration. Test oracle; n <= 10.
std::uint64_t optimal_tour_weight(const HammingClique& q);

}  // namespace gviews
