#pragma once

#include "gviews/views/ebm.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gviews {

struct EdgeDiff {
    EdgeId edge = 0;
    std::int32_t multiplicity = 0;  // +1 or -1

    bool operator==(const EdgeDiff&) const = default;
};

/// Views of a collection stored as signed edge differences in a chosen order.
///
/// Position t holds the changes that turn view order[t-1] (empty before the
/// first position) into view order[t]. Entries at each position are sorted by
/// edge ID and never carry a zero multiplicity.
class EdgeDifferenceStream {
public:
    EdgeDifferenceStream() = default;
    EdgeDifferenceStream(std::string collection, std::vector<std::string> view_names,
                         ViewOrder order, std::vector<std::vector<EdgeDiff>> positions);

    const std::string& collection() const { return collection_; }
    /// Names in original definition order.
    const std::vector<std::string>& view_names() const { return names_; }
    const ViewOrder& order() const { return order_; }
    std::size_t size() const { return positions_.size(); }
    const std::vector<EdgeDiff>& at(std::size_t position) const { return positions_.at(position); }
    const std::string& view_name_at(std::size_t position) const { return names_[order_[position]]; }

    std::uint64_t total_count() const;

    bool operator==(const EdgeDifferenceStream&) const = default;

private:
    std::string collection_;
    std::vector<std::string> names_;
    ViewOrder order_;
    std::vector<std::vector<EdgeDiff>> positions_;
};

EdgeDifferenceStream compute_eds(const EdgeBooleanMatrix& ebm, const ViewOrder& order,
                                 std::string collection = {});

/// Sum of positions 0..t. Throws InconsistentStream unless every net
/// multiplicity is 0 or 1. Returns the sorted edge IDs of the view.
std::vector<EdgeId> reconstruct(const EdgeDifferenceStream& eds, std::size_t position);

/// Text form: `#` header lines (collection, order, views, total) followed by
/// `position,edge_id,multiplicity` records with 1-based positions.
std::string serialize_eds(const EdgeDifferenceStream& eds);
EdgeDifferenceStream parse_eds(std::string_view text);

}  // namespace gviews
