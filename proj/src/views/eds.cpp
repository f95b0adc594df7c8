#include "gviews/views/eds.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace gviews {

EdgeDifferenceStream::EdgeDifferenceStream(std::string collection,
                                           std::vector<std::string> view_names, ViewOrder order,
                                           std::vector<std::vector<EdgeDiff>> positions)
    : collection_(std::move(collection)),
      names_(std::move(view_names)),
      order_(std::move(order)),
      positions_(std::move(positions)) {
    if (order_.size() != names_.size() || positions_.size() != names_.size()) {
        throw Error(ErrorKind::InvalidArgument, "EDS order, names and positions disagree in size");
    }
}

std::uint64_t EdgeDifferenceStream::total_count() const {
    std::uint64_t n = 0;
    for (const auto& p : positions_) n += p.size();
    return n;
}

EdgeDifferenceStream compute_eds(const EdgeBooleanMatrix& ebm, const ViewOrder& order,
                                 std::string collection) {
    if (order.size() != ebm.views()) {
        throw Error(ErrorKind::InvalidArgument, "order size does not match the number of views");
    }
    std::vector<std::vector<EdgeDiff>> pos(order.size());
    // Row-major scan keeps each position's list sorted by edge.
    for (std::size_t r = 0; r < ebm.rows(); ++r) {
        bool prev = false;
        for (std::size_t t = 0; t < order.size(); ++t) {
            const bool cur = ebm.get(r, order[t]);
            if (cur != prev) pos[t].push_back({static_cast<EdgeId>(r), cur ? 1 : -1});
            prev = cur;
        }
    }
    return EdgeDifferenceStream(std::move(collection), ebm.view_names(), order, std::move(pos));
}

std::vector<EdgeId> reconstruct(const EdgeDifferenceStream& eds, std::size_t position) {
    if (position >= eds.size()) {
        throw Error(ErrorKind::InvalidArgument, "position " + std::to_string(position) +
                                                    " out of range");
    }
    std::unordered_map<EdgeId, std::int64_t> net;
    for (std::size_t t = 0; t <= position; ++t) {
        for (const auto& d : eds.at(t)) net[d.edge] += d.multiplicity;
    }
    std::vector<EdgeId> out;
    for (const auto& [e, m] : net) {
        if (m != 0 && m != 1) {
            throw Error(ErrorKind::InconsistentStream,
                        "edge " + std::to_string(e) + " has multiplicity " + std::to_string(m) +
                            " at position " + std::to_string(position + 1));
        }
        if (m == 1) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string serialize_eds(const EdgeDifferenceStream& eds) {
    std::ostringstream os;
    os << "# collection=" << eds.collection() << "\n# order=";
    for (std::size_t t = 0; t < eds.size(); ++t) {
        if (t) os << ',';
        os << eds.view_name_at(t);
    }
    os << "\n# views=";
    for (std::size_t j = 0; j < eds.view_names().size(); ++j) {
        if (j) os << ',';
        os << eds.view_names()[j];
    }
    os << "\n# total=" << eds.total_count() << '\n';
    os << "position,edge_id,multiplicity\n";
    for (std::size_t t = 0; t < eds.size(); ++t) {
        for (const auto& d : eds.at(t)) os << t + 1 << ',' << d.edge << ',' << d.multiplicity << '\n';
    }
    return os.str();
}

namespace {

template <typename T>
T parse_num(std::string_view s, std::size_t line) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw Error(ErrorKind::ValueParseError,
                    "EDS line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto c = s.find(',', start);
        out.emplace_back(s.substr(start, c == std::string_view::npos ? s.npos : c - start));
        if (c == std::string_view::npos) break;
        start = c + 1;
    }
    return out;
}

}  // namespace

EdgeDifferenceStream parse_eds(std::string_view text) {
    std::string collection;
    std::vector<std::string> order_names;
    std::vector<std::string> view_names;
    std::optional<std::uint64_t> total;
    std::vector<std::vector<EdgeDiff>> pos;
    bool header_seen = false;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            auto eq = line.find('=');
            if (eq == std::string_view::npos) continue;
            auto key = line.substr(0, eq);
            auto val = line.substr(eq + 1);
            if (key == "collection") {
                collection = std::string(val);
            } else if (key == "order") {
                order_names = split_commas(val);
                pos.assign(order_names.size(), {});
            } else if (key == "views") {
                view_names = split_commas(val);
            } else if (key == "total") {
                total = parse_num<std::uint64_t>(val, line_no);
            }
            continue;
        }
        if (!header_seen) {
            if (line != "position,edge_id,multiplicity") {
                throw Error(ErrorKind::SchemaError, "EDS line " + std::to_string(line_no) +
                                                        ": expected position,edge_id,multiplicity");
            }
            header_seen = true;
            continue;
        }
        auto f = split_commas(line);
        if (f.size() != 3) {
            throw Error(ErrorKind::SchemaError,
                        "EDS line " + std::to_string(line_no) + ": expected 3 fields");
        }
        const auto p = parse_num<std::size_t>(f[0], line_no);
        const auto e = parse_num<EdgeId>(f[1], line_no);
        const auto m = parse_num<std::int32_t>(f[2], line_no);
        if (p == 0 || p > pos.size()) {
            throw Error(ErrorKind::SchemaError,
                        "EDS line " + std::to_string(line_no) + ": position out of range");
        }
        if (m != 1 && m != -1) {
            throw Error(ErrorKind::InconsistentStream,
                        "EDS line " + std::to_string(line_no) + ": multiplicity must be +1 or -1");
        }
        pos[p - 1].push_back({e, m});
    }

    // Without a views line the order itself defines the numbering.
    if (view_names.empty()) view_names = order_names;
    if (view_names.size() != order_names.size()) {
        throw Error(ErrorKind::SchemaError, "EDS views and order headers disagree");
    }
    std::vector<std::uint32_t> perm;
    for (const auto& n : order_names) {
        auto it = std::find(view_names.begin(), view_names.end(), n);
        if (it == view_names.end()) {
            throw Error(ErrorKind::SchemaError, "EDS order names unknown view '" + n + "'");
        }
        perm.push_back(static_cast<std::uint32_t>(it - view_names.begin()));
    }
    for (auto& p : pos) {
        std::sort(p.begin(), p.end(),
                  [](const EdgeDiff& a, const EdgeDiff& b) { return a.edge < b.edge; });
    }
    EdgeDifferenceStream eds(std::move(collection), std::move(view_names),
                             ViewOrder(std::move(perm)), std::move(pos));
    if (total && *total != eds.total_count()) {
        throw Error(ErrorKind::InconsistentStream, "EDS total header " + std::to_string(*total) +
                                                       " does not match " +
                                                       std::to_string(eds.total_count()) +
                                                       " records");
    }
    return eds;
}

}  // namespace gviews
