#include "gviews/graph/property_graph.hpp"

#include "gviews/error.hpp"
#include "gviews/graph/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gviews {

Schema::Schema(std::vector<PropertyDef> defs) : defs_(std::move(defs)) {
    std::unordered_set<std::string> seen;
    for (const auto& d : defs_) {
        if (!seen.insert(d.name).second) {
            throw Error(ErrorKind::SchemaError, "duplicate property column '" + d.name + "'");
        }
    }
}

std::optional<std::size_t> Schema::slot_of(std::string_view name) const {
    for (std::size_t i = 0; i < defs_.size(); ++i) {
        if (defs_[i].name == name) return i;
    }
    return std::nullopt;
}

namespace {

void check_props(const Schema& schema, const std::vector<Value>& props, const std::string& what) {
    if (props.size() != schema.size()) {
        throw Error(ErrorKind::SchemaError, what + " has " + std::to_string(props.size()) +
                                                " properties, schema declares " +
                                                std::to_string(schema.size()));
    }
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (type_of(props[i]) != schema.at(i).type) {
            throw Error(ErrorKind::SchemaError,
                        what + " property '" + schema.at(i).name + "' has the wrong type");
        }
    }
}

}  // namespace

PropertyGraph::PropertyGraph(Schema node_schema, Schema edge_schema, std::vector<NodeRecord> nodes,
                             std::vector<EdgeRecord> edges, std::vector<std::uint64_t> external_ids)
    : node_schema_(std::move(node_schema)),
      edge_schema_(std::move(edge_schema)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      external_ids_(std::move(external_ids)) {
    if (external_ids_.size() != nodes_.size()) {
        throw Error(ErrorKind::SchemaError, "external id table does not match node count");
    }
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].nid != i) throw Error(ErrorKind::SchemaError, "node ids must be dense");
        if (!seen.insert(external_ids_[i]).second) {
            throw Error(ErrorKind::DuplicateNode,
                        "external node id " + std::to_string(external_ids_[i]) + " repeated");
        }
        check_props(node_schema_, nodes_[i].props, "node " + std::to_string(i));
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.eid != i) throw Error(ErrorKind::SchemaError, "edge ids must be dense");
        if (e.src >= nodes_.size() || e.dst >= nodes_.size()) {
            throw Error(ErrorKind::DanglingEdge,
                        "edge " + std::to_string(i) + " references a missing node");
        }
        check_props(edge_schema_, e.props, "edge " + std::to_string(i));
    }
}

std::optional<NodeId> PropertyGraph::find_external(std::uint64_t external) const {
    for (std::size_t i = 0; i < external_ids_.size(); ++i) {
        if (external_ids_[i] == external) return static_cast<NodeId>(i);
    }
    return std::nullopt;
}

const Value* PropertyGraph::node_property(NodeId id, std::string_view name) const {
    auto slot = node_schema_.slot_of(name);
    return slot ? &nodes_.at(id).props[*slot] : nullptr;
}

const Value* PropertyGraph::edge_property(EdgeId id, std::string_view name) const {
    auto slot = edge_schema_.slot_of(name);
    return slot ? &edges_.at(id).props[*slot] : nullptr;
}

namespace {

struct Header {
    std::vector<std::string> id_columns;
    Schema schema;
};

Header parse_header(std::string_view line, std::size_t id_count, const char* const* id_names,
                    const std::string& file) {
    std::vector<std::string> fields;
    if (!csv::split_line(line, fields)) {
        throw Error(ErrorKind::SchemaError, file + ": malformed header");
    }
    if (fields.size() < id_count) {
        throw Error(ErrorKind::SchemaError, file + ": header is missing id columns");
    }
    Header h;
    std::vector<PropertyDef> defs;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto& f = fields[i];
        const auto colon = f.rfind(':');
        if (colon == std::string::npos || colon == 0) {
            throw Error(ErrorKind::SchemaError,
                        file + ": column '" + f + "' lacks a name:type annotation");
        }
        const std::string name = f.substr(0, colon);
        const std::string type = f.substr(colon + 1);
        if (i < id_count) {
            if (name != id_names[i] || type != "uint") {
                throw Error(ErrorKind::SchemaError, file + ": column " + std::to_string(i + 1) +
                                                        " must be '" + id_names[i] + ":uint'");
            }
            h.id_columns.push_back(name);
            continue;
        }
        auto vt = parse_value_type(type);
        if (!vt) {
            throw Error(ErrorKind::SchemaError,
                        file + ": unknown type '" + type + "' for column '" + name + "'");
        }
        defs.push_back({name, *vt});
    }
    h.schema = Schema(std::move(defs));
    return h;
}

std::uint64_t parse_uint(const std::string& text, const std::string& where) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorKind::ValueParseError, where + ": '" + text + "' is not an unsigned id");
    }
    return v;
}

std::vector<Value> parse_props(const std::vector<std::string>& fields, std::size_t offset,
                               const Schema& schema, const std::string& where) {
    std::vector<Value> props;
    props.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const auto& def = schema.at(i);
        auto v = parse_value(fields[offset + i], def.type);
        if (!v) {
            throw Error(ErrorKind::ValueParseError,
                        where + " column '" + def.name + "': '" + fields[offset + i] +
                            "' is not a valid " + std::string(to_string(def.type)));
        }
        props.push_back(std::move(*v));
    }
    return props;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::MissingFile, path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PropertyGraph parse_graph_named(std::string_view node_csv, std::string_view edge_csv,
                                const std::string& node_name, const std::string& edge_name) {
    static const char* const kNodeIds[] = {"id"};
    static const char* const kEdgeIds[] = {"src", "dst"};

    std::optional<Header> node_header;
    std::vector<NodeRecord> nodes;
    std::vector<std::uint64_t> external;
    std::unordered_map<std::uint64_t, NodeId> dense;
    std::vector<std::string> fields;

    csv::for_each_line(node_csv, [&](std::size_t line_no, std::string_view line) {
        const std::string where = node_name + ":" + std::to_string(line_no);
        if (!node_header) {
            node_header = parse_header(line, 1, kNodeIds, node_name);
            return;
        }
        if (!csv::split_line(line, fields)) {
            throw Error(ErrorKind::ValueParseError, where + ": unterminated quote");
        }
        if (fields.size() != 1 + node_header->schema.size()) {
            throw Error(ErrorKind::ValueParseError,
                        where + ": expected " + std::to_string(1 + node_header->schema.size()) +
                            " columns, found " + std::to_string(fields.size()));
        }
        const auto ext = parse_uint(fields[0], where);
        const auto nid = static_cast<NodeId>(nodes.size());
        if (!dense.emplace(ext, nid).second) {
            throw Error(ErrorKind::DuplicateNode, where + ": node id " + fields[0] + " repeated");
        }
        nodes.push_back({nid, parse_props(fields, 1, node_header->schema, where)});
        external.push_back(ext);
    });
    if (!node_header) throw Error(ErrorKind::SchemaError, node_name + ": missing header");

    std::optional<Header> edge_header;
    std::vector<EdgeRecord> edges;
    csv::for_each_line(edge_csv, [&](std::size_t line_no, std::string_view line) {
        const std::string where = edge_name + ":" + std::to_string(line_no);
        if (!edge_header) {
            edge_header = parse_header(line, 2, kEdgeIds, edge_name);
            return;
        }
        if (!csv::split_line(line, fields)) {
            throw Error(ErrorKind::ValueParseError, where + ": unterminated quote");
        }
        if (fields.size() != 2 + edge_header->schema.size()) {
            throw Error(ErrorKind::ValueParseError,
                        where + ": expected " + std::to_string(2 + edge_header->schema.size()) +
                            " columns, found " + std::to_string(fields.size()));
        }
        const auto src = parse_uint(fields[0], where);
        const auto dst = parse_uint(fields[1], where);
        auto s = dense.find(src);
        auto d = dense.find(dst);
        if (s == dense.end() || d == dense.end()) {
            throw Error(ErrorKind::DanglingEdge,
                        where + ": edge " + fields[0] + "->" + fields[1] +
                            " references node " + (s == dense.end() ? fields[0] : fields[1]) +
                            " which is not in the node file");
        }
        const auto eid = static_cast<EdgeId>(edges.size());
        edges.push_back({eid, s->second, d->second,
                         parse_props(fields, 2, edge_header->schema, where)});
    });
    if (!edge_header) throw Error(ErrorKind::SchemaError, edge_name + ": missing header");

    return PropertyGraph(std::move(node_header->schema), std::move(edge_header->schema),
                         std::move(nodes), std::move(edges), std::move(external));
}

std::string header_columns(const Schema& schema) {
    std::string out;
    for (const auto& d : schema.defs()) {
        out += ',';
        out += csv::quote(d.name + ":" + std::string(to_string(d.type)));
    }
    return out;
}

std::string prop_columns(const std::vector<Value>& props) {
    std::string out;
    for (const auto& v : props) {
        out += ',';
        out += csv::quote(format_value(v));
    }
    return out;
}

}  // namespace

PropertyGraph parse_graph(std::string_view node_csv, std::string_view edge_csv) {
    return parse_graph_named(node_csv, edge_csv, "nodes", "edges");
}

PropertyGraph load_graph(const std::filesystem::path& node_file,
                         const std::filesystem::path& edge_file) {
    const std::string nodes = read_file(node_file);
    const std::string edges = read_file(edge_file);
    return parse_graph_named(nodes, edges, node_file.filename().string(),
                             edge_file.filename().string());
}

std::string format_nodes_csv(const PropertyGraph& g) {
    std::string out = "id:uint" + header_columns(g.node_schema()) + "\n";
    for (const auto& n : g.nodes()) {
        out += std::to_string(g.external_id(n.nid)) + prop_columns(n.props) + "\n";
    }
    return out;
}

std::string format_edges_csv(const PropertyGraph& g) {
    std::string out = "src:uint,dst:uint" + header_columns(g.edge_schema()) + "\n";
    for (const auto& e : g.edge_stream()) {
        out += std::to_string(g.external_id(e.src)) + "," + std::to_string(g.external_id(e.dst)) +
               prop_columns(e.props) + "\n";
    }
    return out;
}

std::string format_id_map(const PropertyGraph& g) {
    std::string out = "dense,external\n";
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
        out += std::to_string(i) + "," + std::to_string(g.external_id(static_cast<NodeId>(i))) +
               "\n";
    }
    return out;
}

void write_graph(const PropertyGraph& g, const std::filesystem::path& node_file,
                 const std::filesystem::path& edge_file) {
    std::ofstream n(node_file, std::ios::binary);
    std::ofstream e(edge_file, std::ios::binary);
    if (!n || !e) throw Error(ErrorKind::MissingFile, "cannot write graph files");
    n << format_nodes_csv(g);
    e << format_edges_csv(g);
}

}  // namespace gviews
