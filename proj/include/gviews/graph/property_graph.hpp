#pragma once

#include "gviews/value.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gviews {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct PropertyDef {
    std::string name;
    ValueType type;

    bool operator==(const PropertyDef&) const = default;
};

/// Ordered list of typed property columns. Records store values by slot.
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<PropertyDef> defs);

    std::size_t size() const { return defs_.size(); }
    const PropertyDef& at(std::size_t slot) const { return defs_.at(slot); }
    std::span<const PropertyDef> defs() const { return defs_; }
    std::optional<std::size_t> slot_of(std::string_view name) const;

    bool operator==(const Schema&) const = default;

private:
    std::vector<PropertyDef> defs_;
};

struct NodeRecord {
    NodeId nid = 0;
    std::vector<Value> props;

    bool operator==(const NodeRecord&) const = default;
};

struct EdgeRecord {
    EdgeId eid = 0;
    NodeId src = 0;
    NodeId dst = 0;
    std::vector<Value> props;

    bool operator==(const EdgeRecord&) const = default;
};

/// Immutable property graph with dense node and edge IDs.
///
/// Node IDs are assigned in node-file order, edge IDs in edge-file order. The
/// external node ID of each dense node is kept so the graph can be written back
/// out and so query results can be reported against the input IDs.
class PropertyGraph {
public:
    PropertyGraph() = default;

    /// Validates and takes ownership. Throws DanglingEdge / SchemaError on
    /// inconsistent input and DuplicateNode on repeated external IDs.
    PropertyGraph(Schema node_schema, Schema edge_schema, std::vector<NodeRecord> nodes,
                  std::vector<EdgeRecord> edges, std::vector<std::uint64_t> external_ids);

    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const Schema& node_schema() const { return node_schema_; }
    const Schema& edge_schema() const { return edge_schema_; }

    const NodeRecord& node(NodeId id) const { return nodes_.at(id); }
    const EdgeRecord& edge(EdgeId id) const { return edges_.at(id); }

    std::span<const NodeRecord> nodes() const { return nodes_; }
    /// Edge stream in edge-ID order.
    std::span<const EdgeRecord> edge_stream() const { return edges_; }

    std::uint64_t external_id(NodeId id) const { return external_ids_.at(id); }
    std::span<const std::uint64_t> external_ids() const { return external_ids_; }
    std::optional<NodeId> find_external(std::uint64_t external) const;

    const Value* node_property(NodeId id, std::string_view name) const;
    const Value* edge_property(EdgeId id, std::string_view name) const;

    bool operator==(const PropertyGraph&) const = default;

private:
    Schema node_schema_;
    Schema edge_schema_;
    std::vector<NodeRecord> nodes_;
    std::vector<EdgeRecord> edges_;
    std::vector<std::uint64_t> external_ids_;
};

/// Loads a graph from a typed-header node CSV and edge CSV.
///
/// Node file: `id:uint` followed by `name:type` columns. Edge file:
/// `src:uint,dst:uint` followed by `name:type` columns. Lines starting with
/// `#` are ignored.
PropertyGraph load_graph(const std::filesystem::path& node_file,
                         const std::filesystem::path& edge_file);

/// In-memory variants used by tests and generators.
PropertyGraph parse_graph(std::string_view node_csv, std::string_view edge_csv);

/// Writes the graph in the same format `load_graph` reads.
void write_graph(const PropertyGraph& g, const std::filesystem::path& node_file,
                 const std::filesystem::path& edge_file);
std::string format_nodes_csv(const PropertyGraph& g);
std::string format_edges_csv(const PropertyGraph& g);

/// `dense,external` lines, one per node.
std::string format_id_map(const PropertyGraph& g);

}  // namespace gviews
