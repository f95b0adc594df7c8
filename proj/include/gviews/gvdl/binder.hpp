#pragma once

#include "gviews/graph/property_graph.hpp"
#include "gviews/gvdl/ast.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gviews::gvdl {

/// An operand resolved against a graph schema.
struct BoundOperand {
    enum class Source { Literal, EdgeProp, SrcProp, DstProp, NodeProp, EdgeId, NodeId };
    Source source = Source::Literal;
    std::size_t slot = 0;
    Value literal;
    ValueType type = ValueType::Int;
};

/// Flat, immutable predicate program. Safe to share across threads.
class BoundPredicate {
public:
    struct Node {
        Predicate::Kind kind = Predicate::Kind::Compare;
        std::vector<std::uint32_t> children;
        BoundOperand lhs;
        CompareOp op = CompareOp::Eq;
        BoundOperand rhs;
    };

    BoundPredicate() = default;
    BoundPredicate(std::vector<Node> nodes, std::uint32_t root)
        : nodes_(std::move(nodes)), root_(root) {}

    const std::vector<Node>& nodes() const { return nodes_; }
    std::uint32_t root() const { return root_; }
    bool empty() const { return nodes_.empty(); }

private:
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

/// Which names a predicate may reference.
enum class PredicateContext {
    Edge,  // `name`, `src.name`, `dst.name`, `ID`
    Node,  // `name` refers to a node property
};

/// Resolves references and type-checks. Throws UnknownProperty / TypeMismatch.
BoundPredicate bind_predicate(const Predicate& p, const PropertyGraph& g,
                              PredicateContext ctx = PredicateContext::Edge);

bool eval_predicate(const BoundPredicate& p, const EdgeRecord& e, const PropertyGraph& g);
bool eval_node_predicate(const BoundPredicate& p, const NodeRecord& n);

struct BoundView {
    std::string name;
    BoundPredicate predicate;
};

struct BoundViewDef {
    ViewDef def;
    BoundPredicate predicate;
};

struct BoundCollection {
    ViewCollectionDef def;
    std::vector<BoundView> views;

    std::size_t size() const { return views.size(); }
};

struct BoundAggregate {
    Aggregate def;
    std::size_t slot = 0;  // Sum only
};

struct BoundAggregateView {
    AggregateViewDef def;
    std::vector<std::size_t> group_slots;
    std::vector<BoundPredicate> group_predicates;
    std::vector<BoundAggregate> node_aggregates;
    std::vector<BoundAggregate> edge_aggregates;
};

using BoundStatement = std::variant<BoundViewDef, BoundCollection, BoundAggregateView>;

BoundStatement bind(const Statement& s, const PropertyGraph& g);
BoundCollection bind(const ViewCollectionDef& c, const PropertyGraph& g);
BoundViewDef bind(const ViewDef& v, const PropertyGraph& g);
BoundAggregateView bind(const AggregateViewDef& a, const PropertyGraph& g);

}  // namespace gviews::gvdl
