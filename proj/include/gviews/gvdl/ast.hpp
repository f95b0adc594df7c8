#pragma once

#include "gviews/value.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gviews::gvdl {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);

/// Reference to a property in a predicate. `ID` is the edge ID.
struct PropertyRef {
    enum class Target { Edge, Src, Dst, EdgeId };
    Target target = Target::Edge;
    std::string name;  // empty for EdgeId

    bool operator==(const PropertyRef&) const = default;
};

using Operand = std::variant<PropertyRef, Value>;

struct Predicate;
using PredicatePtr = std::shared_ptr<const Predicate>;

struct Comparison {
    Operand lhs;
    CompareOp op = CompareOp::Eq;
    Operand rhs;
};

struct Predicate {
    enum class Kind { And, Or, Not, Compare };
    Kind kind = Kind::Compare;
    std::vector<PredicatePtr> children;  // And/Or: >=2, Not: 1
    Comparison cmp;                      // Compare only
};

PredicatePtr make_and(std::vector<PredicatePtr> children);
PredicatePtr make_or(std::vector<PredicatePtr> children);
PredicatePtr make_not(PredicatePtr child);
PredicatePtr make_compare(Operand lhs, CompareOp op, Operand rhs);

bool equal(const Predicate& a, const Predicate& b);

struct ViewDef {
    std::string name;
    std::string graph;
    PredicatePtr predicate;
};

struct NamedPredicate {
    std::string name;
    PredicatePtr predicate;
};

struct ViewCollectionDef {
    std::string name;
    std::string graph;
    std::vector<NamedPredicate> views;
};

struct Aggregate {
    enum class Fn { Count, Sum };
    std::string out_name;  // defaults to `count` / `sum_<prop>`
    Fn fn = Fn::Count;
    std::string property;  // Sum only
    bool explicit_name = false;

    bool operator==(const Aggregate&) const = default;
};

struct AggregateViewDef {
    std::string name;
    std::string graph;
    /// Exactly one of these is non-empty.
    std::vector<std::string> group_by;
    std::vector<PredicatePtr> group_predicates;
    std::vector<Aggregate> node_aggregates;
    std::vector<Aggregate> edge_aggregates;
    bool has_edge_clause = false;
};

using Statement = std::variant<ViewDef, ViewCollectionDef, AggregateViewDef>;

const std::string& statement_name(const Statement& s);
const std::string& statement_graph(const Statement& s);

}  // namespace gviews::gvdl
