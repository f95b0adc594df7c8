#include "gviews/gvdl/binder.hpp"

#include "gviews/error.hpp"
#include "gviews/gvdl/parser.hpp"

namespace gviews::gvdl {

namespace {

class Binder {
public:
    Binder(const PropertyGraph& g, PredicateContext ctx) : g_(g), ctx_(ctx) {}

    BoundPredicate run(const Predicate& p) {
        const auto root = bind(p);
        return BoundPredicate(std::move(nodes_), root);
    }

private:
    std::uint32_t bind(const Predicate& p) {
        BoundPredicate::Node node;
        node.kind = p.kind;
        if (p.kind == Predicate::Kind::Compare) {
            node.lhs = operand(p.cmp.lhs);
            node.rhs = operand(p.cmp.rhs);
            node.op = p.cmp.op;
            if (node.lhs.type != node.rhs.type) {
                throw Error(ErrorKind::TypeMismatch,
                            "cannot compare " + std::string(to_string(node.lhs.type)) + " with " +
                                std::string(to_string(node.rhs.type)) + " in '" +
                                describe(p.cmp) + "'");
            }
            if (node.lhs.type == ValueType::Bool && node.op != CompareOp::Eq &&
                node.op != CompareOp::Ne) {
                throw Error(ErrorKind::TypeMismatch,
                            "ordering operator on bool in '" + describe(p.cmp) + "'");
            }
        } else {
            for (const auto& c : p.children) node.children.push_back(bind(*c));
        }
        nodes_.push_back(std::move(node));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    static std::string describe(const Comparison& c) {
        return gvdl::to_gvdl(*make_compare(c.lhs, c.op, c.rhs));
    }

    BoundOperand operand(const Operand& o) {
        BoundOperand b;
        if (const auto* v = std::get_if<Value>(&o)) {
            b.source = BoundOperand::Source::Literal;
            b.literal = *v;
            b.type = type_of(*v);
            return b;
        }
        const auto& ref = std::get<PropertyRef>(o);
        using T = PropertyRef::Target;
        if (ref.target == T::EdgeId) {
            if (ctx_ == PredicateContext::Node) {
                throw Error(ErrorKind::UnknownProperty, "ID is only valid in edge predicates");
            }
            b.source = BoundOperand::Source::EdgeId;
            b.type = ValueType::Int;
            return b;
        }
        if (ctx_ == PredicateContext::Node && ref.target != T::Edge) {
            throw Error(ErrorKind::UnknownProperty,
                        "src./dst. references are not valid in node predicates ('" + ref.name +
                            "')");
        }
        const bool node_side = ref.target != T::Edge || ctx_ == PredicateContext::Node;
        const Schema& schema = node_side ? g_.node_schema() : g_.edge_schema();
        auto slot = schema.slot_of(ref.name);
        if (!slot) {
            throw Error(ErrorKind::UnknownProperty,
                        ref.name + " (no such " + (node_side ? "node" : "edge") + " property)");
        }
        b.slot = *slot;
        b.type = schema.at(*slot).type;
        if (ctx_ == PredicateContext::Node) {
            b.source = BoundOperand::Source::NodeProp;
        } else {
            b.source = ref.target == T::Src   ? BoundOperand::Source::SrcProp
                       : ref.target == T::Dst ? BoundOperand::Source::DstProp
                                              : BoundOperand::Source::EdgeProp;
        }
        return b;
    }

    const PropertyGraph& g_;
    PredicateContext ctx_;
    std::vector<BoundPredicate::Node> nodes_;
};

bool compare(const Value& a, CompareOp op, const Value& b) {
    switch (op) {
        case CompareOp::Eq: return a == b;
        case CompareOp::Ne: return a != b;
        case CompareOp::Lt: return a < b;
        case CompareOp::Le: return a <= b;
        case CompareOp::Gt: return a > b;
        case CompareOp::Ge: return a >= b;
    }
    return false;
}

struct EdgeCtx {
    const EdgeRecord* edge = nullptr;
    const PropertyGraph* graph = nullptr;
    const NodeRecord* node = nullptr;
};

// IDs are materialized into `scratch`.
const Value& fetch(const BoundOperand& o, const EdgeCtx& ctx, Value& scratch) {
    using S = BoundOperand::Source;
    switch (o.source) {
        case S::Literal: return o.literal;
        case S::EdgeProp: return ctx.edge->props[o.slot];
        case S::SrcProp: return ctx.graph->node(ctx.edge->src).props[o.slot];
        case S::DstProp: return ctx.graph->node(ctx.edge->dst).props[o.slot];
        case S::NodeProp: return ctx.node->props[o.slot];
        case S::EdgeId:
            scratch = static_cast<std::int64_t>(ctx.edge->eid);
            return scratch;
        case S::NodeId:
            scratch = static_cast<std::int64_t>(ctx.node->nid);
            return scratch;
    }
    return o.literal;
}

bool eval_node(const BoundPredicate& p, std::uint32_t idx, const EdgeCtx& ctx) {
    const auto& n = p.nodes()[idx];
    switch (n.kind) {
        case Predicate::Kind::And:
            for (auto c : n.children)
                if (!eval_node(p, c, ctx)) return false;
            return true;
        case Predicate::Kind::Or:
            for (auto c : n.children)
                if (eval_node(p, c, ctx)) return true;
            return false;
        case Predicate::Kind::Not:
            return !eval_node(p, n.children.front(), ctx);
        case Predicate::Kind::Compare: {
            Value ls, rs;
            return compare(fetch(n.lhs, ctx, ls), n.op, fetch(n.rhs, ctx, rs));
        }
    }
    return false;
}

}  // namespace

BoundPredicate bind_predicate(const Predicate& p, const PropertyGraph& g, PredicateContext ctx) {
    return Binder(g, ctx).run(p);
}

bool eval_predicate(const BoundPredicate& p, const EdgeRecord& e, const PropertyGraph& g) {
    return eval_node(p, p.root(), EdgeCtx{&e, &g, nullptr});
}

bool eval_node_predicate(const BoundPredicate& p, const NodeRecord& n) {
    return eval_node(p, p.root(), EdgeCtx{nullptr, nullptr, &n});
}

BoundViewDef bind(const ViewDef& v, const PropertyGraph& g) {
    return BoundViewDef{v, bind_predicate(*v.predicate, g)};
}

BoundCollection bind(const ViewCollectionDef& c, const PropertyGraph& g) {
    BoundCollection out;
    out.def = c;
    for (const auto& v : c.views) out.views.push_back({v.name, bind_predicate(*v.predicate, g)});
    return out;
}

namespace {

std::vector<BoundAggregate> bind_aggregates(const std::vector<Aggregate>& aggs,
                                            const Schema& schema, const char* side) {
    std::vector<BoundAggregate> out;
    for (const auto& a : aggs) {
        BoundAggregate b{a, 0};
        if (a.fn == Aggregate::Fn::Sum) {
            auto slot = schema.slot_of(a.property);
            if (!slot) {
                throw Error(ErrorKind::UnknownProperty,
                            a.property + " (no such " + side + " property)");
            }
            if (schema.at(*slot).type != ValueType::Int) {
                throw Error(ErrorKind::TypeMismatch, "sum(" + a.property + ") needs an int " +
                                                         side + " property");
            }
            b.slot = *slot;
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

BoundAggregateView bind(const AggregateViewDef& a, const PropertyGraph& g) {
    BoundAggregateView out;
    out.def = a;
    for (const auto& name : a.group_by) {
        auto slot = g.node_schema().slot_of(name);
        if (!slot) throw Error(ErrorKind::UnknownProperty, name + " (no such node property)");
        out.group_slots.push_back(*slot);
    }
    for (const auto& p : a.group_predicates) {
        out.group_predicates.push_back(bind_predicate(*p, g, PredicateContext::Node));
    }
    out.node_aggregates = bind_aggregates(a.node_aggregates, g.node_schema(), "node");
    if (a.has_edge_clause) {
        out.edge_aggregates = bind_aggregates(a.edge_aggregates, g.edge_schema(), "edge");
    } else {
        // Without an edge clause super-edges still report how many base edges they carry.
        Aggregate count;
        count.out_name = "count";
        out.edge_aggregates.push_back({count, 0});
    }
    return out;
}

BoundStatement bind(const Statement& s, const PropertyGraph& g) {
    return std::visit([&](const auto& d) -> BoundStatement { return bind(d, g); }, s);
}

}  // namespace gviews::gvdl
