#include "gviews/gvdl/ast.hpp"

namespace gviews::gvdl {

std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

namespace {

PredicatePtr make_nary(Predicate::Kind kind, std::vector<PredicatePtr> children) {
    if (children.size() == 1) return children.front();
    auto p = std::make_shared<Predicate>();
    p->kind = kind;
    // Flatten nested nodes of the same kind so printing and reparsing agree.
    for (auto& c : children) {
        if (c->kind == kind) {
            p->children.insert(p->children.end(), c->children.begin(), c->children.end());
        } else {
            p->children.push_back(std::move(c));
        }
    }
    return p;
}

}  // namespace

PredicatePtr make_and(std::vector<PredicatePtr> children) {
    return make_nary(Predicate::Kind::And, std::move(children));
}

PredicatePtr make_or(std::vector<PredicatePtr> children) {
    return make_nary(Predicate::Kind::Or, std::move(children));
}

PredicatePtr make_not(PredicatePtr child) {
    auto p = std::make_shared<Predicate>();
    p->kind = Predicate::Kind::Not;
    p->children.push_back(std::move(child));
    return p;
}

PredicatePtr make_compare(Operand lhs, CompareOp op, Operand rhs) {
    auto p = std::make_shared<Predicate>();
    p->kind = Predicate::Kind::Compare;
    p->cmp = Comparison{std::move(lhs), op, std::move(rhs)};
    return p;
}

bool equal(const Predicate& a, const Predicate& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Predicate::Kind::Compare) {
        return a.cmp.lhs == b.cmp.lhs && a.cmp.op == b.cmp.op && a.cmp.rhs == b.cmp.rhs;
    }
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!equal(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

const std::string& statement_name(const Statement& s) {
    return std::visit([](const auto& d) -> const std::string& { return d.name; }, s);
}

const std::string& statement_graph(const Statement& s) {
    return std::visit([](const auto& d) -> const std::string& { return d.graph; }, s);
}

}  // namespace gviews::gvdl
