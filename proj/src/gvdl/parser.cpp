#include "gviews/gvdl/parser.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace gviews::gvdl {

namespace {

enum class Tok {
    Ident,
    Int,
    String,
    Op,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Star,
    Semicolon,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t int_value = 0;
    CompareOp op = CompareOp::Eq;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = text_[pos_];
            if (ident_start(c)) {
                std::size_t start = pos_;
                while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
                // A trailing '-' belongs to whatever follows, not the identifier.
                while (pos_ > start + 1 && text_[pos_ - 1] == '-') retreat();
                t.kind = Tok::Ident;
                t.text = std::string(text_.substr(start, pos_ - start));
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '-' && pos_ + 1 < text_.size() &&
                        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
                std::size_t start = pos_;
                advance();
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    advance();
                t.kind = Tok::Int;
                t.text = std::string(text_.substr(start, pos_ - start));
                auto [ptr, ec] =
                    std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.int_value);
                if (ec != std::errc()) fail(t, "integer literal out of range");
            } else if (c == '\'' || c == '`' || c == '"') {
                const char close = c == '"' ? '"' : '\'';
                advance();
                std::string value;
                for (;;) {
                    if (pos_ >= text_.size()) fail(t, "unterminated string literal");
                    const char d = text_[pos_];
                    advance();
                    if (d == close) {
                        if (pos_ < text_.size() && text_[pos_] == close) {
                            value.push_back(close);
                            advance();
                            continue;
                        }
                        break;
                    }
                    value.push_back(d);
                }
                t.kind = Tok::String;
                t.text = std::move(value);
            } else if (match("<=") || match("\xE2\x89\xA4")) {
                t.kind = Tok::Op;
                t.op = CompareOp::Le;
            } else if (match(">=") || match("\xE2\x89\xA5")) {
                t.kind = Tok::Op;
                t.op = CompareOp::Ge;
            } else if (match("!=") || match("<>") || match("\xE2\x89\xA0")) {
                t.kind = Tok::Op;
                t.op = CompareOp::Ne;
            } else if (match("==") || match("=")) {
                t.kind = Tok::Op;
                t.op = CompareOp::Eq;
            } else if (match("<")) {
                t.kind = Tok::Op;
                t.op = CompareOp::Lt;
            } else if (match(">")) {
                t.kind = Tok::Op;
                t.op = CompareOp::Gt;
            } else {
                switch (c) {
                    case '[': t.kind = Tok::LBracket; break;
                    case ']': t.kind = Tok::RBracket; break;
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    case ':': t.kind = Tok::Colon; break;
                    case '.': t.kind = Tok::Dot; break;
                    case '*': t.kind = Tok::Star; break;
                    case ';': t.kind = Tok::Semicolon; break;
                    default: fail(t, std::string("unexpected character '") + c + "'");
                }
                t.text = std::string(1, c);
                advance();
            }
            out.push_back(std::move(t));
        }
    }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        throw Error(ErrorKind::SyntaxError,
                    std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void retreat() {
        --pos_;
        --column_;
    }

    bool match(std::string_view s) {
        if (text_.substr(pos_, s.size()) != s) return false;
        for (std::size_t i = 0; i < s.size(); ++i) advance();
        // Multi-byte glyphs count as one column.
        if (static_cast<unsigned char>(s[0]) >= 0x80) column_ -= s.size() - 1;
        return true;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    bool at_end() {
        while (peek().kind == Tok::Semicolon) ++pos_;
        return peek().kind == Tok::End;
    }

    Statement statement() {
        if (!is_keyword(peek(), "create")) {
            throw Error(ErrorKind::UnknownStatement,
                        std::to_string(peek().line) + ":" + std::to_string(peek().column) +
                            ": expected 'create view', found '" + describe(peek()) + "'");
        }
        ++pos_;
        expect_keyword("view");
        if (is_keyword(peek(), "collection") && peek(1).kind == Tok::Ident &&
            is_keyword(peek(2), "on")) {
            ++pos_;
            return collection();
        }
        std::string name = name_token("view name");
        expect_keyword("on");
        std::string graph = name_token("graph name");
        if (is_keyword(peek(), "edges") && is_keyword(peek(1), "where")) {
            pos_ += 2;
            ViewDef v{std::move(name), std::move(graph), predicate()};
            finish_statement();
            return v;
        }
        if (is_keyword(peek(), "nodes")) {
            return aggregate_view(std::move(name), std::move(graph));
        }
        fail(peek(), "expected 'edges where' or 'nodes group by'");
    }

    PredicatePtr predicate() { return or_expr(); }

    void expect_end() {
        if (!at_end()) fail(peek(), "unexpected trailing input '" + describe(peek()) + "'");
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }

    static bool is_keyword(const Token& t, std::string_view kw) {
        return t.kind == Tok::Ident && lower(t.text) == kw;
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::End) return "end of input";
        if (t.kind == Tok::Op) return std::string(to_string(t.op));
        return t.text;
    }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        Lexer::fail(at, msg);
    }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            fail(peek(), std::string("expected ") + what + ", found '" + describe(peek()) + "'");
        }
        ++pos_;
    }

    void expect_keyword(std::string_view kw) {
        if (!is_keyword(peek(), kw)) {
            fail(peek(), "expected '" + std::string(kw) + "', found '" + describe(peek()) + "'");
        }
        ++pos_;
    }

    std::string name_token(const char* what) {
        if (peek().kind != Tok::Ident) {
            fail(peek(), std::string("expected ") + what + ", found '" + describe(peek()) + "'");
        }
        return tokens_[pos_++].text;
    }

    void finish_statement() {
        if (peek().kind == Tok::Semicolon) ++pos_;
    }

    Statement collection() {
        ViewCollectionDef c;
        c.name = name_token("collection name");
        expect_keyword("on");
        c.graph = name_token("graph name");
        do {
            expect(Tok::LBracket, "'['");
            NamedPredicate np;
            np.name = name_token("view name");
            expect(Tok::Colon, "':'");
            np.predicate = predicate();
            expect(Tok::RBracket, "']'");
            for (const auto& existing : c.views) {
                if (existing.name == np.name) {
                    fail(tokens_[pos_ - 1], "duplicate view name '" + np.name + "' in collection");
                }
            }
            c.views.push_back(std::move(np));
        } while (peek().kind == Tok::Comma && (++pos_, true));
        finish_statement();
        return c;
    }

    Statement aggregate_view(std::string name, std::string graph) {
        AggregateViewDef a;
        a.name = std::move(name);
        a.graph = std::move(graph);
        expect_keyword("nodes");
        expect_keyword("group");
        expect_keyword("by");
        if (peek().kind == Tok::LBracket) {
            ++pos_;
            do {
                expect(Tok::LParen, "'('");
                a.group_predicates.push_back(predicate());
                expect(Tok::RParen, "')'");
            } while (peek().kind == Tok::Comma && (++pos_, true));
            expect(Tok::RBracket, "']'");
        } else {
            do {
                a.group_by.push_back(name_token("group-by property"));
            } while (peek().kind == Tok::Comma && (++pos_, true));
        }
        if (is_keyword(peek(), "aggregate")) {
            ++pos_;
            a.node_aggregates = aggregates();
        }
        if (is_keyword(peek(), "edges")) {
            ++pos_;
            expect_keyword("aggregate");
            a.edge_aggregates = aggregates();
            a.has_edge_clause = true;
        }
        finish_statement();
        return a;
    }

    std::vector<Aggregate> aggregates() {
        std::vector<Aggregate> out;
        do {
            Aggregate agg;
            if (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
                agg.out_name = tokens_[pos_].text;
                agg.explicit_name = true;
                pos_ += 2;
            }
            if (is_keyword(peek(), "count")) {
                ++pos_;
                expect(Tok::LParen, "'('");
                expect(Tok::Star, "'*'");
                expect(Tok::RParen, "')'");
                agg.fn = Aggregate::Fn::Count;
                if (!agg.explicit_name) agg.out_name = "count";
            } else if (is_keyword(peek(), "sum")) {
                ++pos_;
                expect(Tok::LParen, "'('");
                agg.fn = Aggregate::Fn::Sum;
                agg.property = name_token("property name");
                expect(Tok::RParen, "')'");
                if (!agg.explicit_name) agg.out_name = "sum_" + agg.property;
            } else {
                fail(peek(), "expected 'count(*)' or 'sum(...)', found '" + describe(peek()) + "'");
            }
            out.push_back(std::move(agg));
        } while (peek().kind == Tok::Comma && (++pos_, true));
        return out;
    }

    PredicatePtr or_expr() {
        std::vector<PredicatePtr> parts{and_expr()};
        while (is_keyword(peek(), "or")) {
            ++pos_;
            parts.push_back(and_expr());
        }
        return make_or(std::move(parts));
    }

    PredicatePtr and_expr() {
        std::vector<PredicatePtr> parts{not_expr()};
        while (is_keyword(peek(), "and")) {
            ++pos_;
            parts.push_back(not_expr());
        }
        return make_and(std::move(parts));
    }

    PredicatePtr not_expr() {
        if (is_keyword(peek(), "not")) {
            ++pos_;
            return make_not(not_expr());
        }
        return atom();
    }

    PredicatePtr atom() {
        if (peek().kind == Tok::LParen) {
            ++pos_;
            auto inner = or_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        Operand lhs = operand();
        if (peek().kind != Tok::Op) {
            fail(peek(), "expected comparison operator, found '" + describe(peek()) + "'");
        }
        const CompareOp op = tokens_[pos_++].op;
        Operand rhs = operand();
        return make_compare(std::move(lhs), op, std::move(rhs));
    }

    Operand operand() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int:
                ++pos_;
                return Value{t.int_value};
            case Tok::String:
                ++pos_;
                return Value{t.text};
            case Tok::Ident: {
                const std::string l = lower(t.text);
                if (l == "true" || l == "false") {
                    ++pos_;
                    return Value{l == "true"};
                }
                if (t.text == "ID") {
                    ++pos_;
                    return PropertyRef{PropertyRef::Target::EdgeId, ""};
                }
                if ((l == "src" || l == "dst") && peek(1).kind == Tok::Dot) {
                    pos_ += 2;
                    std::string prop = name_token("property name");
                    return PropertyRef{l == "src" ? PropertyRef::Target::Src
                                                  : PropertyRef::Target::Dst,
                                       std::move(prop)};
                }
                if (is_reserved(l)) fail(t, "expected operand, found keyword '" + t.text + "'");
                ++pos_;
                return PropertyRef{PropertyRef::Target::Edge, t.text};
            }
            default:
                fail(t, "expected operand, found '" + describe(t) + "'");
        }
    }

    static bool is_reserved(const std::string& l) {
        return l == "and" || l == "or" || l == "not" || l == "where" || l == "create" ||
               l == "aggregate";
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Printing ---------------------------------------------------------------

std::string quote_string(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out.push_back('\'');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string print_operand(const Operand& o) {
    if (const auto* ref = std::get_if<PropertyRef>(&o)) {
        switch (ref->target) {
            case PropertyRef::Target::EdgeId: return "ID";
            case PropertyRef::Target::Src: return "src." + ref->name;
            case PropertyRef::Target::Dst: return "dst." + ref->name;
            case PropertyRef::Target::Edge: return ref->name;
        }
    }
    const auto& v = std::get<Value>(o);
    if (const auto* s = std::get_if<std::string>(&v)) return quote_string(*s);
    return format_value(v);
}

// Precedence: Or=1, And=2, Not=3, Compare=4.
int precedence(const Predicate& p) {
    switch (p.kind) {
        case Predicate::Kind::Or: return 1;
        case Predicate::Kind::And: return 2;
        case Predicate::Kind::Not: return 3;
        case Predicate::Kind::Compare: return 4;
    }
    return 4;
}

std::string print_pred(const Predicate& p, int parent_prec) {
    std::string out;
    switch (p.kind) {
        case Predicate::Kind::Compare:
            out = print_operand(p.cmp.lhs) + " " + std::string(to_string(p.cmp.op)) + " " +
                  print_operand(p.cmp.rhs);
            break;
        case Predicate::Kind::Not:
            out = "not " + print_pred(*p.children.front(), 3);
            break;
        case Predicate::Kind::And:
        case Predicate::Kind::Or: {
            const char* sep = p.kind == Predicate::Kind::And ? " and " : " or ";
            const int prec = precedence(p);
            for (std::size_t i = 0; i < p.children.size(); ++i) {
                if (i) out += sep;
                // Same-kind children are flattened on construction; wrap them
                // anyway so a hand-built nested tree still reparses identically.
                const bool same = p.children[i]->kind == p.kind;
                out += print_pred(*p.children[i], same ? prec + 1 : prec);
            }
            break;
        }
    }
    if (precedence(p) < parent_prec) return "(" + out + ")";
    return out;
}

std::string print_aggregates(const std::vector<Aggregate>& aggs) {
    std::string out;
    for (std::size_t i = 0; i < aggs.size(); ++i) {
        if (i) out += ", ";
        const auto& a = aggs[i];
        if (a.explicit_name) out += a.out_name + ": ";
        out += a.fn == Aggregate::Fn::Count ? "count(*)" : "sum(" + a.property + ")";
    }
    return out;
}

}  // namespace

Statement parse(std::string_view text) {
    Parser p(text);
    if (p.at_end()) throw Error(ErrorKind::UnknownStatement, "empty input");
    Statement s = p.statement();
    p.expect_end();
    return s;
}

std::vector<Statement> parse_script(std::string_view text) {
    Parser p(text);
    std::vector<Statement> out;
    while (!p.at_end()) out.push_back(p.statement());
    if (out.empty()) throw Error(ErrorKind::UnknownStatement, "empty input");
    return out;
}

PredicatePtr parse_predicate(std::string_view text) {
    Parser p(text);
    auto pred = p.predicate();
    p.expect_end();
    return pred;
}

std::string to_gvdl(const Predicate& p) { return print_pred(p, 0); }

std::string to_gvdl(const Statement& s) {
    struct Printer {
        std::string operator()(const ViewDef& v) const {
            return "create view " + v.name + " on " + v.graph + " edges where " +
                   to_gvdl(*v.predicate);
        }
        std::string operator()(const ViewCollectionDef& c) const {
            std::string out = "create view collection " + c.name + " on " + c.graph;
            for (std::size_t i = 0; i < c.views.size(); ++i) {
                out += i ? ",\n    " : "\n    ";
                out += "[" + c.views[i].name + ": " + to_gvdl(*c.views[i].predicate) + "]";
            }
            return out;
        }
        std::string operator()(const AggregateViewDef& a) const {
            std::string out = "create view " + a.name + " on " + a.graph + "\nnodes group by ";
            if (!a.group_predicates.empty()) {
                out += "[";
                for (std::size_t i = 0; i < a.group_predicates.size(); ++i) {
                    if (i) out += ", ";
                    out += "(" + to_gvdl(*a.group_predicates[i]) + ")";
                }
                out += "]";
            } else {
                for (std::size_t i = 0; i < a.group_by.size(); ++i) {
                    if (i) out += ", ";
                    out += a.group_by[i];
                }
            }
            if (!a.node_aggregates.empty()) out += " aggregate " + print_aggregates(a.node_aggregates);
            if (a.has_edge_clause) out += "\nedges aggregate " + print_aggregates(a.edge_aggregates);
            return out;
        }
    };
    return std::visit(Printer{}, s);
}

}  // namespace gviews::gvdl
