#include "gviews/engine/dataflow.hpp"

#include "gviews/error.hpp"

namespace gviews::engine {

std::string Time::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < len; ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s + ")";
}

void consolidate(std::vector<Update>& updates) {
    std::sort(updates.begin(), updates.end(),
              [](const Update& a, const Update& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < updates.size();) {
        auto rec = updates[i].first;
        std::int64_t m = 0;
        for (; i < updates.size() && updates[i].first == rec; ++i) m += updates[i].second;
        if (m != 0) updates[out++] = {rec, m};
    }
    updates.resize(out);
}

Dataflow::Dataflow() { scopes_.push_back(Scope{}); }

int Dataflow::add(Op op) {
    op.scope = current_;
    const int id = static_cast<int>(ops_.size());
    for (std::size_t port = 0; port < op.inputs.size(); ++port) {
        consumers_[op.inputs[port]].push_back({id, static_cast<int>(port)});
    }
    const bool queued =
        op.kind == OpKind::Reduce || op.kind == OpKind::Join || op.kind == OpKind::Variable ||
        op.kind == OpKind::Leave;
    ops_.push_back(std::move(op));
    consumers_.emplace_back();
    scopes_[current_].items.push_back(id);
    if (queued) {
        for (int s = current_; s >= 0; s = scopes_[s].parent) scopes_[s].queued.push_back(id);
    }
    return id;
}

void Dataflow::check_scope(Stream s) const {
    if (s.op < 0 || s.op >= static_cast<int>(ops_.size())) {
        throw Error(ErrorKind::InvalidArgument, "stream does not belong to this dataflow");
    }
    if (s.scope != current_) {
        throw Error(ErrorKind::InvalidArgument,
                    "stream from another scope used without enter(); operator '" +
                        ops_[s.op].name + "'");
    }
}

Stream Dataflow::input(const std::string& name) {
    if (current_ != 0) throw Error(ErrorKind::InvalidArgument, "inputs belong to the root scope");
    if (find_input(name) >= 0) throw Error(ErrorKind::NameExists, "input " + name);
    Op op;
    op.kind = OpKind::Input;
    op.name = name;
    return {add(std::move(op)), current_};
}

Stream Dataflow::constant(std::vector<Record> records) {
    if (current_ != 0) throw Error(ErrorKind::InvalidArgument, "constants belong to the root scope");
    Op op;
    op.kind = OpKind::Constant;
    op.name = "constant";
    op.constant = std::move(records);
    return {add(std::move(op)), current_};
}

Stream Dataflow::map(Stream s, MapFn fn) {
    check_scope(s);
    Op op;
    op.kind = OpKind::Map;
    op.name = "map";
    op.inputs = {s.op};
    op.map = std::move(fn);
    return {add(std::move(op)), current_};
}

Stream Dataflow::filter(Stream s, FilterFn fn) {
    check_scope(s);
    Op op;
    op.kind = OpKind::Filter;
    op.name = "filter";
    op.inputs = {s.op};
    op.filter = std::move(fn);
    return {add(std::move(op)), current_};
}

Stream Dataflow::concat(std::vector<Stream> streams) {
    Op op;
    op.kind = OpKind::Concat;
    op.name = "concat";
    for (auto s : streams) {
        check_scope(s);
        op.inputs.push_back(s.op);
    }
    return {add(std::move(op)), current_};
}

Stream Dataflow::negate(Stream s) {
    check_scope(s);
    Op op;
    op.kind = OpKind::Negate;
    op.name = "negate";
    op.inputs = {s.op};
    return {add(std::move(op)), current_};
}

Stream Dataflow::reduce(Stream s, std::size_t key_len, ReduceFn fn, std::string name) {
    check_scope(s);
    if (key_len == 0 || key_len > std::tuple_size_v<Record>) {
        throw Error(ErrorKind::InvalidArgument, "bad key length");
    }
    Op op;
    op.kind = OpKind::Reduce;
    op.name = std::move(name);
    op.inputs = {s.op};
    op.key_len = key_len;
    op.reduce = std::move(fn);
    return {add(std::move(op)), current_};
}

Stream Dataflow::join(Stream left, Stream right, std::size_t key_len, JoinFn fn, std::string name) {
    check_scope(left);
    check_scope(right);
    if (key_len == 0 || key_len > std::tuple_size_v<Record>) {
        throw Error(ErrorKind::InvalidArgument, "bad key length");
    }
    Op op;
    op.kind = OpKind::Join;
    op.name = std::move(name);
    op.inputs = {left.op, right.op};
    op.key_len = key_len;
    op.join = std::move(fn);
    return {add(std::move(op)), current_};
}

Stream Dataflow::distinct(Stream s) {
    return reduce(
        s, std::tuple_size_v<Record>,
        [](const Record&, std::span<const Update> in, std::vector<Update>& out) {
            for (const auto& [r, m] : in)
                if (m > 0) out.emplace_back(r, 1);
        },
        "distinct");
}

Stream Dataflow::enter(Stream outer) {
    if (outer.scope == current_) return outer;
    // Walk up from the current scope to find the chain of scopes to cross.
    std::vector<int> chain;
    int s = current_;
    while (s >= 0 && s != outer.scope) {
        chain.push_back(s);
        s = scopes_[s].parent;
    }
    if (s < 0) throw Error(ErrorKind::InvalidArgument, "enter() from a non-enclosing scope");
    const int saved = current_;
    Stream cur = outer;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        current_ = *it;
        Op op;
        op.kind = OpKind::Enter;
        op.name = "enter";
        op.inputs = {cur.op};
        cur = {add(std::move(op)), current_};
    }
    current_ = saved;
    return cur;
}

Stream Dataflow::iterate(Stream init, const std::function<Stream(Stream)>& body) {
    check_scope(init);
    const int parent = current_;
    if (scopes_[parent].depth + 1 > kMaxDepth) {
        throw Error(ErrorKind::InvalidArgument, "loops nested too deeply");
    }
    const int child = static_cast<int>(scopes_.size());
    Scope sc;
    sc.parent = parent;
    sc.depth = scopes_[parent].depth + 1;
    scopes_.push_back(sc);
    scopes_[parent].items.push_back(-(child + 1));

    current_ = child;
    Stream entered = enter(init);
    Op var;
    var.kind = OpKind::Variable;
    var.name = "variable";
    var.inputs = {entered.op};
    const Stream v{add(std::move(var)), child};

    const Stream result = body(v);
    if (result.scope != child) {
        current_ = parent;
        throw Error(ErrorKind::InvalidArgument, "loop body must return a stream of its own scope");
    }
    ops_[v.op].feedback = result.op;
    consumers_[result.op].push_back({v.op, 1});
    current_ = parent;

    Op leave;
    leave.kind = OpKind::Leave;
    leave.name = "leave";
    leave.inputs = {result.op};
    return {add(std::move(leave)), parent};
}

void Dataflow::probe(Stream s, const std::string& name) {
    if (s.op < 0 || s.op >= static_cast<int>(ops_.size())) {
        throw Error(ErrorKind::InvalidArgument, "probe on unknown stream");
    }
    if (find_probe(name) >= 0) throw Error(ErrorKind::NameExists, "probe " + name);
    const int saved = current_;
    current_ = s.scope;
    Op op;
    op.kind = OpKind::Probe;
    op.name = name;
    op.inputs = {s.op};
    add(std::move(op));
    current_ = saved;
}

int Dataflow::find_input(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].kind == OpKind::Input && ops_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Dataflow::find_probe(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].kind == OpKind::Probe && ops_[i].name == name) return static_cast<int>(i);
    return -1;
}

}  // namespace gviews::engine
