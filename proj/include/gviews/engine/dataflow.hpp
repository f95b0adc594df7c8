#pragma once

#include "gviews/engine/record.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gviews::engine {

using MapFn = std::function<Record(const Record&)>;
using FilterFn = std::function<bool(const Record&)>;
/// Receives the key and the consolidated (sorted, positive) input of one key;
/// appends the key's full output.
using ReduceFn =
    std::function<void(const Record& key, std::span<const Update> input, std::vector<Update>& out)>;
using JoinFn = std::function<Record(const Record& left, const Record& right)>;

/// Handle to a collection inside a dataflow.
struct Stream {
    int op = -1;
    int scope = 0;
};

enum class OpKind { Input, Constant, Map, Filter, Concat, Negate, Reduce, Join, Enter, Leave, Variable, Probe };

/// Static operator graph. Operators are appended in topological order; the
/// only cycles are loop-variable feedback edges, which advance the innermost
/// timestamp coordinate.
class Dataflow {
public:
    struct Op {
        OpKind kind = OpKind::Input;
        int scope = 0;
        std::vector<int> inputs;
        std::string name;
        std::size_t key_len = 1;
        MapFn map;
        FilterFn filter;
        ReduceFn reduce;
        JoinFn join;
        std::vector<Record> constant;
        int feedback = -1;  // Variable: body operator
    };
    struct Consumer {
        int op;
        int port;
    };
    struct Scope {
        int parent = -1;
        std::size_t depth = 1;
        // Operators and child scopes interleaved in creation order; child
        // scopes are encoded as -(id + 1).
        std::vector<int> items;
        std::vector<int> queued;  // Reduce/Join/Variable ops in this scope and below
    };

    Dataflow();

    Stream input(const std::string& name);
    /// Records injected once, at the first processed time.
    Stream constant(std::vector<Record> records);

    Stream map(Stream s, MapFn fn);
    Stream filter(Stream s, FilterFn fn);
    Stream concat(std::vector<Stream> streams);
    Stream negate(Stream s);
    /// Groups by the first `key_len` fields.
    Stream reduce(Stream s, std::size_t key_len, ReduceFn fn, std::string name = "reduce");
    Stream join(Stream left, Stream right, std::size_t key_len, JoinFn fn,
                std::string name = "join");
    Stream distinct(Stream s);

    /// Runs `body` to a fixpoint in a nested scope starting from `init`.
    /// Inside the body, collections from enclosing scopes must go through enter().
    Stream iterate(Stream init, const std::function<Stream(Stream)>& body);
    Stream enter(Stream outer);

    void probe(Stream s, const std::string& name);

    const std::vector<Op>& ops() const { return ops_; }
    const std::vector<Scope>& scopes() const { return scopes_; }
    const std::vector<std::vector<Consumer>>& consumers() const { return consumers_; }
    int find_input(const std::string& name) const;
    int find_probe(const std::string& name) const;

private:
    int add(Op op);
    void check_scope(Stream s) const;

    std::vector<Op> ops_;
    std::vector<Scope> scopes_;
    std::vector<std::vector<Consumer>> consumers_;
    int current_ = 0;
};

}  // namespace gviews::engine
