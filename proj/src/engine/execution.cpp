#include "gviews/engine/execution.hpp"

#include "gviews/error.hpp"

#include <optional>

namespace gviews::engine {

namespace {

struct Entry {
    Time t;
    Record r;
    std::int64_t m;
};

struct KeyState {
    std::vector<Entry> in[2];
    std::vector<Entry> out;
    std::set<Time> times;  // closed under lub
    std::uint32_t compacted_for = 0;
    bool touched = false;
};

// Later views can no longer tell apart times of views before `view`, so
// those are advanced to `floor` (the previous view) and merged.
void compact(std::vector<Entry>& v, std::uint32_t view, std::uint32_t floor) {
    bool any = false;
    for (auto& e : v) {
        if (e.t.c[0] < view) {
            any = any || e.t.c[0] != floor;
            e.t.c[0] = floor;
        }
    }
    if (!any) return;
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
        return a.t != b.t ? a.t < b.t : a.r < b.r;
    });
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size();) {
        Entry e = v[i];
        std::size_t j = i + 1;
        for (; j < v.size() && v[j].t == e.t && v[j].r == e.r; ++j) e.m += v[j].m;
        if (e.m != 0) v[w++] = e;
        i = j;
    }
    v.resize(w);
}

void compact(KeyState& ks, std::uint32_t view, std::optional<std::uint32_t> floor) {
    if (!floor || (ks.touched && ks.compacted_for == view)) return;
    ks.touched = true;
    ks.compacted_for = view;
    for (auto& v : ks.in) compact(v, view, *floor);
    compact(ks.out, view, *floor);
    std::set<Time> times;
    for (auto t : ks.times) {
        if (t.c[0] < view) t.c[0] = *floor;
        times.insert(t);
    }
    ks.times = std::move(times);
}

struct OpState {
    std::map<Time, std::vector<std::pair<int, Update>>> pending;
    std::map<Time, std::set<Record>> scheduled;
    std::unordered_map<Record, KeyState, RecordHash> keys;
    std::map<Time, std::vector<Update>> delayed;
    std::vector<Diff> seen;
};

Record key_of(const Record& r, std::size_t key_len) {
    Record k{};
    for (std::size_t i = 0; i < key_len; ++i) k[i] = r[i];
    return k;
}

template <typename Map>
std::optional<Time> first_with_prefix(const Map& m, const Time& prefix) {
    Time lo = prefix;
    auto it = m.lower_bound(lo);
    if (it == m.end() || !it->first.has_prefix(prefix)) return std::nullopt;
    return it->first;
}

}  // namespace

struct Execution::State {
    const Dataflow* df;
    ExecutionOptions opts;
    std::vector<OpState> ops;
    std::map<int, std::vector<Update>> inbox;
    std::map<std::uint32_t, WorkStats> work;
    std::optional<std::uint32_t> last_view;
    std::optional<std::uint32_t> prev_view;  // view stepped before last_view

    State(const Dataflow& d, ExecutionOptions o) : df(&d), opts(o), ops(d.ops().size()) {}

    void emit(int op, const Time& t, const std::vector<Update>& ups) {
        if (ups.empty()) return;
        for (const auto& c : df->consumers()[op]) deliver(c.op, c.port, t, ups);
    }

    void deliver(int id, int port, const Time& t, const std::vector<Update>& ups) {
        const auto& op = df->ops()[id];
        auto& st = ops[id];
        switch (op.kind) {
            case OpKind::Map: {
                std::vector<Update> out;
                out.reserve(ups.size());
                for (const auto& [r, m] : ups) out.emplace_back(op.map(r), m);
                emit(id, t, out);
                return;
            }
            case OpKind::Filter: {
                std::vector<Update> out;
                for (const auto& u : ups)
                    if (op.filter(u.first)) out.push_back(u);
                emit(id, t, out);
                return;
            }
            case OpKind::Negate: {
                std::vector<Update> out = ups;
                for (auto& u : out) u.second = -u.second;
                emit(id, t, out);
                return;
            }
            case OpKind::Concat:
                emit(id, t, ups);
                return;
            case OpKind::Enter:
                emit(id, t.pushed(), ups);
                return;
            case OpKind::Leave: {
                // Held until the loop is done at the outer time so iterations
                // that cancel never leave the scope.
                auto& out = st.delayed[t.popped()];
                out.insert(out.end(), ups.begin(), ups.end());
                return;
            }
            case OpKind::Probe:
                for (const auto& [r, m] : ups) st.seen.push_back({t, r, m});
                return;
            case OpKind::Variable: {
                auto& next = st.delayed[t.advanced()];
                if (port == 0) {
                    emit(id, t, ups);
                    for (const auto& [r, m] : ups) next.emplace_back(r, -m);
                } else {
                    next.insert(next.end(), ups.begin(), ups.end());
                }
                return;
            }
            case OpKind::Reduce:
            case OpKind::Join: {
                auto& p = st.pending[t];
                for (const auto& u : ups) p.emplace_back(port, u);
                return;
            }
            case OpKind::Input:
            case OpKind::Constant:
                break;
        }
        throw Error(ErrorKind::Internal, "operator '" + op.name + "' cannot consume input");
    }

    std::optional<Time> op_pending(int id, const Time& prefix) const {
        const auto& st = ops[id];
        std::optional<Time> best;
        auto take = [&](std::optional<Time> t) {
            if (t && (!best || *t < *best)) best = t;
        };
        take(first_with_prefix(st.pending, prefix));
        take(first_with_prefix(st.scheduled, prefix));
        take(first_with_prefix(st.delayed, prefix));
        return best;
    }

    // Earliest time with `prefix` at which any operator in the scope's subtree
    // has work, truncated to the scope's depth.
    std::optional<Time> scope_pending(int scope, const Time& prefix) const {
        const auto& sc = df->scopes()[scope];
        std::optional<Time> best;
        for (int id : sc.queued) {
            auto t = op_pending(id, prefix);
            if (!t) continue;
            auto cut = t->truncated(sc.depth);
            if (!best || cut < *best) best = cut;
        }
        return best;
    }

    void run_scope(int scope, const Time& prefix) {
        std::optional<Time> prev;
        while (auto t = scope_pending(scope, prefix)) {
            if (prev && !(*prev < *t)) {
                throw Error(ErrorKind::Internal, "scheduler did not advance past " + t->str());
            }
            if (t->last() > opts.iteration_cap) {
                throw Error(ErrorKind::NonTermination,
                            "loop exceeded " + std::to_string(opts.iteration_cap) +
                                " iterations at " + t->str());
            }
            process_scope_at(scope, *t);
            prev = t;
        }
    }

    void process_scope_at(int scope, const Time& t) {
        for (int item : df->scopes()[scope].items) {
            if (item < 0) {
                run_scope(-item - 1, t);
                continue;
            }
            switch (df->ops()[item].kind) {
                case OpKind::Reduce:
                case OpKind::Join:
                    process_keyed(item, t);
                    break;
                case OpKind::Variable:
                case OpKind::Leave:
                    flush_delayed(item, t);
                    break;
                default:
                    break;
            }
        }
    }

    void flush_delayed(int id, const Time& t) {
        auto& st = ops[id];
        auto it = st.delayed.find(t);
        if (it == st.delayed.end()) return;
        auto ups = std::move(it->second);
        st.delayed.erase(it);
        consolidate(ups);
        emit(id, t, ups);
    }

    void process_keyed(int id, const Time& t) {
        const auto& op = df->ops()[id];
        auto& st = ops[id];
        std::set<Record> todo;

        if (auto it = st.pending.find(t); it != st.pending.end()) {
            for (const auto& [port, u] : it->second) {
                const auto key = key_of(u.first, op.key_len);
                auto& ks = st.keys[key];
                compact(ks, t.view(), prev_view);
                ks.in[port].push_back({t, u.first, u.second});
                if (todo.insert(key).second && !ks.times.count(t)) {
                    std::vector<Time> fresh;
                    for (const auto& x : ks.times) {
                        auto l = x.lub(t);
                        if (l != t && !ks.times.count(l)) fresh.push_back(l);
                    }
                    ks.times.insert(t);
                    for (const auto& l : fresh) {
                        ks.times.insert(l);
                        st.scheduled[l].insert(key);
                    }
                }
            }
            st.pending.erase(it);
        }
        if (auto it = st.scheduled.find(t); it != st.scheduled.end()) {
            todo.insert(it->second.begin(), it->second.end());
            st.scheduled.erase(it);
        }
        if (todo.empty()) return;

        auto& w = work[t.view()];
        std::vector<Update> emitted;
        std::vector<Update> acc[2], target;
        for (const auto& key : todo) {
            auto& ks = st.keys[key];
            compact(ks, t.view(), prev_view);
            ++w.keys;
            const std::size_t ports = op.kind == OpKind::Join ? 2 : 1;
            for (std::size_t p = 0; p < ports; ++p) {
                acc[p].clear();
                for (const auto& e : ks.in[p])
                    if (e.t.le(t)) acc[p].emplace_back(e.r, e.m);
                w.scanned += ks.in[p].size();
                consolidate(acc[p]);
                for (const auto& u : acc[p]) {
                    if (u.second < 0) {
                        throw Error(ErrorKind::InconsistentStream,
                                    "negative accumulation in '" + op.name + "' at " + t.str());
                    }
                }
            }
            target.clear();
            if (op.kind == OpKind::Reduce) {
                if (!acc[0].empty()) op.reduce(key, acc[0], target);
            } else {
                for (const auto& [l, ml] : acc[0])
                    for (const auto& [r, mr] : acc[1]) target.emplace_back(op.join(l, r), ml * mr);
            }
            for (const auto& e : ks.out)
                if (e.t.le(t)) target.emplace_back(e.r, -e.m);
            w.scanned += ks.out.size();
            consolidate(target);
            for (const auto& [r, m] : target) {
                ks.out.push_back({t, r, m});
                emitted.emplace_back(r, m);
            }
        }
        w.emitted += emitted.size();
        emit(id, t, emitted);
    }
};

Execution::Execution(const Dataflow& df, ExecutionOptions opts)
    : s_(std::make_unique<State>(df, opts)) {}
Execution::~Execution() = default;
Execution::Execution(Execution&&) noexcept = default;
Execution& Execution::operator=(Execution&&) noexcept = default;

void Execution::feed(std::string_view input, std::vector<Update> updates) {
    const int id = s_->df->find_input(std::string(input));
    if (id < 0) throw Error(ErrorKind::NotFound, "no input named " + std::string(input));
    auto& box = s_->inbox[id];
    box.insert(box.end(), updates.begin(), updates.end());
}

void Execution::step(std::uint32_t view) {
    if (s_->last_view && view <= *s_->last_view) {
        throw Error(ErrorKind::InvalidArgument, "views must be stepped in increasing order");
    }
    const Time t = Time::root(view);
    if (!s_->last_view) {
        const auto& ops = s_->df->ops();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (ops[i].kind != OpKind::Constant) continue;
            std::vector<Update> ups;
            for (const auto& r : ops[i].constant) ups.emplace_back(r, 1);
            consolidate(ups);
            s_->emit(static_cast<int>(i), t, ups);
        }
    }
    s_->prev_view = s_->last_view;
    s_->last_view = view;
    auto inbox = std::move(s_->inbox);
    s_->inbox.clear();
    for (auto& [id, ups] : inbox) {
        consolidate(ups);
        s_->emit(id, t, ups);
    }
    s_->work[view];
    s_->process_scope_at(0, t);
    if (auto left = s_->scope_pending(0, t)) {
        throw Error(ErrorKind::Internal, "work left behind at " + left->str());
    }
}

const std::vector<Diff>& Execution::probe(std::string_view name) const {
    const int id = s_->df->find_probe(std::string(name));
    if (id < 0) throw Error(ErrorKind::NotFound, "no probe named " + std::string(name));
    return s_->ops[id].seen;
}

std::vector<Update> Execution::probe_at(std::string_view name, std::uint32_t view) const {
    std::vector<Update> out;
    for (const auto& d : probe(name))
        if (d.time.view() == view) out.emplace_back(d.record, d.mult);
    consolidate(out);
    return out;
}

std::vector<Update> Execution::accumulate(std::string_view name, std::uint32_t view) const {
    std::vector<Update> out;
    for (const auto& d : probe(name))
        if (d.time.view() <= view) out.emplace_back(d.record, d.mult);
    consolidate(out);
    return out;
}

WorkStats Execution::work(std::uint32_t view) const {
    auto it = s_->work.find(view);
    return it == s_->work.end() ? WorkStats{} : it->second;
}

WorkStats Execution::total_work() const {
    WorkStats w;
    for (const auto& [v, s] : s_->work) w += s;
    return w;
}

}  // namespace gviews::engine
