#pragma once

#include "gviews/engine/dataflow.hpp"

#include <map>
#include <memory>
#include <set>
#include <string_view>
#include <unordered_map>

namespace gviews::engine {

struct ExecutionOptions {
    std::uint32_t iteration_cap = 1'000'000;
};

/// Work observed at one root time (view).
struct WorkStats {
    std::uint64_t keys = 0;     // keyed-operator evaluations
    std::uint64_t scanned = 0;  // history records read by those evaluations
    std::uint64_t emitted = 0;  // difference records produced by keyed operators

    WorkStats& operator+=(const WorkStats& o) {
        keys += o.keys;
        scanned += o.scanned;
        emitted += o.emitted;
        return *this;
    }
};

/// Mutable state of one run of a dataflow.
///
/// Root times are views. Each step(v) processes everything at (v, ...) in
/// lexicographic time order; the state accumulated at a time is the sum of all
/// differences at times below it in the product order. Keyed operators
/// re-evaluate a key only at times in the lub-closure of its input times.
class Execution {
public:
    explicit Execution(const Dataflow& df, ExecutionOptions opts = {});
    ~Execution();
    Execution(Execution&&) noexcept;
    Execution& operator=(Execution&&) noexcept;

    /// Buffers input differences for the next step().
    void feed(std::string_view input, std::vector<Update> updates);

    /// Processes root time `view`. Views must strictly increase.
    void step(std::uint32_t view);

    /// All differences seen by a probe, in emission order.
    const std::vector<Diff>& probe(std::string_view name) const;
    /// Consolidated probe differences at one root time.
    std::vector<Update> probe_at(std::string_view name, std::uint32_t view) const;
    /// Probe contents accumulated through root time `view`.
    std::vector<Update> accumulate(std::string_view name, std::uint32_t view) const;

    WorkStats work(std::uint32_t view) const;
    WorkStats total_work() const;

private:
    struct State;
    std::unique_ptr<State> s_;
};

}  // namespace gviews::engine
