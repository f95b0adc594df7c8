#pragma once

#include "gviews/analytics/analytics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gviews::splitting {

enum class Mode { Differential, Scratch };

std::string_view to_string(Mode m);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double operator()(double x) const;  // clamped at 0
};

/// Two independent size -> time regressions, one per execution mode.
class CostModel {
public:
    void record(Mode mode, double size, double time);
    std::size_t observations(Mode mode) const { return points(mode).size(); }

    /// Least squares with intercept over >= 2 distinct sizes; a single
    /// observation (or a single distinct size) scales proportionally through
    /// the origin. The slope is constrained to be non-negative. Throws
    /// ColdModel with no observations.
    LinearFit fit(Mode mode) const;
    double predict(Mode mode, double size) const { return fit(mode)(size); }

    /// Cheaper predicted mode; ties go to Differential. Throws ColdModel
    /// unless both modes have been observed.
    Mode decide(double view_size, double diff_size) const;

private:
    using Points = std::vector<std::pair<double, double>>;
    const Points& points(Mode m) const { return m == Mode::Scratch ? scratch_ : diff_; }
    Points scratch_, diff_;
};

enum class Strategy { Differential, Scratch, Adaptive };
/// `diff|scratch|adaptive`.
Strategy parse_strategy(std::string_view name);

/// What the cost models learn from: wall-clock milliseconds or engine work
/// (history records scanned by keyed operators).
enum class TimeProxy { Wall, Work };
TimeProxy parse_time_proxy(std::string_view name);

struct SplitOptions {
    Strategy strategy = Strategy::Adaptive;
    std::size_t batch = 10;
    TimeProxy proxy = TimeProxy::Wall;
    /// Overrides every decision when set (one entry per position).
    std::optional<std::vector<Mode>> forced;
    engine::ExecutionOptions engine;
};

struct RunLogEntry {
    std::size_t position = 0;
    std::string view;
    Mode decision = Mode::Differential;
    std::size_t size = 0;  // |view| for scratch, |diff| for differential
    double time = 0;       // in the proxy's unit
    double millis = 0;
    engine::WorkStats work;
};

struct RunLog {
    std::vector<RunLogEntry> entries;

    /// `view,decision,size,time,work`; work is the number of keyed
    /// recomputations.
    std::string to_csv() const;
    std::uint64_t total_keys() const;
    std::uint64_t total_scanned() const;
    double total_millis() const;
    std::vector<std::size_t> scratch_positions() const;
};

struct SplitResult {
    analytics::OutputDiffStream output;
    RunLog log;
};

/// Runs every view of the stream. Adaptive: position 0 from scratch,
/// position 1 differentially, then one decision per position using models
/// frozen at the start of each batch of `batch` positions.
SplitResult run_split(const analytics::AnalyticsSpec& spec, const PropertyGraph& g,
                      const EdgeDifferenceStream& eds, const SplitOptions& opts);

}  // namespace gviews::splitting
