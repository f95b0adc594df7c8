#include "gviews/splitting/splitting.hpp"

#include "gviews/error.hpp"

#include <algorithm>
#include <sstream>

namespace gviews::splitting {

std::string_view to_string(Mode m) { return m == Mode::Scratch ? "scratch" : "diff"; }

double LinearFit::operator()(double x) const { return std::max(0.0, slope * x + intercept); }

void CostModel::record(Mode mode, double size, double time) {
    if (size < 0 || time < 0) throw Error(ErrorKind::InvalidArgument, "negative observation");
    (mode == Mode::Scratch ? scratch_ : diff_).emplace_back(size, time);
}

LinearFit CostModel::fit(Mode mode) const {
    const auto& p = points(mode);
    if (p.empty()) {
        throw Error(ErrorKind::ColdModel, std::string("no ") + std::string(to_string(mode)) +
                                              " observations yet");
    }
    const double n = static_cast<double>(p.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : p) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : p) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) {
        // One distinct size: proportional through the origin.
        if (mx == 0) return {0, my};
        return {my / mx, 0};
    }
    const double slope = sxy / sxx;
    if (slope < 0) return {0, my};  // best fit among non-negative slopes
    return {slope, my - slope * mx};
}

Mode CostModel::decide(double view_size, double diff_size) const {
    const double s = predict(Mode::Scratch, view_size);
    const double d = predict(Mode::Differential, diff_size);
    return s < d ? Mode::Scratch : Mode::Differential;
}

Strategy parse_strategy(std::string_view name) {
    if (name == "diff") return Strategy::Differential;
    if (name == "scratch") return Strategy::Scratch;
    if (name == "adaptive") return Strategy::Adaptive;
    throw Error(ErrorKind::InvalidArgument,
                "unknown mode '" + std::string(name) + "' (diff|scratch|adaptive)");
}

TimeProxy parse_time_proxy(std::string_view name) {
    if (name == "wall") return TimeProxy::Wall;
    if (name == "work") return TimeProxy::Work;
    throw Error(ErrorKind::InvalidArgument, "unknown time proxy '" + std::string(name) + "' (wall|work)");
}

std::string RunLog::to_csv() const {
    std::ostringstream os;
    os << "view,decision,size,time,work\n";
    for (const auto& e : entries) {
        os << e.view << ',' << to_string(e.decision) << ',' << e.size << ',' << e.time << ','
           << e.work.keys << '\n';
    }
    return os.str();
}

std::uint64_t RunLog::total_keys() const {
    std::uint64_t n = 0;
    for (const auto& e : entries) n += e.work.keys;
    return n;
}

std::uint64_t RunLog::total_scanned() const {
    std::uint64_t n = 0;
    for (const auto& e : entries) n += e.work.scanned;
    return n;
}

double RunLog::total_millis() const {
    double n = 0;
    for (const auto& e : entries) n += e.millis;
    return n;
}

std::vector<std::size_t> RunLog::scratch_positions() const {
    std::vector<std::size_t> out;
    for (const auto& e : entries)
        if (e.decision == Mode::Scratch) out.push_back(e.position);
    return out;
}

SplitResult run_split(const analytics::AnalyticsSpec& spec, const PropertyGraph& g,
                      const EdgeDifferenceStream& eds, const SplitOptions& opts) {
    if (opts.batch == 0) throw Error(ErrorKind::InvalidArgument, "batch size must be positive");
    if (opts.forced && opts.forced->size() != eds.size()) {
        throw Error(ErrorKind::InvalidArgument, "forced plan length does not match the collection");
    }
    analytics::CollectionRunner runner(spec, g, eds, opts.engine);
    CostModel model, frozen;
    SplitResult res;
    for (std::size_t t = 0; t < eds.size(); ++t) {
        Mode m = Mode::Differential;
        if (opts.forced) {
            m = (*opts.forced)[t];
        } else if (t == 0 || opts.strategy == Strategy::Scratch) {
            m = Mode::Scratch;
        } else if (opts.strategy == Strategy::Adaptive && t >= 2) {
            if ((t - 2) % opts.batch == 0) frozen = model;
            m = frozen.decide(static_cast<double>(runner.view_size(t)),
                              static_cast<double>(runner.diff_size(t)));
        }
        if (t == 0) m = Mode::Scratch;  // nothing to be differential against

        const auto& vo = runner.step(m == Mode::Scratch);
        RunLogEntry e;
        e.position = t;
        e.view = eds.view_name_at(t);
        e.decision = m;
        e.size = m == Mode::Scratch ? runner.view_size(t) : runner.diff_size(t);
        e.millis = vo.millis;
        e.work = vo.work;
        e.time = opts.proxy == TimeProxy::Wall ? vo.millis : static_cast<double>(vo.work.scanned);
        model.record(m, static_cast<double>(e.size), e.time);
        res.log.entries.push_back(std::move(e));
    }
    res.output = runner.output();
    return res;
}

}  // namespace gviews::splitting
