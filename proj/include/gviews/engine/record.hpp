#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace gviews::engine {

/// Fixed-width record. Fields are int64; doubles are stored bit-cast (see
/// `as_double`) so records stay trivially comparable and hashable.
using Record = std::array<std::int64_t, 4>;

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

inline std::int64_t from_double(double d) { return std::bit_cast<std::int64_t>(d); }
inline double as_double(std::int64_t v) { return std::bit_cast<double>(v); }

struct RecordHash {
    std::size_t operator()(const Record& r) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto f : r) {
            h ^= static_cast<std::uint64_t>(f) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline constexpr std::size_t kMaxDepth = 4;

/// Timestamp of a collection inside nested scopes: (view, iter, inner iter, ...).
/// `<` is lexicographic (processing order); `le` is the product partial order.
struct Time {
    std::array<std::uint32_t, kMaxDepth> c{};
    std::uint8_t len = 0;

    static Time root(std::uint32_t view) {
        Time t;
        t.c[0] = view;
        t.len = 1;
        return t;
    }

    std::uint32_t view() const { return c[0]; }
    std::uint32_t last() const { return c[len - 1]; }

    Time pushed() const {
        Time t = *this;
        t.c[t.len++] = 0;
        return t;
    }
    Time popped() const {
        Time t = *this;
        t.c[--t.len] = 0;
        return t;
    }
    Time advanced() const {
        Time t = *this;
        ++t.c[t.len - 1];
        return t;
    }
    Time truncated(std::size_t n) const {
        Time t = *this;
        for (std::size_t i = n; i < kMaxDepth; ++i) t.c[i] = 0;
        t.len = static_cast<std::uint8_t>(n);
        return t;
    }
    bool has_prefix(const Time& p) const {
        if (p.len > len) return false;
        for (std::size_t i = 0; i < p.len; ++i)
            if (c[i] != p.c[i]) return false;
        return true;
    }

    bool le(const Time& o) const {
        for (std::size_t i = 0; i < len; ++i)
            if (c[i] > o.c[i]) return false;
        return true;
    }
    Time lub(const Time& o) const {
        Time t = *this;
        for (std::size_t i = 0; i < len; ++i) t.c[i] = std::max(c[i], o.c[i]);
        return t;
    }

    bool operator==(const Time&) const = default;
    auto operator<=>(const Time& o) const {
        if (auto r = c <=> o.c; r != 0) return r;
        return len <=> o.len;
    }

    std::string str() const;
};

using Update = std::pair<Record, std::int64_t>;

/// Sorts by record and merges equal records; drops zero multiplicities.
void consolidate(std::vector<Update>& updates);

struct Diff {
    Time time;
    Record record{};
    std::int64_t mult = 0;

    bool operator==(const Diff&) const = default;
};

}  // namespace gviews::engine
