#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace gviews {

enum class ValueType { String, Int, Bool };

std::string_view to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view name);

/// A typed property value. Strings, 64-bit signed ints and bools only.
using Value = std::variant<std::string, std::int64_t, bool>;

ValueType type_of(const Value& value);

/// Parses `text` as `type`. Returns nullopt when the text is not a valid literal.
std::optional<Value> parse_value(std::string_view text, ValueType type);

/// Plain textual form (no quoting) used for CSV output.
std::string format_value(const Value& value);

}  // namespace gviews
