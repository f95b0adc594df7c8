#include "gviews/error.hpp"
#include "gviews/value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace gviews {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MissingFile: return "MissingFile";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::DanglingEdge: return "DanglingEdge";
        case ErrorKind::DuplicateNode: return "DuplicateNode";
        case ErrorKind::ValueParseError: return "ValueParseError";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownStatement: return "UnknownStatement";
        case ErrorKind::UnknownProperty: return "UnknownProperty";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::TooManyViews: return "TooManyViews";
        case ErrorKind::NonTermination: return "NonTermination";
        case ErrorKind::InconsistentStream: return "InconsistentStream";
        case ErrorKind::UnknownSource: return "UnknownSource";
        case ErrorKind::ColdModel: return "ColdModel";
        case ErrorKind::NameExists: return "NameExists";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::WorkspaceLocked: return "WorkspaceLocked";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_user_error(ErrorKind kind) {
    return kind != ErrorKind::Internal && kind != ErrorKind::InconsistentStream;
}

std::string_view to_string(ValueType type) {
    switch (type) {
        case ValueType::String: return "string";
        case ValueType::Int: return "int";
        case ValueType::Bool: return "bool";
    }
    return "?";
}

std::optional<ValueType> parse_value_type(std::string_view name) {
    if (name == "string") return ValueType::String;
    if (name == "int") return ValueType::Int;
    if (name == "bool") return ValueType::Bool;
    return std::nullopt;
}

ValueType type_of(const Value& value) {
    switch (value.index()) {
        case 0: return ValueType::String;
        case 1: return ValueType::Int;
        default: return ValueType::Bool;
    }
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::optional<Value> parse_value(std::string_view text, ValueType type) {
    switch (type) {
        case ValueType::String:
            return Value{std::string(text)};
        case ValueType::Int: {
            std::int64_t v = 0;
            const char* first = text.data();
            const char* last = text.data() + text.size();
            if (first != last && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
            return Value{v};
        }
        case ValueType::Bool: {
            const std::string l = lower(text);
            if (l == "true" || l == "1") return Value{true};
            if (l == "false" || l == "0") return Value{false};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string format_value(const Value& value) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    return std::get<bool>(value) ? "true" : "false";
}

}  // namespace gviews
