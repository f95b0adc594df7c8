#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gviews {

enum class ErrorKind {
    MissingFile,
    SchemaError,
    DanglingEdge,
    DuplicateNode,
    ValueParseError,
    SyntaxError,
    UnknownStatement,
    UnknownProperty,
    TypeMismatch,
    TooManyViews,
    NonTermination,
    InconsistentStream,
    UnknownSource,
    ColdModel,
    NameExists,
    NotFound,
    InvalidArgument,
    WorkspaceLocked,
    Internal,
};

std::string_view to_string(ErrorKind kind);

// User errors map to CLI exit code 2; invariant violations to 3.
bool is_user_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gviews
