#pragma once

#include "gviews/gvdl/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gviews::gvdl {

/// Parses exactly one statement (a trailing `;` is allowed).
///
/// Throws Error{SyntaxError} with `line:column` in the message, or
/// Error{UnknownStatement} when the input does not start with `create view`.
Statement parse(std::string_view text);

/// Parses a script of one or more statements separated by optional `;`.
std::vector<Statement> parse_script(std::string_view text);

/// Parses a bare predicate expression (used by tools and tests).
PredicatePtr parse_predicate(std::string_view text);

/// Canonical GVDL text. `parse(to_gvdl(parse(t)))` is structurally equal to `parse(t)`.
std::string to_gvdl(const Statement& s);
std::string to_gvdl(const Predicate& p);

}  // namespace gviews::gvdl
