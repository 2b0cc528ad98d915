#pragma once

#include "agc/error.hpp"
#include "agc/ltl/formula.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agc::ltl {

/// Expands a `Name(arg, ...)` call found where an operand is expected.
using PatternHook = std::function<Formula(
    const std::string &name, const std::vector<std::string> &args, SourcePos)>;

struct ParseOptions {
  /// When set, atoms outside this set are reported in `fresh_atoms`.
  std::optional<ApSet> known_aps;
  /// When unset, pattern calls are a syntax error.
  PatternHook patterns;
  /// Position of the first character of the text, for embedded formulas.
  SourcePos origin;
};

struct ParseResult {
  Formula formula;
  std::vector<std::string> fresh_atoms;
};

/// Parses the concrete LTL syntax:
///
///     formula := iff ; iff := impl ("<->" impl)* ; impl := or ("->" impl)? ;
///     or := and ("|" and)* ; and := until ("&" until)* ;
///     until := unary (("U"|"R") until)? ;
///     unary := ("!"|"X"|"F"|"G") unary | "true" | "false" | IDENT
///            | "(" formula ")" ;
///
/// Runs of the unary letters such as `GF` are read as one operator each.
/// Throws ParseError with the line and column of the offending token.
ParseResult parse_formula(std::string_view text, const ParseOptions &options);

/// Convenience overload without options.
Formula parse(std::string_view text);

bool is_identifier(std::string_view s) noexcept;

} // namespace agc::ltl
