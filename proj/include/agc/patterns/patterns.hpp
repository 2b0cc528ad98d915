#pragma once

#include "agc/ltl/formula.hpp"
#include "agc/ltl/parser.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agc::patterns {

enum class Pattern {
  InfOften,
  Patrolling,
  Visit,
  OrderedPatrolling,
  StrictOrderedPatrolling,
  InstantaneousReaction,
  DelayedReaction,
};

std::string_view pattern_name(Pattern p) noexcept;
std::optional<Pattern> pattern_from_name(std::string_view name) noexcept;
const std::vector<Pattern> &all_patterns();

/// Fixed arity, or minimum arity when variadic.
std::size_t arity(Pattern p) noexcept;
bool is_variadic(Pattern p) noexcept;

/// Expands a pattern over atom names:
///
///   InfOften(p)                 G F p
///   Patrolling(l1..ln)          G F l1 & ... & G F ln
///   Visit(l1..ln)               F l1 & ... & F ln
///   OrderedPatrolling(a1..an)   G F (a1 & F (a2 & ... F an)) & ordering
///   StrictOrderedPatrolling     ordering only
///   InstantaneousReaction(s,g)  G (s -> g)
///   DelayedReaction(s,g)        G (s -> X g)
///
/// where, for n >= 2, ordering is (!a2 U a1) followed by one clause
/// G(ai -> X(!ai U a(i+1))) per consecutive pair of the cycle
/// a1 -> ... -> an -> a1, starting with the closing pair (an, a1).
/// For a single location the ordering is `true`.
/// Throws Error on arity mismatch.
ltl::Formula expand(Pattern p, const std::vector<std::string> &args);
/// Throws Error on an unknown name.
ltl::Formula expand(std::string_view name, const std::vector<std::string> &args);

/// Maps a pattern argument to an atom name; the default is the identity.
using ArgResolver = std::function<std::string(const std::string &)>;

/// Parser hook expanding pattern calls, with arguments mapped by `resolve`.
ltl::PatternHook make_hook(ArgResolver resolve = {});

/// Parses a single call such as "Patrolling(l1, l3)" and expands it.
ltl::Formula expand_call(std::string_view text, ArgResolver resolve = {});

} // namespace agc::patterns
