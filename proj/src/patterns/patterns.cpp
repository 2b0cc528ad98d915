#include "agc/patterns/patterns.hpp"

#include "agc/error.hpp"

namespace agc::patterns {

using namespace ltl;

namespace {

struct Entry {
  Pattern pattern;
  std::string_view name;
  std::size_t arity;
  bool variadic;
};

constexpr Entry kEntries[] = {
    {Pattern::InfOften, "InfOften", 1, false},
    {Pattern::Patrolling, "Patrolling", 1, true},
    {Pattern::Visit, "Visit", 1, true},
    {Pattern::OrderedPatrolling, "OrderedPatrolling", 1, true},
    {Pattern::StrictOrderedPatrolling, "StrictOrderedPatrolling", 1, true},
    {Pattern::InstantaneousReaction, "InstantaneousReaction", 2, false},
    {Pattern::DelayedReaction, "DelayedReaction", 2, false},
};

const Entry &entry(Pattern p) {
  for (const Entry &e : kEntries) {
    if (e.pattern == p) return e;
  }
  return kEntries[0];
}

Formula ordering(const std::vector<Formula> &l) {
  const std::size_t n = l.size();
  if (n < 2) return top();
  auto chase = [&](std::size_t i, std::size_t j) {
    return globally(implies(l[i], next(until(neg(l[i]), l[j]))));
  };
  Formula f = until(neg(l[1]), l[0]);
  f = conj(f, chase(n - 1, 0));
  for (std::size_t i = 0; i + 1 < n; ++i) f = conj(f, chase(i, i + 1));
  return f;
}

Formula chain(const std::vector<Formula> &l) {
  Formula f = l.back();
  for (std::size_t i = l.size() - 1; i-- > 0;) f = conj(l[i], eventually(f));
  return f;
}

} // namespace

std::string_view pattern_name(Pattern p) noexcept { return entry(p).name; }

std::optional<Pattern> pattern_from_name(std::string_view name) noexcept {
  for (const Entry &e : kEntries) {
    if (e.name == name) return e.pattern;
  }
  return std::nullopt;
}

const std::vector<Pattern> &all_patterns() {
  static const std::vector<Pattern> all = [] {
    std::vector<Pattern> v;
    for (const Entry &e : kEntries) v.push_back(e.pattern);
    return v;
  }();
  return all;
}

std::size_t arity(Pattern p) noexcept { return entry(p).arity; }
bool is_variadic(Pattern p) noexcept { return entry(p).variadic; }

Formula expand(Pattern p, const std::vector<std::string> &args) {
  const Entry &e = entry(p);
  if (e.variadic ? args.size() < e.arity : args.size() != e.arity) {
    throw Error(std::string(e.name) + " expects " +
                (e.variadic ? "at least " : "") + std::to_string(e.arity) +
                " argument" + (e.arity == 1 ? "" : "s") + ", got " +
                std::to_string(args.size()));
  }
  std::vector<Formula> l;
  for (const auto &a : args) {
    if (!is_identifier(a)) {
      throw Error(std::string(e.name) + ": '" + a + "' is not an atom name");
    }
    l.push_back(atom(a));
  }
  std::vector<Formula> parts;
  switch (p) {
  case Pattern::InfOften:
    return globally(eventually(l[0]));
  case Pattern::Patrolling:
    for (const auto &x : l) parts.push_back(globally(eventually(x)));
    return conj_all(parts);
  case Pattern::Visit:
    for (const auto &x : l) parts.push_back(eventually(x));
    return conj_all(parts);
  case Pattern::OrderedPatrolling: {
    const Formula live = globally(eventually(chain(l)));
    return l.size() < 2 ? live : conj(live, ordering(l));
  }
  case Pattern::StrictOrderedPatrolling:
    return ordering(l);
  case Pattern::InstantaneousReaction:
    return globally(implies(l[0], l[1]));
  case Pattern::DelayedReaction:
    return globally(implies(l[0], next(l[1])));
  }
  return top();
}

Formula expand(std::string_view name, const std::vector<std::string> &args) {
  const auto p = pattern_from_name(name);
  if (!p) throw Error("unknown pattern '" + std::string(name) + "'");
  return expand(*p, args);
}

PatternHook make_hook(ArgResolver resolve) {
  return [resolve](const std::string &name, const std::vector<std::string> &args,
                   SourcePos) {
    std::vector<std::string> mapped;
    mapped.reserve(args.size());
    for (const auto &a : args) mapped.push_back(resolve ? resolve(a) : a);
    return expand(name, mapped);
  };
}

Formula expand_call(std::string_view text, ArgResolver resolve) {
  ParseOptions opts;
  opts.patterns = make_hook(std::move(resolve));
  return parse_formula(text, opts).formula;
}

} // namespace agc::patterns
