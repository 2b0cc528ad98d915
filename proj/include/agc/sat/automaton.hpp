#pragma once

#include "agc/ltl/formula.hpp"
#include "agc/ltl/lasso.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace agc::sat {

struct Literal {
  std::uint32_t ap = 0;
  bool positive = true;

  friend bool operator==(const Literal &, const Literal &) = default;
  friend auto operator<=>(const Literal &, const Literal &) = default;
};

/// Conjunction of literals sorted by atom index; empty means `true`.
using Cube = std::vector<Literal>;

/// Fixed-width set of acceptance-set indices.
class MarkSet {
public:
  MarkSet() = default;
  explicit MarkSet(std::size_t width);

  static MarkSet full(std::size_t width);

  void set(std::size_t i);
  void reset(std::size_t i);
  bool test(std::size_t i) const;
  std::size_t width() const noexcept { return width_; }
  bool covers(const MarkSet &other) const;
  MarkSet &operator|=(const MarkSet &other);
  bool all() const;

  friend bool operator==(const MarkSet &, const MarkSet &) = default;
  friend auto operator<=>(const MarkSet &, const MarkSet &) = default;

private:
  std::vector<std::uint64_t> words_;
  std::size_t width_ = 0;
};

struct Edge {
  std::uint32_t target = 0;
  /// Disjunction of cubes; every cube is satisfiable.
  std::vector<Cube> label;
  /// Acceptance sets this transition belongs to.
  MarkSet marks;
};

/// Generalized Büchi automaton with symbolic transition labels and
/// transition-based acceptance: one acceptance set per Until subformula,
/// holding the transitions on which that Until is not left pending.
/// A run is accepting iff it takes transitions of every set infinitely often.
struct GeneralizedBuchiAutomaton {
  std::vector<std::string> aps;
  /// Obligations each state stands for, rendered for debugging.
  std::vector<std::string> state_names;
  std::uint32_t initial = 0;
  std::vector<std::vector<Edge>> edges;
  /// The Until subformula behind each acceptance set.
  std::vector<std::string> acceptance_names;

  std::size_t state_count() const noexcept { return edges.size(); }
  std::size_t acceptance_count() const noexcept {
    return acceptance_names.size();
  }
  std::size_t transition_count() const noexcept;

  /// Line-oriented dump for inspection; not a stable format.
  std::string dump() const;
};

struct TranslationOptions {
  std::size_t ap_cap = 12;
};

bool is_nnf(const ltl::Formula &f);

/// Tableau translation of a negation-normal-form formula.
/// Throws ApCapExceeded when the formula has more atoms than allowed, and
/// std::invalid_argument when `f` is not in negation normal form.
GeneralizedBuchiAutomaton to_buchi(const ltl::Formula &f,
                                   const TranslationOptions &options = {});

struct EmptinessResult {
  bool empty = true;
  /// Accepted lasso over the automaton's atoms when the language is nonempty.
  std::optional<ltl::LassoTrace> witness;
};

/// Fair-SCC emptiness check with witness extraction.
EmptinessResult check_emptiness(const GeneralizedBuchiAutomaton &a);

} // namespace agc::sat
