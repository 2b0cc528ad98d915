#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace agc::ltl {

enum class Kind : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Release,
  Eventually,
  Globally,
};

bool is_unary(Kind k) noexcept;
bool is_binary(Kind k) noexcept;
bool is_temporal(Kind k) noexcept;

using ApSet = std::set<std::string>;

namespace detail {
struct Node;
}

/// Immutable LTL formula. Copies share the underlying tree.
///
/// Equality is structural and is meant for caching and deduplication only;
/// semantic equivalence goes through the satisfiability checker.
class Formula {
public:
  /// Default-constructed formulas are `true`.
  Formula();

  Kind kind() const noexcept;
  /// Atom name; empty for non-atoms.
  const std::string &name() const noexcept;
  /// Operand of a unary node, left operand of a binary node.
  const Formula &lhs() const;
  /// Right operand of a binary node.
  const Formula &rhs() const;

  std::size_t hash() const noexcept;
  /// Number of nodes in the tree.
  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;

  bool operator==(const Formula &other) const noexcept;
  bool operator!=(const Formula &other) const noexcept {
    return !(*this == other);
  }
  /// Total structural order; used to sort operands deterministically.
  bool operator<(const Formula &other) const noexcept;

  bool same_node(const Formula &other) const noexcept {
    return node_ == other.node_;
  }

  static Formula make(Kind kind, std::string name, Formula lhs, Formula rhs);

private:
  explicit Formula(std::shared_ptr<const detail::Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

Formula top();
Formula bottom();
Formula atom(std::string name);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next(Formula f);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula eventually(Formula f);
Formula globally(Formula f);

/// Left-folded conjunction; the empty conjunction is `true`.
Formula conj_all(std::span<const Formula> fs);
/// Left-folded disjunction; the empty disjunction is `false`.
Formula disj_all(std::span<const Formula> fs);

/// Atoms occurring syntactically in `f`.
ApSet atoms(const Formula &f);

/// Number of temporal operators (X, U, R, F, G) in `f`.
std::size_t temporal_count(const Formula &f);

/// Canonical, fully parenthesized rendering in the concrete grammar.
std::string print(const Formula &f);

struct FormulaHash {
  std::size_t operator()(const Formula &f) const noexcept { return f.hash(); }
};

} // namespace agc::ltl

template <> struct std::hash<agc::ltl::Formula> {
  std::size_t operator()(const agc::ltl::Formula &f) const noexcept {
    return f.hash();
  }
};
