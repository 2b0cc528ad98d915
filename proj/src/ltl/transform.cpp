#include "agc/ltl/transform.hpp"

#include <unordered_map>

namespace agc::ltl {

namespace {

bool is_true(const Formula &f) { return f.kind() == Kind::True; }
bool is_false(const Formula &f) { return f.kind() == Kind::False; }

// `x` occurs as a direct operand of the binary node `f` of kind `k`.
bool has_operand(const Formula &f, Kind k, const Formula &x) {
  return f.kind() == k && (f.lhs() == x || f.rhs() == x);
}

Formula simplify_and(const Formula &a, const Formula &b) {
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (is_false(a) || is_false(b)) return bottom();
  if (a == b) return a;
  if (has_operand(b, Kind::Or, a)) return a;
  if (has_operand(a, Kind::Or, b)) return b;
  return conj(a, b);
}

Formula simplify_or(const Formula &a, const Formula &b) {
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (is_true(a) || is_true(b)) return top();
  if (a == b) return a;
  if (has_operand(b, Kind::And, a)) return a;
  if (has_operand(a, Kind::And, b)) return b;
  return disj(a, b);
}

Formula simplify_not(const Formula &a) {
  if (is_true(a)) return bottom();
  if (is_false(a)) return top();
  if (a.kind() == Kind::Not) return a.lhs();
  return neg(a);
}

Formula rebuild(const Formula &f, const Formula &l, const Formula &r) {
  switch (f.kind()) {
  case Kind::Not:
    return simplify_not(l);
  case Kind::And:
    return simplify_and(l, r);
  case Kind::Or:
    return simplify_or(l, r);
  case Kind::Implies:
    if (is_true(l)) return r;
    if (is_false(l) || is_true(r)) return top();
    if (is_false(r)) return simplify_not(l);
    return implies(l, r);
  case Kind::Iff:
    if (is_true(l)) return r;
    if (is_true(r)) return l;
    if (is_false(l)) return simplify_not(r);
    if (is_false(r)) return simplify_not(l);
    return iff(l, r);
  case Kind::Next:
    if (is_true(l) || is_false(l)) return l;
    return next(l);
  case Kind::Eventually:
    if (is_true(l) || is_false(l)) return l;
    return eventually(l);
  case Kind::Globally:
    if (is_true(l) || is_false(l)) return l;
    return globally(l);
  case Kind::Until:
    if (is_true(r) || is_false(r)) return r;
    if (is_false(l)) return r;
    return until(l, r);
  case Kind::Release:
    if (is_true(r) || is_false(r)) return r;
    if (is_true(l)) return r;
    return release(l, r);
  default:
    return f;
  }
}

class Simplifier {
public:
  Formula run(const Formula &f) {
    if (auto it = memo_.find(f); it != memo_.end()) {
      return it->second;
    }
    Formula out = f;
    if (is_unary(f.kind())) {
      out = rebuild(f, run(f.lhs()), {});
    } else if (is_binary(f.kind())) {
      out = rebuild(f, run(f.lhs()), run(f.rhs()));
    }
    memo_.emplace(f, out);
    return out;
  }

private:
  std::unordered_map<Formula, Formula> memo_;
};

Formula nnf_of(const Formula &f, bool negated) {
  switch (f.kind()) {
  case Kind::True:
    return negated ? bottom() : top();
  case Kind::False:
    return negated ? top() : bottom();
  case Kind::Atom:
    return negated ? neg(f) : f;
  case Kind::Not:
    return nnf_of(f.lhs(), !negated);
  case Kind::And:
    return negated ? disj(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                   : conj(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
  case Kind::Or:
    return negated ? conj(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                   : disj(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
  case Kind::Implies:
    return negated ? conj(nnf_of(f.lhs(), false), nnf_of(f.rhs(), true))
                   : disj(nnf_of(f.lhs(), true), nnf_of(f.rhs(), false));
  case Kind::Iff: {
    // a <-> b  ==  (a & b) | (!a & !b);  !(a <-> b)  ==  (a & !b) | (!a & b)
    Formula a = nnf_of(f.lhs(), false);
    Formula na = nnf_of(f.lhs(), true);
    Formula b = nnf_of(f.rhs(), false);
    Formula nb = nnf_of(f.rhs(), true);
    return negated ? disj(conj(a, nb), conj(na, b))
                   : disj(conj(a, b), conj(na, nb));
  }
  case Kind::Next:
    return next(nnf_of(f.lhs(), negated));
  case Kind::Until:
    return negated ? release(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                   : until(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
  case Kind::Release:
    return negated ? until(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                   : release(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
  case Kind::Eventually:
    return negated ? release(bottom(), nnf_of(f.lhs(), true))
                   : until(top(), nnf_of(f.lhs(), false));
  case Kind::Globally:
    return negated ? until(top(), nnf_of(f.lhs(), true))
                   : release(bottom(), nnf_of(f.lhs(), false));
  }
  return f;
}

} // namespace

Formula simplify(const Formula &f) {
  Formula current = f;
  while (true) {
    Formula next_round = Simplifier{}.run(current);
    if (next_round == current) {
      return next_round;
    }
    current = std::move(next_round);
  }
}

Formula nnf(const Formula &f) { return nnf_of(f, false); }

} // namespace agc::ltl
