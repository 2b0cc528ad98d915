#include "agc/ltl/formula.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace agc::ltl {

namespace detail {

struct Node {
  Kind kind;
  std::string name;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

} // namespace detail

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

bool is_unary(Kind k) noexcept {
  switch (k) {
  case Kind::Not:
  case Kind::Next:
  case Kind::Eventually:
  case Kind::Globally:
    return true;
  default:
    return false;
  }
}

bool is_binary(Kind k) noexcept {
  switch (k) {
  case Kind::And:
  case Kind::Or:
  case Kind::Implies:
  case Kind::Iff:
  case Kind::Until:
  case Kind::Release:
    return true;
  default:
    return false;
  }
}

bool is_temporal(Kind k) noexcept {
  switch (k) {
  case Kind::Next:
  case Kind::Until:
  case Kind::Release:
  case Kind::Eventually:
  case Kind::Globally:
    return true;
  default:
    return false;
  }
}

Formula::Formula() {
  static const std::shared_ptr<const detail::Node> truth = [] {
    auto n = std::make_shared<detail::Node>();
    n->kind = Kind::True;
    n->hash = combine(0, static_cast<std::size_t>(Kind::True));
    n->size = 1;
    n->depth = 1;
    return n;
  }();
  node_ = truth;
}

Formula Formula::make(Kind kind, std::string name, Formula lhs, Formula rhs) {
  auto n = std::make_shared<detail::Node>();
  n->kind = kind;
  n->name = std::move(name);
  std::size_t h = combine(0x51ed27ULL, static_cast<std::size_t>(kind));
  std::size_t size = 1;
  std::size_t depth = 1;
  if (kind == Kind::Atom) {
    h = combine(h, std::hash<std::string>{}(n->name));
  }
  if (is_unary(kind) || is_binary(kind)) {
    h = combine(h, lhs.hash());
    size += lhs.size();
    depth = std::max(depth, lhs.depth() + 1);
  }
  if (is_binary(kind)) {
    h = combine(h, rhs.hash());
    size += rhs.size();
    depth = std::max(depth, rhs.depth() + 1);
  }
  if (is_unary(kind) || is_binary(kind)) {
    n->lhs = std::move(lhs);
  }
  if (is_binary(kind)) {
    n->rhs = std::move(rhs);
  }
  n->hash = h;
  n->size = size;
  n->depth = depth;
  return Formula(std::move(n));
}

Kind Formula::kind() const noexcept { return node_->kind; }
const std::string &Formula::name() const noexcept { return node_->name; }
const Formula &Formula::lhs() const {
  if (!node_->lhs) {
    throw std::logic_error("formula has no operand");
  }
  return *node_->lhs;
}
const Formula &Formula::rhs() const {
  if (!node_->rhs) {
    throw std::logic_error("formula has no right operand");
  }
  return *node_->rhs;
}
std::size_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::depth() const noexcept { return node_->depth; }

bool Formula::operator==(const Formula &other) const noexcept {
  if (node_ == other.node_) {
    return true;
  }
  if (node_->hash != other.node_->hash || node_->kind != other.node_->kind ||
      node_->size != other.node_->size) {
    return false;
  }
  if (node_->kind == Kind::Atom) {
    return node_->name == other.node_->name;
  }
  if (is_unary(node_->kind)) {
    return *node_->lhs == *other.node_->lhs;
  }
  if (is_binary(node_->kind)) {
    return *node_->lhs == *other.node_->lhs && *node_->rhs == *other.node_->rhs;
  }
  return true;
}

bool Formula::operator<(const Formula &other) const noexcept {
  if (node_ == other.node_) {
    return false;
  }
  if (kind() != other.kind()) {
    return kind() < other.kind();
  }
  if (kind() == Kind::Atom) {
    return name() < other.name();
  }
  if (is_unary(kind())) {
    return lhs() < other.lhs();
  }
  if (is_binary(kind())) {
    if (lhs() != other.lhs()) {
      return lhs() < other.lhs();
    }
    return rhs() < other.rhs();
  }
  return false;
}

Formula top() { return Formula{}; }
Formula bottom() {
  static const Formula f = Formula::make(Kind::False, {}, {}, {});
  return f;
}
Formula atom(std::string name) {
  if (name.empty()) {
    throw std::invalid_argument("atom name must be non-empty");
  }
  return Formula::make(Kind::Atom, std::move(name), {}, {});
}
Formula neg(Formula f) { return Formula::make(Kind::Not, {}, std::move(f), {}); }
Formula conj(Formula a, Formula b) {
  return Formula::make(Kind::And, {}, std::move(a), std::move(b));
}
Formula disj(Formula a, Formula b) {
  return Formula::make(Kind::Or, {}, std::move(a), std::move(b));
}
Formula implies(Formula a, Formula b) {
  return Formula::make(Kind::Implies, {}, std::move(a), std::move(b));
}
Formula iff(Formula a, Formula b) {
  return Formula::make(Kind::Iff, {}, std::move(a), std::move(b));
}
Formula next(Formula f) {
  return Formula::make(Kind::Next, {}, std::move(f), {});
}
Formula until(Formula a, Formula b) {
  return Formula::make(Kind::Until, {}, std::move(a), std::move(b));
}
Formula release(Formula a, Formula b) {
  return Formula::make(Kind::Release, {}, std::move(a), std::move(b));
}
Formula eventually(Formula f) {
  return Formula::make(Kind::Eventually, {}, std::move(f), {});
}
Formula globally(Formula f) {
  return Formula::make(Kind::Globally, {}, std::move(f), {});
}

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) {
    return top();
  }
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    acc = conj(acc, fs[i]);
  }
  return acc;
}

Formula disj_all(std::span<const Formula> fs) {
  if (fs.empty()) {
    return bottom();
  }
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    acc = disj(acc, fs[i]);
  }
  return acc;
}

namespace {

template <typename Visit> void walk(const Formula &root, Visit &&visit) {
  std::vector<const Formula *> stack{&root};
  while (!stack.empty()) {
    const Formula *f = stack.back();
    stack.pop_back();
    visit(*f);
    if (is_binary(f->kind())) {
      stack.push_back(&f->rhs());
    }
    if (is_unary(f->kind()) || is_binary(f->kind())) {
      stack.push_back(&f->lhs());
    }
  }
}

} // namespace

ApSet atoms(const Formula &f) {
  ApSet out;
  walk(f, [&](const Formula &g) {
    if (g.kind() == Kind::Atom) {
      out.insert(g.name());
    }
  });
  return out;
}

std::size_t temporal_count(const Formula &f) {
  std::size_t n = 0;
  walk(f, [&](const Formula &g) {
    if (is_temporal(g.kind())) {
      ++n;
    }
  });
  return n;
}

namespace {

std::string_view binary_token(Kind k) {
  switch (k) {
  case Kind::And:
    return "&";
  case Kind::Or:
    return "|";
  case Kind::Implies:
    return "->";
  case Kind::Iff:
    return "<->";
  case Kind::Until:
    return "U";
  case Kind::Release:
    return "R";
  default:
    return "?";
  }
}

bool is_leaf(const Formula &f) {
  return f.kind() == Kind::True || f.kind() == Kind::False ||
         f.kind() == Kind::Atom;
}

void print_into(const Formula &f, std::string &out) {
  switch (f.kind()) {
  case Kind::True:
    out += "true";
    return;
  case Kind::False:
    out += "false";
    return;
  case Kind::Atom:
    out += f.name();
    return;
  case Kind::Not:
  case Kind::Next:
  case Kind::Eventually:
  case Kind::Globally: {
    out += f.kind() == Kind::Not          ? "!"
           : f.kind() == Kind::Next       ? "X"
           : f.kind() == Kind::Eventually ? "F"
                                          : "G";
    if (is_leaf(f.lhs())) {
      out += f.kind() == Kind::Not ? "" : " ";
      print_into(f.lhs(), out);
    } else {
      out += f.kind() == Kind::Not ? "(" : " (";
      print_into(f.lhs(), out);
      out += ")";
    }
    return;
  }
  default:
    break;
  }
  // Binary operands are parenthesized whenever they are binary themselves,
  // so the rendering never depends on precedence or associativity.
  auto operand = [&](const Formula &g) {
    if (is_binary(g.kind())) {
      out += "(";
      print_into(g, out);
      out += ")";
    } else {
      print_into(g, out);
    }
  };
  operand(f.lhs());
  out += " ";
  out += binary_token(f.kind());
  out += " ";
  operand(f.rhs());
}

} // namespace

std::string print(const Formula &f) {
  std::string out;
  print_into(f, out);
  return out;
}

} // namespace agc::ltl
