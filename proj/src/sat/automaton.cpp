#include "agc/sat/automaton.hpp"

#include "agc/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace agc::sat {

using ltl::Formula;
using ltl::Kind;

// ---------------------------------------------------------------- MarkSet

MarkSet::MarkSet(std::size_t width)
    : words_((width + 63) / 64, 0), width_(width) {}

MarkSet MarkSet::full(std::size_t width) {
  MarkSet m(width);
  for (std::size_t i = 0; i < width; ++i) m.set(i);
  return m;
}

void MarkSet::set(std::size_t i) { words_[i / 64] |= (1ULL << (i % 64)); }
void MarkSet::reset(std::size_t i) { words_[i / 64] &= ~(1ULL << (i % 64)); }
bool MarkSet::test(std::size_t i) const {
  return (words_[i / 64] >> (i % 64)) & 1ULL;
}

bool MarkSet::covers(const MarkSet &other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((other.words_[w] & ~words_[w]) != 0) return false;
  }
  return true;
}

MarkSet &MarkSet::operator|=(const MarkSet &other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

bool MarkSet::all() const { return covers(full(width_)); }

std::size_t GeneralizedBuchiAutomaton::transition_count() const noexcept {
  std::size_t n = 0;
  for (const auto &out : edges) n += out.size();
  return n;
}

std::string GeneralizedBuchiAutomaton::dump() const {
  std::ostringstream os;
  os << "aps:";
  for (const auto &ap : aps) os << ' ' << ap;
  os << "\nstates: " << state_count() << "\ninitial: " << initial << '\n';
  for (std::size_t i = 0; i < acceptance_names.size(); ++i) {
    os << "acc " << i << ": " << acceptance_names[i] << '\n';
  }
  for (std::size_t s = 0; s < edges.size(); ++s) {
    os << "state " << s << ": {" << state_names[s] << "}\n";
    for (const auto &e : edges[s]) {
      os << "  -> " << e.target << " [";
      for (std::size_t c = 0; c < e.label.size(); ++c) {
        if (c) os << " | ";
        if (e.label[c].empty()) os << "true";
        for (std::size_t k = 0; k < e.label[c].size(); ++k) {
          if (k) os << " & ";
          os << (e.label[c][k].positive ? "" : "!") << aps[e.label[c][k].ap];
        }
      }
      os << "] acc {";
      bool first = true;
      for (std::size_t i = 0; i < e.marks.width(); ++i) {
        if (e.marks.test(i)) {
          os << (first ? "" : " ") << i;
          first = false;
        }
      }
      os << "}\n";
    }
  }
  return os.str();
}

bool is_nnf(const Formula &f) {
  switch (f.kind()) {
  case Kind::True:
  case Kind::False:
  case Kind::Atom:
    return true;
  case Kind::Not:
    return f.lhs().kind() == Kind::Atom;
  case Kind::And:
  case Kind::Or:
  case Kind::Until:
  case Kind::Release:
    return is_nnf(f.lhs()) && is_nnf(f.rhs());
  case Kind::Next:
    return is_nnf(f.lhs());
  default:
    return false;
  }
}

namespace {

// --------------------------------------------------------- tableau arena

enum class TKind : std::uint8_t { True, False, Lit, And, Or, Next, Until, Release };

struct TNode {
  TKind kind = TKind::True;
  std::uint32_t ap = 0;
  bool positive = true;
  std::vector<std::uint32_t> kids;
  int acceptance = -1;
};

constexpr std::uint32_t kTrue = 0;
constexpr std::uint32_t kFalse = 1;

// Hash-consed closure of the input formula. Conjunctions and disjunctions are
// flattened, sorted and deduplicated so that syntactic variants of the same
// obligation share one node.
class Arena {
public:
  explicit Arena(std::vector<std::string> aps) : aps_(std::move(aps)) {
    intern_raw({TKind::True, 0, true, {}, -1});
    intern_raw({TKind::False, 0, true, {}, -1});
  }

  std::uint32_t build(const Formula &f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    std::uint32_t id = 0;
    switch (f.kind()) {
    case Kind::True:
      id = kTrue;
      break;
    case Kind::False:
      id = kFalse;
      break;
    case Kind::Atom:
      id = literal(ap_index(f.name()), true);
      break;
    case Kind::Not:
      id = literal(ap_index(f.lhs().name()), false);
      break;
    case Kind::And:
      id = junction(TKind::And, {build(f.lhs()), build(f.rhs())});
      break;
    case Kind::Or:
      id = junction(TKind::Or, {build(f.lhs()), build(f.rhs())});
      break;
    case Kind::Next:
      id = next(build(f.lhs()));
      break;
    case Kind::Until:
      id = until(build(f.lhs()), build(f.rhs()));
      break;
    case Kind::Release:
      id = release(build(f.lhs()), build(f.rhs()));
      break;
    default:
      throw std::invalid_argument("formula is not in negation normal form");
    }
    memo_.emplace(f, id);
    return id;
  }

  const TNode &node(std::uint32_t id) const { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<std::string> &aps() const noexcept { return aps_; }
  const std::vector<std::uint32_t> &untils() const noexcept { return untils_; }

  std::string render(std::uint32_t id) const {
    const TNode &n = nodes_[id];
    switch (n.kind) {
    case TKind::True:
      return "true";
    case TKind::False:
      return "false";
    case TKind::Lit:
      return (n.positive ? "" : "!") + aps_[n.ap];
    case TKind::Next:
      return "X (" + render(n.kids[0]) + ")";
    case TKind::Until:
    case TKind::Release:
      return "(" + render(n.kids[0]) + (n.kind == TKind::Until ? " U " : " R ") +
             render(n.kids[1]) + ")";
    case TKind::And:
    case TKind::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += n.kind == TKind::And ? " & " : " | ";
        out += render(n.kids[i]);
      }
      return out + ")";
    }
    }
    return "?";
  }

private:
  std::uint32_t ap_index(const std::string &name) const {
    auto it = std::lower_bound(aps_.begin(), aps_.end(), name);
    return static_cast<std::uint32_t>(it - aps_.begin());
  }

  std::uint32_t literal(std::uint32_t ap, bool positive) {
    return intern_raw({TKind::Lit, ap, positive, {}, -1});
  }

  std::uint32_t next(std::uint32_t kid) {
    if (kid == kTrue || kid == kFalse) return kid;
    return intern_raw({TKind::Next, 0, true, {kid}, -1});
  }

  std::uint32_t until(std::uint32_t a, std::uint32_t b) {
    if (b == kTrue || b == kFalse || a == kFalse) return b;
    if (a == b) return b;
    const std::uint32_t id = intern_raw({TKind::Until, 0, true, {a, b}, -1});
    if (nodes_[id].acceptance < 0) {
      nodes_[id].acceptance = static_cast<int>(untils_.size());
      untils_.push_back(id);
    }
    return id;
  }

  std::uint32_t release(std::uint32_t a, std::uint32_t b) {
    if (b == kTrue || b == kFalse || a == kTrue) return b;
    if (a == b) return b;
    return intern_raw({TKind::Release, 0, true, {a, b}, -1});
  }

  std::uint32_t junction(TKind kind, std::vector<std::uint32_t> raw) {
    const std::uint32_t unit = kind == TKind::And ? kTrue : kFalse;
    const std::uint32_t zero = kind == TKind::And ? kFalse : kTrue;
    std::vector<std::uint32_t> kids;
    for (std::uint32_t k : raw) {
      if (nodes_[k].kind == kind) {
        kids.insert(kids.end(), nodes_[k].kids.begin(), nodes_[k].kids.end());
      } else if (k == zero) {
        return zero;
      } else if (k != unit) {
        kids.push_back(k);
      }
    }
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const TNode &a = nodes_[kids[i]];
      if (a.kind != TKind::Lit) continue;
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        const TNode &b = nodes_[kids[j]];
        if (b.kind == TKind::Lit && b.ap == a.ap && b.positive != a.positive) {
          return zero;
        }
      }
    }
    if (kids.empty()) return unit;
    if (kids.size() == 1) return kids.front();
    return intern_raw({kind, 0, true, std::move(kids), -1});
  }

  std::uint32_t intern_raw(TNode n) {
    std::string key;
    key.reserve(8 + 6 * n.kids.size());
    key += static_cast<char>(n.kind);
    key += std::to_string(n.ap);
    key += n.positive ? '+' : '-';
    for (std::uint32_t k : n.kids) {
      key += ',';
      key += std::to_string(k);
    }
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), id);
    return id;
  }

  std::vector<std::string> aps_;
  std::vector<TNode> nodes_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::unordered_map<Formula, std::uint32_t> memo_;
  std::vector<std::uint32_t> untils_;
};

// ------------------------------------------------------------- expansion

struct Term {
  Cube cube;
  std::vector<std::uint32_t> next;
  MarkSet marks;
};

// One partially expanded disjunct of the current state's obligations.
struct Branch {
  std::vector<std::uint32_t> todo;
  std::vector<std::uint64_t> old;
  std::vector<std::int8_t> lits; // -1 unknown, 0 false, 1 true
  std::vector<std::uint32_t> next;
  std::vector<std::uint32_t> deferred;
};

class Expander {
public:
  explicit Expander(const Arena &arena) : arena_(arena) {}

  std::vector<Term> expand(const std::vector<std::uint32_t> &obligations) {
    std::vector<Term> out;
    Branch root;
    root.todo = obligations;
    root.old.assign((arena_.size() + 63) / 64, 0);
    root.lits.assign(arena_.aps().size(), -1);
    std::vector<Branch> stack;
    stack.push_back(std::move(root));
    while (!stack.empty()) {
      Branch b = std::move(stack.back());
      stack.pop_back();
      run(std::move(b), stack, out);
    }
    return out;
  }

private:
  bool in_old(const Branch &b, std::uint32_t id) const {
    return (b.old[id / 64] >> (id % 64)) & 1ULL;
  }

  // 1: holds in this branch already, 0: contradicts it, -1: undecided.
  int status(const Branch &b, std::uint32_t id) const {
    if (id == kTrue) return 1;
    if (id == kFalse) return 0;
    if (in_old(b, id)) return 1;
    const TNode &n = arena_.node(id);
    if (n.kind == TKind::Lit && b.lits[n.ap] >= 0) {
      return (b.lits[n.ap] == 1) == n.positive ? 1 : 0;
    }
    return -1;
  }

  static bool branches(TKind k) {
    return k == TKind::Or || k == TKind::Until || k == TKind::Release;
  }

  void run(Branch b, std::vector<Branch> &stack, std::vector<Term> &out) {
    while (!b.todo.empty()) {
      // Non-branching obligations first, so contradictions surface before
      // the branch is copied.
      std::size_t pick = b.todo.size() - 1;
      for (std::size_t i = b.todo.size(); i-- > 0;) {
        if (!branches(arena_.node(b.todo[i]).kind)) {
          pick = i;
          break;
        }
      }
      const std::uint32_t id = b.todo[pick];
      b.todo[pick] = b.todo.back();
      b.todo.pop_back();
      if (in_old(b, id)) continue;
      b.old[id / 64] |= 1ULL << (id % 64);
      const TNode &n = arena_.node(id);
      switch (n.kind) {
      case TKind::True:
        break;
      case TKind::False:
        return;
      case TKind::Lit: {
        const std::int8_t want = n.positive ? 1 : 0;
        if (b.lits[n.ap] >= 0 && b.lits[n.ap] != want) return;
        b.lits[n.ap] = want;
        break;
      }
      case TKind::And:
        b.todo.insert(b.todo.end(), n.kids.begin(), n.kids.end());
        break;
      case TKind::Next:
        b.next.push_back(n.kids[0]);
        break;
      case TKind::Or: {
        std::vector<std::uint32_t> options;
        bool satisfied = false;
        for (std::uint32_t k : n.kids) {
          const int st = status(b, k);
          if (st == 1) {
            satisfied = true;
            break;
          }
          if (st == -1) options.push_back(k);
        }
        if (satisfied) break;
        if (options.empty()) return;
        for (std::size_t i = 0; i + 1 < options.size(); ++i) {
          Branch fork = b;
          fork.todo.push_back(options[i]);
          stack.push_back(std::move(fork));
        }
        b.todo.push_back(options.back());
        break;
      }
      case TKind::Until: {
        // a U b  ==  b | (a & X(a U b)); the second disjunct leaves it pending.
        const std::uint32_t lhs = n.kids[0];
        const std::uint32_t rhs = n.kids[1];
        const int st = status(b, rhs);
        if (st == 1) break;
        if (st == -1) {
          Branch fork = b;
          fork.todo.push_back(rhs);
          stack.push_back(std::move(fork));
        }
        b.todo.push_back(lhs);
        b.next.push_back(id);
        b.deferred.push_back(static_cast<std::uint32_t>(n.acceptance));
        break;
      }
      case TKind::Release: {
        // a R b  ==  b & (a | X(a R b))
        const std::uint32_t lhs = n.kids[0];
        const std::uint32_t rhs = n.kids[1];
        b.todo.push_back(rhs);
        const int st = status(b, lhs);
        if (st == 1) break;
        if (st == -1) {
          Branch fork = b;
          fork.todo.push_back(lhs);
          stack.push_back(std::move(fork));
        }
        b.next.push_back(id);
        break;
      }
      }
    }
    Term t;
    for (std::uint32_t ap = 0; ap < b.lits.size(); ++ap) {
      if (b.lits[ap] >= 0) t.cube.push_back({ap, b.lits[ap] == 1});
    }
    std::sort(b.next.begin(), b.next.end());
    b.next.erase(std::unique(b.next.begin(), b.next.end()), b.next.end());
    t.next = std::move(b.next);
    t.marks = MarkSet::full(arena_.untils().size());
    for (std::uint32_t d : b.deferred) t.marks.reset(d);
    out.push_back(std::move(t));
  }

  const Arena &arena_;
};

} // namespace

GeneralizedBuchiAutomaton to_buchi(const Formula &f,
                                   const TranslationOptions &options) {
  const ltl::ApSet atom_set = ltl::atoms(f);
  if (atom_set.size() > options.ap_cap) {
    throw ApCapExceeded(atom_set.size(), options.ap_cap);
  }
  if (!is_nnf(f)) {
    throw std::invalid_argument("to_buchi expects a formula in negation "
                                "normal form");
  }
  Arena arena(std::vector<std::string>(atom_set.begin(), atom_set.end()));
  const std::uint32_t root = arena.build(f);

  GeneralizedBuchiAutomaton a;
  a.aps = arena.aps();
  for (std::uint32_t u : arena.untils()) {
    a.acceptance_names.push_back(arena.render(u));
  }

  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::deque<std::vector<std::uint32_t>> work;
  auto state_of = [&](std::vector<std::uint32_t> obligations) {
    auto [it, inserted] =
        ids.emplace(obligations, static_cast<std::uint32_t>(a.edges.size()));
    if (inserted) {
      std::string name;
      for (std::size_t i = 0; i < obligations.size(); ++i) {
        if (i) name += ", ";
        name += arena.render(obligations[i]);
      }
      a.state_names.push_back(std::move(name));
      a.edges.emplace_back();
      work.push_back(std::move(obligations));
    }
    return it->second;
  };

  std::vector<std::uint32_t> init;
  if (root != kTrue) init.push_back(root);
  a.initial = state_of(init);

  Expander expander(arena);
  while (!work.empty()) {
    std::vector<std::uint32_t> obligations = std::move(work.front());
    work.pop_front();
    const std::uint32_t src = ids.at(obligations);
    std::map<std::pair<std::uint32_t, MarkSet>, std::vector<Cube>> grouped;
    for (Term &t : expander.expand(obligations)) {
      if (std::binary_search(t.next.begin(), t.next.end(), kFalse)) continue;
      t.next.erase(std::remove(t.next.begin(), t.next.end(), kTrue),
                   t.next.end());
      const std::uint32_t dst = state_of(std::move(t.next));
      auto &cubes = grouped[{dst, std::move(t.marks)}];
      if (std::find(cubes.begin(), cubes.end(), t.cube) == cubes.end()) {
        cubes.push_back(std::move(t.cube));
      }
    }
    for (auto &[key, cubes] : grouped) {
      a.edges[src].push_back({key.first, std::move(cubes), key.second});
    }
  }
  return a;
}

// ------------------------------------------------------------- emptiness

namespace {

struct Step {
  std::uint32_t from;
  std::size_t edge;
};

// Iterative Tarjan; returns the SCC index of every state (-1 if unreachable).
std::vector<int> scc_decomposition(const GeneralizedBuchiAutomaton &a) {
  const std::size_t n = a.state_count();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  int counter = 0;
  int comps = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> call{{a.initial, 0}};
  index[a.initial] = low[a.initial] = counter++;
  stack.push_back(a.initial);
  on_stack[a.initial] = true;
  while (!call.empty()) {
    Frame &fr = call.back();
    const std::uint32_t v = fr.v;
    if (fr.next_edge < a.edges[v].size()) {
      const std::uint32_t w = a.edges[v][fr.next_edge++].target;
      if (index[w] < 0) {
        index[w] = low[w] = counter++;
        stack.push_back(w);
        on_stack[w] = true;
        call.push_back({w, 0});
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
      continue;
    }
    if (low[v] == index[v]) {
      while (true) {
        const std::uint32_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
    call.pop_back();
    if (!call.empty()) {
      const std::uint32_t parent = call.back().v;
      low[parent] = std::min(low[parent], low[v]);
    }
  }
  return comp;
}

// Shortest path from `from` to any state satisfying `goal`, staying inside
// `allowed`. With `nonempty`, the path takes at least one transition.
template <typename Allowed, typename Goal>
std::optional<std::vector<Step>>
bfs(const GeneralizedBuchiAutomaton &a, std::uint32_t from, Allowed allowed,
    Goal goal, bool nonempty) {
  if (!nonempty && goal(from)) return std::vector<Step>{};
  const std::size_t n = a.state_count();
  std::vector<std::optional<Step>> parent(n);
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> queue{from};
  if (!nonempty) seen[from] = true;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < a.edges[v].size(); ++e) {
      const std::uint32_t w = a.edges[v][e].target;
      if (!allowed(w) || seen[w]) continue;
      seen[w] = true;
      parent[w] = Step{v, e};
      if (goal(w)) {
        std::vector<Step> path;
        std::uint32_t cur = w;
        do {
          path.push_back(*parent[cur]);
          cur = parent[cur]->from;
        } while (cur != from || (path.size() == 0));
        // `from` may itself be on the path when nonempty; stop at first hit.
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

ltl::State letter(const GeneralizedBuchiAutomaton &a, const Edge &e) {
  ltl::State s(a.aps.size(), false);
  for (const Literal &l : e.label.front()) s[l.ap] = l.positive;
  return s;
}

} // namespace

EmptinessResult check_emptiness(const GeneralizedBuchiAutomaton &a) {
  const std::vector<int> comp = scc_decomposition(a);
  const std::size_t width = a.acceptance_count();
  int accepting = -1;
  {
    std::map<int, MarkSet> seen_marks;
    std::map<int, bool> nontrivial;
    for (std::uint32_t v = 0; v < a.state_count(); ++v) {
      if (comp[v] < 0) continue;
      for (const Edge &e : a.edges[v]) {
        if (comp[e.target] != comp[v]) continue;
        nontrivial[comp[v]] = true;
        auto [it, inserted] = seen_marks.emplace(comp[v], MarkSet(width));
        it->second |= e.marks;
      }
    }
    for (const auto &[c, marks] : seen_marks) {
      if (nontrivial[c] && marks.all()) {
        accepting = c;
        break;
      }
    }
  }
  if (accepting < 0) return {true, std::nullopt};

  auto in_scc = [&](std::uint32_t v) { return comp[v] == accepting; };
  auto anywhere = [](std::uint32_t) { return true; };

  const auto stem = bfs(a, a.initial, anywhere, in_scc, false);
  const std::uint32_t entry = stem->empty()
                                  ? a.initial
                                  : a.edges[stem->back().from][stem->back().edge]
                                        .target;
  std::vector<Step> cycle;
  MarkSet covered(width);
  std::uint32_t cur = entry;
  for (std::size_t m = 0; m < width; ++m) {
    if (covered.test(m)) continue;
    // Reach the source of some internal edge carrying mark m, then take it.
    auto has_mark_edge = [&](std::uint32_t v) {
      for (const Edge &e : a.edges[v]) {
        if (in_scc(e.target) && e.marks.test(m)) return true;
      }
      return false;
    };
    const auto to_source = bfs(a, cur, in_scc, has_mark_edge, false);
    for (const Step &s : *to_source) {
      covered |= a.edges[s.from][s.edge].marks;
      cycle.push_back(s);
    }
    cur = to_source->empty()
              ? cur
              : a.edges[to_source->back().from][to_source->back().edge].target;
    for (std::size_t e = 0; e < a.edges[cur].size(); ++e) {
      const Edge &edge = a.edges[cur][e];
      if (in_scc(edge.target) && edge.marks.test(m)) {
        covered |= edge.marks;
        cycle.push_back({cur, e});
        cur = edge.target;
        break;
      }
    }
  }
  if (cur != entry || cycle.empty()) {
    const auto back = bfs(
        a, cur, in_scc, [&](std::uint32_t v) { return v == entry; },
        cycle.empty());
    cycle.insert(cycle.end(), back->begin(), back->end());
  }

  std::vector<ltl::State> prefix, loop;
  for (const Step &s : *stem) prefix.push_back(letter(a, a.edges[s.from][s.edge]));
  for (const Step &s : cycle) loop.push_back(letter(a, a.edges[s.from][s.edge]));
  return {false, ltl::LassoTrace(a.aps, std::move(prefix), std::move(loop))};
}

} // namespace agc::sat
