#include "agc/world/world.hpp"

#include "agc/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

namespace agc::world {

using ltl::Formula;

std::string_view kind_name(TypeKind k) noexcept {
  switch (k) {
  case TypeKind::Location:
    return "location";
  case TypeKind::Sensor:
    return "sensor";
  case TypeKind::Action:
    return "action";
  case TypeKind::Unknown:
    return "unknown";
  }
  return "unknown";
}

std::string to_ap(const std::string &id) {
  std::string out = id;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

const WorldType &WorldModel::add_type(const std::string &id, TypeKind kind) {
  if (by_id_.count(id)) throw Error("duplicate type '" + id + "'");
  WorldType t{id, kind, to_ap(id), false};
  by_id_.emplace(id, types_.size());
  by_ap_.emplace(t.ap, types_.size());
  types_.push_back(std::move(t));
  return types_.back();
}

const WorldType &WorldModel::register_atom(const std::string &ap) {
  if (const WorldType *t = find_by_ap(ap)) return *t;
  std::string id = ap;
  while (by_id_.count(id)) id += '_';
  WorldType t{id, TypeKind::Unknown, ap, true};
  by_id_.emplace(id, types_.size());
  by_ap_.emplace(ap, types_.size());
  types_.push_back(std::move(t));
  return types_.back();
}

void WorldModel::add_mutex(const std::string &a, const std::string &b) {
  mutex_.emplace(a, b);
  mutex_.emplace(b, a);
}

void WorldModel::add_adjacency(const std::string &a, const std::string &b) {
  adjacency_.emplace(a, b);
  adjacency_.emplace(b, a);
}

void WorldModel::add_extension(const std::string &sub,
                               const std::string &super) {
  extensions_.emplace(sub, super);
}

void WorldModel::add_covering(const std::string &covered,
                              const std::vector<std::string> &members) {
  coverings_[covered].insert(members.begin(), members.end());
}

const WorldType *WorldModel::find(const std::string &id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &types_[it->second];
}

const WorldType *WorldModel::find_by_ap(const std::string &ap) const {
  auto it = by_ap_.find(ap);
  return it == by_ap_.end() ? nullptr : &types_[it->second];
}

const WorldType *WorldModel::resolve(const std::string &name) const {
  if (const WorldType *t = find(name)) return t;
  return find_by_ap(name);
}

bool WorldModel::mutex(const std::string &a, const std::string &b) const {
  return mutex_.count({a, b}) > 0;
}

bool WorldModel::adjacent(const std::string &a, const std::string &b) const {
  return adjacency_.count({a, b}) > 0;
}

bool WorldModel::extends(const std::string &a, const std::string &b) const {
  std::set<std::string> seen;
  std::deque<std::string> queue{a};
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    for (auto it = extensions_.lower_bound({cur, ""});
         it != extensions_.end() && it->first == cur; ++it) {
      if (it->second == b) return true;
      if (seen.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return false;
}

bool WorldModel::similar(const std::string &a, const std::string &b) const {
  return a == b || extends(a, b);
}

std::vector<Violation> WorldModel::validate() const {
  std::vector<Violation> out;
  auto known = [&](const std::string &id) { return find(id) != nullptr; };
  std::set<std::string> reported;
  auto check_known = [&](const std::string &id, const std::string &where) {
    if (!known(id) && reported.insert(id).second) {
      out.push_back({Violation::Kind::UnknownType,
                     "unknown type '" + id + "' in " + where, {id}});
    }
  };

  std::map<std::string, std::string> ap_owner;
  for (const WorldType &t : types_) {
    auto [it, inserted] = ap_owner.emplace(t.ap, t.id);
    if (!inserted) {
      out.push_back({Violation::Kind::DuplicateAtom,
                     "types '" + it->second + "' and '" + t.id +
                         "' share the atom '" + t.ap + "'",
                     {it->second, t.id}});
    }
  }

  for (const auto &[a, b] : mutex_) {
    if (a == b) {
      out.push_back({Violation::Kind::SelfMutex,
                     "type '" + a + "' is mutually exclusive with itself",
                     {a, b}});
    }
    if (a <= b) {
      check_known(a, "mutex");
      check_known(b, "mutex");
    }
  }
  for (const auto &[a, b] : adjacency_) {
    if (a <= b) {
      check_known(a, "adjacent");
      check_known(b, "adjacent");
    }
  }
  for (const auto &[a, b] : extensions_) {
    check_known(a, "extends");
    check_known(b, "extends");
  }

  // Extension cycles: DFS with an explicit path; each back edge is a cycle.
  std::map<std::string, int> colour; // 0 new, 1 on path, 2 done
  std::vector<std::string> path;
  std::function<void(const std::string &)> dfs = [&](const std::string &v) {
    colour[v] = 1;
    path.push_back(v);
    for (auto it = extensions_.lower_bound({v, ""});
         it != extensions_.end() && it->first == v; ++it) {
      const std::string &w = it->second;
      if (colour[w] == 1) {
        auto start = std::find(path.begin(), path.end(), w);
        std::vector<std::string> cycle(start, path.end());
        std::string text;
        for (const auto &c : cycle) text += c + " extends ";
        text += w;
        out.push_back({Violation::Kind::ExtensionCycle,
                       "extension cycle: " + text, cycle});
      } else if (colour[w] == 0) {
        dfs(w);
      }
    }
    path.pop_back();
    colour[v] = 2;
  };
  for (const auto &[a, b] : extensions_) {
    if (colour[a] == 0) dfs(a);
  }

  for (const auto &[covered, members] : coverings_) {
    check_known(covered, "covers");
    for (const auto &m : members) {
      check_known(m, "covers");
      if (!extends(m, covered)) {
        out.push_back({Violation::Kind::CoveringNotSubtype,
                       "'" + m + "' covers '" + covered +
                           "' but does not extend it",
                       {m, covered}});
      }
    }
  }
  return out;
}

std::set<std::string> WorldModel::types_of(const ltl::ApSet &aps) const {
  std::set<std::string> out;
  for (const auto &ap : aps) {
    if (const WorldType *t = find_by_ap(ap)) out.insert(t->id);
  }
  return out;
}

std::string WorldModel::ap_of(const std::string &id) const {
  if (const WorldType *t = find(id)) return t->ap;
  return to_ap(id);
}

Formula WorldModel::mtx(const ltl::ApSet &aps) const {
  std::vector<Formula> clauses;
  const std::vector<std::string> v(aps.begin(), aps.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const WorldType *ti = find_by_ap(v[i]);
    if (!ti) continue;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const WorldType *tj = find_by_ap(v[j]);
      if (!tj || !mutex(ti->id, tj->id)) continue;
      const Formula pi = ltl::atom(v[i]), pj = ltl::atom(v[j]);
      clauses.push_back(ltl::globally(ltl::implies(pi, ltl::neg(pj))));
      clauses.push_back(ltl::globally(ltl::implies(pj, ltl::neg(pi))));
    }
  }
  return ltl::conj_all(clauses);
}

Formula WorldModel::adj(const ltl::ApSet &aps, AdjacencyMode mode) const {
  std::vector<Formula> clauses;
  for (const auto &p : aps) {
    const WorldType *t = find_by_ap(p);
    if (!t) continue;
    std::set<std::string> neighbours;
    for (auto it = adjacency_.lower_bound({t->id, ""});
         it != adjacency_.end() && it->first == t->id; ++it) {
      if (it->second != t->id) neighbours.insert(ap_of(it->second));
    }
    if (mode == AdjacencyMode::PerLocation) {
      if (neighbours.empty()) continue;
      std::vector<Formula> succ{ltl::atom(p)};
      for (const auto &n : neighbours) succ.push_back(ltl::atom(n));
      clauses.push_back(ltl::globally(
          ltl::implies(ltl::atom(p), ltl::next(ltl::disj_all(succ)))));
    } else {
      for (const auto &n : neighbours) {
        if (!aps.count(n)) continue;
        clauses.push_back(ltl::globally(ltl::implies(
            ltl::atom(p), ltl::next(ltl::disj(ltl::atom(p), ltl::atom(n))))));
      }
    }
  }
  return ltl::conj_all(clauses);
}

std::vector<std::pair<Formula, ltl::ApSet>>
WorldModel::ext_cov_clauses() const {
  std::vector<std::pair<Formula, ltl::ApSet>> out;
  for (const auto &[sub, super] : extensions_) {
    const std::string a = ap_of(sub), b = ap_of(super);
    out.emplace_back(ltl::globally(ltl::implies(ltl::atom(a), ltl::atom(b))),
                     ltl::ApSet{a, b});
  }
  for (const auto &[covered, members] : coverings_) {
    if (members.empty()) continue;
    const std::string a = ap_of(covered);
    ltl::ApSet atoms{a};
    std::vector<Formula> alts;
    for (const auto &m : members) {
      atoms.insert(ap_of(m));
      alts.push_back(ltl::atom(ap_of(m)));
    }
    out.emplace_back(
        ltl::globally(ltl::implies(ltl::atom(a), ltl::disj_all(alts))),
        std::move(atoms));
  }
  return out;
}

Formula WorldModel::ext() const {
  std::vector<Formula> clauses;
  for (const auto &[sub, super] : extensions_) {
    clauses.push_back(ltl::globally(
        ltl::implies(ltl::atom(ap_of(sub)), ltl::atom(ap_of(super)))));
  }
  return ltl::conj_all(clauses);
}

Formula WorldModel::cov() const {
  // ext_cov_clauses lists the extensions first, then the coverings.
  const auto all = ext_cov_clauses();
  std::vector<Formula> clauses;
  for (std::size_t i = extensions_.size(); i < all.size(); ++i) {
    clauses.push_back(all[i].first);
  }
  return ltl::conj_all(clauses);
}

Formula WorldModel::ext_cov(const ltl::ApSet &aps) const {
  const auto all = ext_cov_clauses();
  std::vector<bool> taken(all.size(), false);
  ltl::ApSet reach = aps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (taken[i]) continue;
      const bool touches =
          std::any_of(all[i].second.begin(), all[i].second.end(),
                      [&](const std::string &a) { return reach.count(a) > 0; });
      if (!touches) continue;
      taken[i] = true;
      changed = true;
      reach.insert(all[i].second.begin(), all[i].second.end());
    }
  }
  std::vector<Formula> clauses;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (taken[i]) clauses.push_back(all[i].first);
  }
  return ltl::conj_all(clauses);
}

Formula WorldModel::in_context(const Formula &phi, AdjacencyMode mode) const {
  const ltl::ApSet aps = ltl::atoms(phi);
  return ltl::conj(ltl::conj(phi, mtx(aps)), adj(aps, mode));
}

} // namespace agc::world
