#include "agc/sat/solver.hpp"

#include "agc/error.hpp"
#include "agc/ltl/transform.hpp"
#include "agc/sat/automaton.hpp"

namespace agc::sat {

namespace {

// Re-expresses `w` over `aps`; atoms dropped by simplification read false.
ltl::LassoTrace widen(const ltl::LassoTrace &w, const ltl::ApSet &aps) {
  std::vector<std::string> names(aps.begin(), aps.end());
  auto convert = [&](const std::vector<ltl::State> &states) {
    std::vector<ltl::State> out;
    out.reserve(states.size());
    for (const ltl::State &s : states) {
      ltl::State t(names.size(), false);
      for (std::size_t i = 0; i < names.size(); ++i) {
        const std::size_t j = w.index_of(names[i]);
        if (j < s.size()) t[i] = s[j];
      }
      out.push_back(std::move(t));
    }
    return out;
  };
  return ltl::LassoTrace(names, convert(w.prefix()), convert(w.loop()));
}

} // namespace

Solver::Solver(SatOptions options) : options_(options) {}

SatResult Solver::check(const ltl::Formula &f) {
  const ltl::ApSet aps = ltl::atoms(f);
  if (aps.size() > options_.ap_cap) {
    throw ApCapExceeded(aps.size(), options_.ap_cap);
  }
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(f); it != cache_.end()) return it->second;
  }
  const ltl::Formula prepared = ltl::nnf(ltl::simplify(f));
  const auto automaton = to_buchi(prepared, {options_.ap_cap});
  EmptinessResult e = check_emptiness(automaton);
  SatResult r;
  r.satisfiable = !e.empty;
  if (e.witness) r.witness = widen(*e.witness, aps);
  std::lock_guard lock(mutex_);
  cache_.emplace(f, r);
  return r;
}

bool Solver::is_satisfiable(const ltl::Formula &f) {
  return check(f).satisfiable;
}

bool Solver::is_valid(const ltl::Formula &f) {
  return !check(ltl::neg(f)).satisfiable;
}

bool Solver::equivalent(const ltl::Formula &f, const ltl::Formula &g) {
  return is_valid(ltl::iff(f, g));
}

std::size_t Solver::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

void Solver::clear_cache() {
  std::lock_guard lock(mutex_);
  cache_.clear();
}

Solver &default_solver() {
  static Solver solver;
  return solver;
}

bool is_satisfiable(const ltl::Formula &f) {
  return default_solver().is_satisfiable(f);
}

bool is_valid(const ltl::Formula &f) { return default_solver().is_valid(f); }

} // namespace agc::sat
