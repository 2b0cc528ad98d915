#include "agc/library/library.hpp"

#include "agc/error.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace agc::library {

void ComponentLibrary::add(Component c) {
  if (find(c.name)) {
    throw Error("duplicate component '" + c.name + "' in library '" + name_ +
                "'");
  }
  components_.push_back(std::move(c));
}

const Component *ComponentLibrary::find(const std::string &name) const {
  for (const Component &c : components_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double similarity_score(const Contract &c,
                        std::span<const Component *const> components,
                        const world::WorldModel &w) {
  const std::set<std::string> spec_types = w.types_of(c.atoms());
  if (spec_types.empty()) {
    throw Error("similarity score needs a specification with typed atoms");
  }
  std::set<std::string> lib_types;
  for (const Component *comp : components) {
    const auto t = w.types_of(comp->contract.atoms());
    lib_types.insert(t.begin(), t.end());
  }
  std::size_t covered = 0;
  for (const auto &st : spec_types) {
    if (std::any_of(lib_types.begin(), lib_types.end(),
                    [&](const std::string &lt) { return w.similar(lt, st); })) {
      ++covered;
    }
  }
  return 100.0 * static_cast<double>(covered) /
         static_cast<double>(spec_types.size());
}

double refinement_score(const Contract &target, std::span<const Contract> pool,
                        const contract::Context &ctx) {
  if (pool.empty()) throw Error("refinement score needs a non-empty pool");
  std::size_t hits = 0;
  for (const Contract &p : pool) {
    if (contract::refines(target, p, ctx)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(pool.size());
}

namespace {

struct Subset {
  std::vector<std::size_t> members;
  double similarity = 0;
};

void enumerate(std::size_t n, std::size_t cap, std::size_t start,
               std::vector<std::size_t> &cur,
               std::vector<std::vector<std::size_t>> &out) {
  if (!cur.empty()) out.push_back(cur);
  if (cur.size() == cap) return;
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    enumerate(n, cap, i + 1, cur, out);
    cur.pop_back();
  }
}

Contract compose_members(const ComponentLibrary &lib,
                         const std::vector<std::size_t> &members) {
  std::vector<Contract> cs;
  for (std::size_t i : members) cs.push_back(lib.components()[i].contract);
  return contract::compose_all(cs);
}

std::vector<std::string> names_of(const ComponentLibrary &lib,
                                  const std::vector<std::size_t> &members) {
  std::vector<std::string> out;
  for (std::size_t i : members) out.push_back(lib.components()[i].name);
  return out;
}

} // namespace

CandidateComposition make_candidate(const Contract &c,
                                    const ComponentLibrary &lib,
                                    const std::vector<std::string> &selection,
                                    const world::WorldModel &w,
                                    const contract::Context &ctx) {
  std::vector<const Component *> comps;
  std::vector<Contract> contracts;
  for (const auto &name : selection) {
    const Component *comp = lib.find(name);
    if (!comp) {
      throw Error("no component '" + name + "' in library '" + lib.name() +
                  "'");
    }
    comps.push_back(comp);
    contracts.push_back(comp->contract);
  }
  std::vector<Contract> pool;
  for (const Component &comp : lib.components()) pool.push_back(comp.contract);
  CandidateComposition out;
  out.selection = selection;
  out.composed = contract::compose_all(contracts);
  out.similarity = similarity_score(c, comps, w);
  out.refinement_score = refinement_score(out.composed, pool, ctx);
  out.target = c;
  return out;
}

CandidateComposition best_candidate_composition(
    const Contract &c, const ComponentLibrary &lib, const world::WorldModel &w,
    const CandidateOptions &options, const contract::Context &ctx) {
  if (lib.empty()) throw Error("library '" + lib.name() + "' is empty");
  if (options.subset_cap == 0) throw Error("subset cap must be positive");

  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  enumerate(lib.size(), options.subset_cap, 0, cur, subsets);

  // Similarity groups, best first; inside a group, smallest subsets first.
  std::map<double, std::vector<std::vector<std::size_t>>, std::greater<>> groups;
  for (auto &s : subsets) {
    std::vector<const Component *> comps;
    for (std::size_t i : s) comps.push_back(&lib.components()[i]);
    groups[similarity_score(c, comps, w)].push_back(std::move(s));
  }

  std::vector<Contract> pool;
  for (const Component &comp : lib.components()) pool.push_back(comp.contract);

  for (auto &[similarity, group] : groups) {
    std::stable_sort(group.begin(), group.end(),
                     [](const auto &x, const auto &y) { return x.size() < y.size(); });
    std::size_t i = 0;
    while (i < group.size()) {
      const std::size_t size = group[i].size();
      struct Finalist {
        std::vector<std::size_t> members;
        Contract composed;
        double score;
        std::vector<std::string> sorted_names;
      };
      std::vector<Finalist> finalists;
      for (; i < group.size() && group[i].size() == size; ++i) {
        Contract composed = compose_members(lib, group[i]);
        if (!contract::is_well_formed(composed, ctx)) continue;
        const double score = refinement_score(composed, pool, ctx);
        auto names = names_of(lib, group[i]);
        std::sort(names.begin(), names.end());
        finalists.push_back({group[i], std::move(composed), score, std::move(names)});
      }
      if (finalists.empty()) continue;

      double best = finalists.front().score;
      for (const auto &f : finalists) {
        best = options.prefer_least_refined ? std::min(best, f.score)
                                            : std::max(best, f.score);
      }
      std::vector<const Finalist *> tied;
      for (const auto &f : finalists) {
        if (f.score == best) tied.push_back(&f);
      }
      std::sort(tied.begin(), tied.end(), [](const Finalist *x, const Finalist *y) {
        return x->sorted_names < y->sorted_names;
      });
      const Finalist *pick = tied.front();
      if (options.seed) {
        std::mt19937_64 rng(*options.seed);
        pick = tied[std::uniform_int_distribution<std::size_t>(
            0, tied.size() - 1)(rng)];
      }
      CandidateComposition out;
      out.selection = names_of(lib, pick->members);
      out.composed = pick->composed;
      out.similarity = similarity;
      out.refinement_score = pick->score;
      out.target = c;
      out.best_similarity_subsets = group.size();
      out.finalists = finalists.size();
      return out;
    }
  }
  throw Error("no well-formed composition of library '" + lib.name() +
              "' exists within the subset cap");
}

} // namespace agc::library
