#pragma once

#include "agc/contract/contract.hpp"
#include "agc/world/world.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agc::library {

using contract::Contract;

struct Component {
  std::string name;
  Contract contract;
  /// Path of a machine file implementing the component, if any.
  std::optional<std::string> impl_ref;
};

class ComponentLibrary {
public:
  ComponentLibrary() = default;
  explicit ComponentLibrary(std::string name) : name_(std::move(name)) {}

  const std::string &name() const noexcept { return name_; }
  const std::vector<Component> &components() const noexcept {
    return components_;
  }
  bool empty() const noexcept { return components_.empty(); }
  std::size_t size() const noexcept { return components_.size(); }

  /// Throws Error on a duplicate component name.
  void add(Component c);
  const Component *find(const std::string &name) const;

private:
  std::string name_;
  std::vector<Component> components_;
};

/// Percentage of the types of `c` that some type used by `components` is
/// similar to. Throws Error when `c` mentions no typed atom.
double similarity_score(const Contract &c,
                        std::span<const Component *const> components,
                        const world::WorldModel &w);

/// Percentage of `pool` that `target` refines. Throws Error on an empty pool.
double refinement_score(const Contract &target, std::span<const Contract> pool,
                        const contract::Context &ctx = {});

struct CandidateOptions {
  /// Largest subset size enumerated.
  std::size_t subset_cap = 4;
  /// Rank by lowest instead of highest refinement score.
  bool prefer_least_refined = false;
  /// When set, remaining ties are broken at random with this seed instead
  /// of by the sorted component names.
  std::optional<std::uint64_t> seed;
};

struct CandidateComposition {
  /// Component names, in library order.
  std::vector<std::string> selection;
  Contract composed;
  double similarity = 0;
  double refinement_score = 0;
  /// The specification the candidate was computed for.
  Contract target;

  /// Subsets reaching the winning similarity, before the well-formedness
  /// filter.
  std::size_t best_similarity_subsets = 0;
  /// Well-formed subsets that tied on similarity and cardinality.
  std::size_t finalists = 0;
};

/// Ranks the well-formed compositions of up to `subset_cap` components by
/// similarity (max), cardinality (min), refinement score against the whole
/// library (max, or min with prefer_least_refined), then the sorted names.
/// Throws Error when the library is empty or no composition is well formed.
CandidateComposition best_candidate_composition(
    const Contract &c, const ComponentLibrary &lib, const world::WorldModel &w,
    const CandidateOptions &options = {}, const contract::Context &ctx = {});

/// The candidate for an explicit selection of components of `lib`.
CandidateComposition make_candidate(const Contract &c,
                                    const ComponentLibrary &lib,
                                    const std::vector<std::string> &selection,
                                    const world::WorldModel &w,
                                    const contract::Context &ctx = {});

} // namespace agc::library
