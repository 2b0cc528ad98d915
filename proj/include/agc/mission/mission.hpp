#pragma once

#include "agc/contract/contract.hpp"
#include "agc/library/library.hpp"
#include "agc/world/world.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace agc::mission {

/// A loaded mission: world, named contracts and named libraries, all
/// contracts saturated and all pattern calls expanded.
///
///     world {
///       type location L1 extends LF
///       mutex L1 L2
///       adjacent L1 L3
///       covers LF = L1, L3
///     }
///     contract C { assumes: G F s; guarantees: G (s -> g); }
///     library D {
///       component K { guarantees: Patrolling(l1); impl: "k.mealy"; }
///     }
///
/// Comments start with `#` or `//`. A missing `assumes` means true.
/// Relation arguments and pattern arguments name a type id or an atom.
struct MissionFile {
  world::WorldModel world;
  std::map<std::string, contract::Contract> contracts;
  std::map<std::string, library::ComponentLibrary> libraries;
  /// Declaration order.
  std::vector<std::string> contract_order;
  std::vector<std::string> library_order;
  /// Undeclared atoms and other non-fatal findings.
  std::vector<std::string> warnings;

  /// Throws Error naming the missing entry.
  const contract::Contract &contract(const std::string &name) const;
  const library::ComponentLibrary &library(const std::string &name) const;

  /// Parses a formula with the mission's pattern and name resolution;
  /// fresh atoms are registered in the world.
  ltl::Formula parse_formula(std::string_view text);
};

struct LoadOptions {
  /// Reject components whose contract is not well formed.
  bool check_components = true;
  /// Load and check the machine files named by `impl`.
  bool check_machines = true;
  contract::Context context;
};

/// Syntax errors throw ParseError with the position; validation failures
/// and duplicate names throw Error. `base_dir` resolves relative impl paths.
MissionFile parse_mission(std::string_view text, const std::string &base_dir = ".",
                          const LoadOptions &options = {});
MissionFile load_mission(const std::string &path, const LoadOptions &options = {});

} // namespace agc::mission
