#pragma once

#include "agc/ltl/formula.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace agc::world {

enum class TypeKind { Location, Sensor, Action, Unknown };

std::string_view kind_name(TypeKind k) noexcept;

struct WorldType {
  std::string id;
  TypeKind kind = TypeKind::Unknown;
  /// Lower-case of the id.
  std::string ap;
  /// True for types registered on the fly for undeclared atoms.
  bool anonymous = false;
};

struct Violation {
  enum class Kind {
    SelfMutex,
    ExtensionCycle,
    CoveringNotSubtype,
    UnknownType,
    DuplicateAtom,
  };
  Kind kind;
  std::string message;
  /// Offending types: the pair, the cycle, or the covering member and owner.
  std::vector<std::string> types;
};

enum class AdjacencyMode {
  /// One clause per location: G(p -> X(p | all neighbours of p)).
  PerLocation,
  /// One clause per ordered adjacent pair: G(p -> X(p | q)).
  Pairwise,
};

/// Types and their relationships. Relations refer to types by id and may
/// name undeclared types; validate() reports those.
class WorldModel {
public:
  /// Throws Error on a duplicate id.
  const WorldType &add_type(const std::string &id, TypeKind kind);
  /// Registers an anonymous, relation-free type for `ap` unless some type
  /// already owns that atom. Returns the owning type.
  const WorldType &register_atom(const std::string &ap);

  void add_mutex(const std::string &a, const std::string &b);
  void add_adjacency(const std::string &a, const std::string &b);
  /// `sub` extends `super`.
  void add_extension(const std::string &sub, const std::string &super);
  /// Adds `members` to the covering of `covered`.
  void add_covering(const std::string &covered,
                    const std::vector<std::string> &members);

  const std::vector<WorldType> &types() const noexcept { return types_; }
  const WorldType *find(const std::string &id) const;
  const WorldType *find_by_ap(const std::string &ap) const;
  /// Type by id, else by atom; nullptr when neither matches.
  const WorldType *resolve(const std::string &name) const;

  bool mutex(const std::string &a, const std::string &b) const;
  bool adjacent(const std::string &a, const std::string &b) const;
  const std::set<std::pair<std::string, std::string>> &extensions() const {
    return extensions_;
  }
  const std::map<std::string, std::set<std::string>> &coverings() const {
    return coverings_;
  }

  /// a extends b through one or more extension steps.
  bool extends(const std::string &a, const std::string &b) const;
  /// a == b or a extends b.
  bool similar(const std::string &a, const std::string &b) const;

  std::vector<Violation> validate() const;

  /// Type ids owning the given atoms; atoms without a type are skipped.
  std::set<std::string> types_of(const ltl::ApSet &aps) const;

  /// Mutual exclusion clauses over the pairs of atoms in `aps`.
  ltl::Formula mtx(const ltl::ApSet &aps) const;
  /// Adjacency clauses for the locations in `aps`.
  ltl::Formula adj(const ltl::ApSet &aps,
                   AdjacencyMode mode = AdjacencyMode::PerLocation) const;
  /// Every extension relation: G(sub -> super).
  ltl::Formula ext() const;
  /// Every covering: G(covered -> member_1 | ... | member_n).
  ltl::Formula cov() const;
  /// EXT & COV restricted to the clauses connected to `aps`. The dropped
  /// clauses share no atom with the rest and hold when their atoms are all
  /// false, so validity of `ext_cov(aps) -> phi` equals that of
  /// `ext() & cov() -> phi` for atoms(phi) within `aps`.
  ltl::Formula ext_cov(const ltl::ApSet &aps) const;
  /// phi & MTX(phi) & ADJ(phi).
  ltl::Formula in_context(const ltl::Formula &phi,
                          AdjacencyMode mode = AdjacencyMode::PerLocation) const;

private:
  std::string ap_of(const std::string &id) const;
  std::vector<std::pair<ltl::Formula, ltl::ApSet>> ext_cov_clauses() const;

  std::vector<WorldType> types_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::size_t> by_ap_;
  std::set<std::pair<std::string, std::string>> mutex_;
  std::set<std::pair<std::string, std::string>> adjacency_;
  std::set<std::pair<std::string, std::string>> extensions_;
  std::map<std::string, std::set<std::string>> coverings_;
};

/// Lower-cases an identifier.
std::string to_ap(const std::string &id);

} // namespace agc::world
