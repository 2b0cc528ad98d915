#pragma once

#include "agc/ltl/formula.hpp"
#include "agc/sat/solver.hpp"
#include "agc/world/world.hpp"

#include <span>
#include <string>
#include <vector>

namespace agc::contract {

/// Assume-guarantee pair of formulas. The saturation flag is recorded when
/// the guarantee is built as G | !A; it is never inferred from the formula.
class Contract {
public:
  /// (true, true), saturated.
  Contract();
  Contract(ltl::Formula assumptions, ltl::Formula guarantees,
           bool saturated = false);

  const ltl::Formula &assumptions() const noexcept { return a_; }
  const ltl::Formula &guarantees() const noexcept { return g_; }
  bool is_saturated() const noexcept { return saturated_; }

  /// Both formulas passed through ltl::simplify; keeps the flag.
  Contract simplified() const;
  ltl::ApSet atoms() const;

  /// Structural equality of both formulas and the flag.
  bool operator==(const Contract &) const = default;

private:
  ltl::Formula a_;
  ltl::Formula g_;
  bool saturated_ = true;
};

/// (A, G | !A). Already saturated contracts are returned unchanged.
Contract saturate(const Contract &c);

// The operations below require saturated operands (ContractError otherwise)
// and return saturated contracts, built exactly as written; use
// Contract::simplified() for display.

/// A = (A1 & A2) | !(G1 & G2), G = G1 & G2.
Contract compose(const Contract &c1, const Contract &c2);
/// Left fold of compose; the empty composition is (true, true).
Contract compose_all(std::span<const Contract> cs);
/// Largest c with compose(c1, c) refining c_prime:
/// A = A' & G1, G = (G' & A1) | !(A' & G1).
Contract quotient(const Contract &c_prime, const Contract &c1);
/// A = A1 & A2, G = (G1 & G2) | !(A1 & A2).
Contract merge(const Contract &c1, const Contract &c2);
/// Smallest c with c_prime refining merge(c1, c):
/// A = (A' & G1) | !(G' & A1), G = G' & A1.
Contract separate(const Contract &c_prime, const Contract &c1);

/// Optional world context and solver for the checks.
struct Context {
  const world::WorldModel *world = nullptr;
  world::AdjacencyMode adjacency = world::AdjacencyMode::PerLocation;
  /// Null selects sat::default_solver().
  sat::Solver *solver = nullptr;
};

enum class Verdict { Refines, DoesNotRefine, PrecheckFailed };

std::string_view verdict_name(Verdict v) noexcept;

struct RefinementReport {
  Verdict verdict = Verdict::DoesNotRefine;
  /// Which check decided the verdict.
  std::string detail;
};

/// c1 refines c2 iff A2 -> A1 and G1 -> G2 are valid. With a world, both
/// sides of each implication must first be satisfiable together with their
/// MTX and ADJ clauses, and validity is checked under EXT & COV.
RefinementReport check_refinement(const Contract &c1, const Contract &c2,
                                  const Context &ctx = {});
/// check_refinement(...).verdict == Verdict::Refines.
bool refines(const Contract &c1, const Contract &c2, const Context &ctx = {});
/// Mutual refinement.
bool is_equivalent(const Contract &c1, const Contract &c2,
                   const Context &ctx = {});

/// A (with its MTX/ADJ context) is satisfiable.
bool is_compatible(const Contract &c, const Context &ctx = {});
/// G (with its MTX/ADJ context) is satisfiable.
bool is_consistent(const Contract &c, const Context &ctx = {});
bool is_well_formed(const Contract &c, const Context &ctx = {});

/// Atoms used by exactly one of the two contracts. Operations still run;
/// such atoms are unconstrained on the other side.
ltl::ApSet misaligned_atoms(const Contract &c1, const Contract &c2);

std::string to_string(const Contract &c);

} // namespace agc::contract
