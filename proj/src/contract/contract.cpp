#include "agc/contract/contract.hpp"

#include "agc/error.hpp"
#include "agc/ltl/transform.hpp"

#include <algorithm>

namespace agc::contract {

using ltl::conj;
using ltl::disj;
using ltl::Formula;
using ltl::neg;

Contract::Contract() : a_(ltl::top()), g_(ltl::top()), saturated_(true) {}

Contract::Contract(Formula assumptions, Formula guarantees, bool saturated)
    : a_(std::move(assumptions)), g_(std::move(guarantees)),
      saturated_(saturated) {}

Contract Contract::simplified() const {
  return Contract(ltl::simplify(a_), ltl::simplify(g_), saturated_);
}

ltl::ApSet Contract::atoms() const {
  ltl::ApSet out = ltl::atoms(a_);
  const ltl::ApSet g = ltl::atoms(g_);
  out.insert(g.begin(), g.end());
  return out;
}

Contract saturate(const Contract &c) {
  if (c.is_saturated()) return c;
  return Contract(c.assumptions(), disj(c.guarantees(), neg(c.assumptions())),
                  true);
}

namespace {

void require_saturated(const Contract &c, const char *op) {
  if (!c.is_saturated()) {
    throw ContractError(std::string(op) + " requires saturated contracts");
  }
}

sat::Solver &solver_of(const Context &ctx) {
  return ctx.solver ? *ctx.solver : sat::default_solver();
}

bool satisfiable_in_context(const Formula &f, const Context &ctx) {
  const Formula g = ctx.world ? ctx.world->in_context(f, ctx.adjacency) : f;
  return solver_of(ctx).is_satisfiable(g);
}

bool valid_in_context(const Formula &premise, const Formula &conclusion,
                      const Context &ctx) {
  Formula f = ltl::implies(premise, conclusion);
  if (ctx.world) {
    const Formula ec = ctx.world->ext_cov(ltl::atoms(f));
    if (ec.kind() != ltl::Kind::True) f = ltl::implies(ec, f);
  }
  return solver_of(ctx).is_valid(f);
}

} // namespace

Contract compose(const Contract &c1, const Contract &c2) {
  require_saturated(c1, "compose");
  require_saturated(c2, "compose");
  const Formula g = conj(c1.guarantees(), c2.guarantees());
  const Formula a = disj(conj(c1.assumptions(), c2.assumptions()), neg(g));
  return Contract(a, g, true);
}

Contract compose_all(std::span<const Contract> cs) {
  if (cs.empty()) return Contract();
  Contract acc = cs.front();
  require_saturated(acc, "compose");
  for (std::size_t i = 1; i < cs.size(); ++i) acc = compose(acc, cs[i]);
  return acc;
}

Contract quotient(const Contract &c_prime, const Contract &c1) {
  require_saturated(c_prime, "quotient");
  require_saturated(c1, "quotient");
  const Formula a = conj(c_prime.assumptions(), c1.guarantees());
  const Formula g =
      disj(conj(c_prime.guarantees(), c1.assumptions()), neg(a));
  return Contract(a, g, true);
}

Contract merge(const Contract &c1, const Contract &c2) {
  require_saturated(c1, "merge");
  require_saturated(c2, "merge");
  const Formula a = conj(c1.assumptions(), c2.assumptions());
  const Formula g = disj(conj(c1.guarantees(), c2.guarantees()), neg(a));
  return Contract(a, g, true);
}

Contract separate(const Contract &c_prime, const Contract &c1) {
  require_saturated(c_prime, "separate");
  require_saturated(c1, "separate");
  const Formula g = conj(c_prime.guarantees(), c1.assumptions());
  const Formula a = disj(conj(c_prime.assumptions(), c1.guarantees()), neg(g));
  return Contract(a, g, true);
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
  case Verdict::Refines:
    return "refines";
  case Verdict::DoesNotRefine:
    return "does-not-refine";
  case Verdict::PrecheckFailed:
    return "precheck-failed";
  }
  return "unknown";
}

RefinementReport check_refinement(const Contract &c1, const Contract &c2,
                                  const Context &ctx) {
  require_saturated(c1, "refinement");
  require_saturated(c2, "refinement");
  struct Side {
    const char *name;
    const Formula &f;
  };
  if (ctx.world) {
    const Side sides[] = {{"assumptions of the refined contract", c2.assumptions()},
                          {"assumptions of the refining contract", c1.assumptions()},
                          {"guarantees of the refining contract", c1.guarantees()},
                          {"guarantees of the refined contract", c2.guarantees()}};
    for (const Side &s : sides) {
      if (!satisfiable_in_context(s.f, ctx)) {
        return {Verdict::PrecheckFailed,
                std::string(s.name) + " are unsatisfiable in the world context"};
      }
    }
  }
  if (!valid_in_context(c2.assumptions(), c1.assumptions(), ctx)) {
    return {Verdict::DoesNotRefine, "assumptions are not weakened"};
  }
  if (!valid_in_context(c1.guarantees(), c2.guarantees(), ctx)) {
    return {Verdict::DoesNotRefine, "guarantees are not strengthened"};
  }
  return {Verdict::Refines, "assumptions weakened and guarantees strengthened"};
}

bool refines(const Contract &c1, const Contract &c2, const Context &ctx) {
  return check_refinement(c1, c2, ctx).verdict == Verdict::Refines;
}

bool is_equivalent(const Contract &c1, const Contract &c2, const Context &ctx) {
  return refines(c1, c2, ctx) && refines(c2, c1, ctx);
}

bool is_compatible(const Contract &c, const Context &ctx) {
  return satisfiable_in_context(c.assumptions(), ctx);
}

bool is_consistent(const Contract &c, const Context &ctx) {
  return satisfiable_in_context(c.guarantees(), ctx);
}

bool is_well_formed(const Contract &c, const Context &ctx) {
  return is_compatible(c, ctx) && is_consistent(c, ctx);
}

ltl::ApSet misaligned_atoms(const Contract &c1, const Contract &c2) {
  const ltl::ApSet x = c1.atoms(), y = c2.atoms();
  ltl::ApSet out;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(),
                                std::inserter(out, out.end()));
  return out;
}

std::string to_string(const Contract &c) {
  return "assumes: " + ltl::print(c.assumptions()) +
         "; guarantees: " + ltl::print(c.guarantees()) + ";";
}

} // namespace agc::contract
