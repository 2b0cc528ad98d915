#include "doctest.h"

#include "../support/store_world.hpp"

#include "agc/error.hpp"
#include "agc/library/library.hpp"
#include "agc/library/mealy.hpp"
#include "agc/ltl/lasso.hpp"
#include "agc/ltl/parser.hpp"
#include "agc/mission/mission.hpp"
#include "agc/patterns/patterns.hpp"
#include "agc/sat/solver.hpp"

#include <vector>

using namespace agc;
using namespace agc::ltl;
using namespace agc::library;
using contract::saturate;

namespace {

Contract guarantee(const char *g) { return saturate(Contract(top(), parse(g))); }

const char *const kC1 = "G F (lf & F lb) & (!lb U lf) & G(lb -> X(!lb U lf)) & "
                        "G(lf -> X(!lf U lb))";

ComponentLibrary delta() {
  ComponentLibrary lib("Delta");
  lib.add({"L1", guarantee("G F l5"), std::nullopt});
  lib.add({"L2", guarantee("G F l3"), std::nullopt});
  lib.add({"L3", guarantee("F l3 & F l1"), std::nullopt});
  lib.add({"L4", guarantee("F l5"), std::nullopt});
  return lib;
}

std::vector<const Component *> pick(const ComponentLibrary &lib,
                                    std::initializer_list<const char *> names) {
  std::vector<const Component *> out;
  for (const char *n : names) out.push_back(lib.find(n));
  return out;
}

const char *const kDelay = R"(# g follows s by one step
states: idle pending
initial: idle
inputs: s
outputs: g
trans: idle s=0 -> idle g=0
trans: idle s=1 -> pending g=0
trans: pending s=0 -> idle g=1
trans: pending s=1 -> pending g=1
)";

/// Every input lasso over `aps` with prefix length <= 2 and loop length 1..2.
std::vector<LassoTrace> input_lassos(const std::vector<std::string> &aps) {
  const std::size_t letters = std::size_t{1} << aps.size();
  auto state = [&](std::size_t bits) {
    State s(aps.size());
    for (std::size_t i = 0; i < aps.size(); ++i) s[i] = (bits >> i) & 1;
    return s;
  };
  std::vector<LassoTrace> out;
  for (std::size_t p = 0; p <= 2; ++p) {
    for (std::size_t l = 1; l <= 2; ++l) {
      std::size_t total = 1;
      for (std::size_t k = 0; k < p + l; ++k) total *= letters;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<State> prefix, loop;
        std::size_t c = code;
        for (std::size_t k = 0; k < p + l; ++k, c /= letters) {
          (k < p ? prefix : loop).push_back(state(c % letters));
        }
        out.emplace_back(aps, prefix, loop);
      }
    }
  }
  return out;
}

} // namespace

TEST_CASE("library names are unique") {
  ComponentLibrary lib = delta();
  CHECK(lib.size() == 4);
  CHECK_THROWS_AS(lib.add({"L1", Contract(), std::nullopt}), Error);
  CHECK(lib.find("L9") == nullptr);
}

TEST_CASE("similarity score") {
  const world::WorldModel w = testing::store_world();
  const ComponentLibrary lib = delta();
  const Contract c1 = guarantee(kC1);
  CHECK(similarity_score(c1, pick(lib, {"L1", "L2"}), w) == 100.0);
  CHECK(similarity_score(c1, pick(lib, {"L2"}), w) == 50.0);
  CHECK(similarity_score(c1, {}, w) == 0.0);
  CHECK_THROWS_AS(similarity_score(guarantee("G F zz"), pick(lib, {"L1"}), w),
                  Error);
}

TEST_CASE("similarity is monotone in the component set") {
  const world::WorldModel w = testing::store_world(true);
  const ComponentLibrary lib = delta();
  const Contract c1 = guarantee(kC1);
  const auto &all = lib.components();
  for (unsigned mask = 0; mask < 16; ++mask) {
    for (unsigned extra = 0; extra < 4; ++extra) {
      std::vector<const Component *> small, big;
      for (unsigned i = 0; i < 4; ++i) {
        if (mask >> i & 1) small.push_back(&all[i]);
        if ((mask >> i & 1) || i == extra) big.push_back(&all[i]);
      }
      CHECK(similarity_score(c1, small, w) <= similarity_score(c1, big, w));
    }
  }
}

TEST_CASE("refinement score") {
  const ComponentLibrary lib = delta();
  std::vector<Contract> pool;
  for (const auto &c : lib.components()) pool.push_back(c.contract);
  const Contract lhat = guarantee("G F l5 & G F l3");
  CHECK(refinement_score(lhat, pool) == 75.0);
  const Contract p = guarantee("G p");
  CHECK(refinement_score(p, std::vector<Contract>{p}) == 100.0);
  CHECK(refinement_score(Contract(), std::vector<Contract>{guarantee("F a")}) == 0.0);
  CHECK_THROWS_AS(refinement_score(p, std::vector<Contract>{}), Error);
}

TEST_CASE("best candidate composition") {
  const world::WorldModel w = testing::store_world();
  const ComponentLibrary lib = delta();
  const Contract c1 = guarantee(kC1);
  const CandidateComposition cand = best_candidate_composition(c1, lib, w);
  CHECK(cand.selection == std::vector<std::string>{"L1", "L2"});
  CHECK(cand.similarity == 100.0);
  CHECK(cand.refinement_score == 75.0);
  CHECK(cand.target == c1);
  CHECK(sat::default_solver().equivalent(cand.composed.guarantees(),
                                          parse("G F l5 & G F l3")));
  // {L1,L2} and {L1,L3} reach 75%, {L2,L4} and {L3,L4} reach 50%.
  CHECK(cand.finalists == 4);

  const CandidateComposition again = best_candidate_composition(c1, lib, w);
  CHECK(again.selection == cand.selection);

  CandidateOptions least;
  least.prefer_least_refined = true;
  const auto low = best_candidate_composition(c1, lib, w, least);
  CHECK(low.refinement_score == 50.0);
  CHECK(low.selection == std::vector<std::string>{"L2", "L4"});

  CandidateOptions seeded;
  seeded.seed = 7;
  const auto r1 = best_candidate_composition(c1, lib, w, seeded);
  const auto r2 = best_candidate_composition(c1, lib, w, seeded);
  CHECK(r1.selection == r2.selection);
  CHECK(r1.refinement_score == 75.0);
}

TEST_CASE("refinement score decides between equally similar pairs") {
  const world::WorldModel w = testing::store_world();
  const ComponentLibrary lib = delta();
  std::vector<Contract> pool;
  for (const auto &c : lib.components()) pool.push_back(c.contract);
  const Contract c1 = guarantee(kC1);
  const auto a = make_candidate(c1, lib, {"L1", "L2"}, w);
  const auto b = make_candidate(c1, lib, {"L4", "L2"}, w);
  CHECK(a.similarity == b.similarity);
  CHECK(refinement_score(a.composed, pool) == 75.0);
  CHECK(refinement_score(b.composed, pool) == 50.0);
  CHECK_THROWS_AS(make_candidate(c1, lib, {"L9"}, w), Error);
}

TEST_CASE("singleton library that already refines") {
  const world::WorldModel w = testing::store_world();
  ComponentLibrary lib("One");
  lib.add({"K", guarantee("G F l3"), std::nullopt});
  const auto cand = best_candidate_composition(guarantee("F l3"), lib, w);
  CHECK(cand.selection == std::vector<std::string>{"K"});
  CHECK_THROWS_AS(best_candidate_composition(guarantee("F l3"),
                                             ComponentLibrary("Empty"), w),
                  Error);
}

TEST_CASE("mealy parsing") {
  const MealyMachine m = MealyMachine::parse(kDelay);
  CHECK(m.states().size() == 2);
  CHECK(m.is_total());
  CHECK(m.step(0, 1)->state == 1);

  CHECK_THROWS_AS(MealyMachine::parse("states: a\ninitial: b\ninputs:\noutputs:\n"),
                  ParseError);
  CHECK_THROWS_AS(
      MealyMachine::parse("states: a\ninitial: a\ninputs: s\noutputs: g\n"
                          "trans: a s=1 -> a -\n"),
      ParseError);
  CHECK_THROWS_AS(
      MealyMachine::parse("states: a\ninitial: a\ninputs: s\noutputs: s\n"),
      ParseError);
  CHECK_THROWS_AS(
      MealyMachine::parse("states: a\ninitial: a\ninputs: s\noutputs: g\n"
                          "trans: a s=1 -> a g=1\ntrans: a s=1 -> a g=0\n"),
      ParseError);
  const MealyMachine partial =
      MealyMachine::parse("states: a\ninitial: a\ninputs: s\noutputs: g\n"
                          "trans: a s=1 -> a g=1\n");
  CHECK_FALSE(partial.is_total());
  CHECK(partial.missing_transitions().size() == 1);
}

TEST_CASE("mealy simulation") {
  const MealyMachine constant =
      MealyMachine::parse("states: q\ninitial: q\ninputs: s\noutputs: g\n"
                          "trans: q s=0 -> q g=1\ntrans: q s=1 -> q g=1\n");
  for (const auto &in : input_lassos({"s"})) {
    CHECK(evaluate_on_lasso(parse("G g"), constant.simulate(in)));
  }

  const MealyMachine copy =
      MealyMachine::parse("states: q\ninitial: q\ninputs: s\noutputs: g\n"
                          "trans: q s=0 -> q g=0\ntrans: q s=1 -> q g=1\n");
  const LassoTrace out = copy.simulate(LassoTrace({"s"}, {}, {{true}}));
  CHECK(out.prefix().empty());
  REQUIRE(out.loop().size() == 1);
  CHECK(out.value(0, "s"));
  CHECK(out.value(0, "g"));

  const MealyMachine delay = MealyMachine::parse(kDelay);
  const LassoTrace d = delay.simulate(LassoTrace({"s"}, {{true}}, {{false}}));
  CHECK_FALSE(d.value(0, "g"));
  CHECK(d.value(1, "g"));
  for (std::size_t i = 2; i < d.length(); ++i) CHECK_FALSE(d.value(i, "g"));
  CHECK(evaluate_on_lasso(parse("G(s -> X g) & G(X g -> s)"), d));

  CHECK_THROWS_AS(delay.simulate(LassoTrace({"t"}, {}, {{true}})), Error);
}

TEST_CASE("bundled machines satisfy their components on small inputs") {
  for (const char *file : {"store.mission", "store_full_map.mission"}) {
    const auto mission =
        mission::load_mission(std::string(AGC_MISSIONS_DIR) + "/" + file);
    std::size_t checked = 0;
    for (const auto &[lname, lib] : mission.libraries) {
      for (const Component &comp : lib.components()) {
        if (!comp.impl_ref) continue;
        CAPTURE(comp.name);
        const MealyMachine m = MealyMachine::load(*comp.impl_ref);
        const Formula spec = implies(comp.contract.assumptions(),
                                     comp.contract.guarantees());
        for (const auto &in : input_lassos(m.inputs())) {
          CHECK(evaluate_on_lasso(spec, m.simulate(in)));
        }
        ++checked;
      }
    }
    CHECK(checked >= 3);
  }
}
