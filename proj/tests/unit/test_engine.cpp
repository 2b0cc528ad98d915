#include "doctest.h"

#include "../support/store_world.hpp"

#include "agc/engine/engine.hpp"
#include "agc/engine/realizability.hpp"
#include "agc/error.hpp"
#include "agc/ltl/parser.hpp"
#include "agc/sat/solver.hpp"

#include <filesystem>
#include <fstream>

using namespace agc;
using namespace agc::ltl;
using namespace agc::engine;
using contract::refines;
using contract::saturate;
using library::Component;

namespace {

Contract sat_c(const char *a, const char *g) {
  return saturate(Contract(parse(a), parse(g)));
}

const char *const kC1 = "G F (lf & F lb) & (!lb U lf) & G(lb -> X(!lb U lf)) & "
                        "G(lf -> X(!lf U lb))";
const char *const kLprime =
    "(!l5 U l3) & G(l5 -> X(!l5 U l3)) & G(l3 -> X(!l3 U l5))";

ComponentLibrary delta() {
  ComponentLibrary lib("Delta");
  lib.add({"L1", sat_c("true", "G F l5"), std::nullopt});
  lib.add({"L2", sat_c("true", "G F l3"), std::nullopt});
  lib.add({"L3", sat_c("true", "F l3 & F l1"), std::nullopt});
  lib.add({"L4", sat_c("true", "F l5"), std::nullopt});
  return lib;
}

ComponentLibrary single(const char *lib, const char *name, Contract c) {
  ComponentLibrary out(lib);
  out.add({name, std::move(c), std::nullopt});
  return out;
}

} // namespace

TEST_CASE("route table") {
  struct Row {
    bool refines;
    double sim;
    bool repair, search, extras;
    Route expected;
  };
  const Row rows[] = {
      {true, 0, false, false, false, Route::Complete},
      {true, 50, true, false, true, Route::Complete},
      {false, 0, true, false, true, Route::Failed},
      {false, 0, false, true, true, Route::Failed},
      {false, 50, true, false, false, Route::Repair},
      {false, 50, false, true, true, Route::Search},
      {false, 50, false, true, false, Route::Failed},
      {false, 100, false, true, true, Route::Search},
      {false, 100, false, true, false, Route::Repair},
      {false, 80, false, false, true, Route::Repair},
      {false, 79.9, false, false, true, Route::Search},
      {false, 50, false, false, false, Route::Failed},
  };
  for (const Row &r : rows) {
    CAPTURE(r.sim);
    CHECK(route({r.refines, r.sim, r.repair, r.search, r.extras}) == r.expected);
  }
  CHECK_THROWS_AS(route({false, 50, true, true, true}), AnalysisError);
}

TEST_CASE("search reproduces the store example") {
  const world::WorldModel w = testing::store_world();
  const ComponentLibrary lib = delta();
  const Contract c1 = sat_c("true", kC1);
  const auto cand = library::best_candidate_composition(c1, lib, w);
  const Contract lprime = sat_c("true", kLprime);
  const std::vector<ComponentLibrary> extra{single("DeltaPrime", "Lprime", lprime)};

  AnalysisOptions opts;
  opts.force_search = true;
  const contract::Context ctx{&w};
  const AnalysisOutcome out =
      refinement_analysis(c1, lib, cand, extra, opts, w, ctx);
  REQUIRE(out.status == Status::SearchResult);
  REQUIRE(out.search.has_value());
  CHECK(out.search->library == "DeltaPrime");
  REQUIRE(out.refinement.has_value());
  CHECK(refines(*out.refinement, c1, ctx));
  CHECK_FALSE(refines(cand.composed, c1, ctx));
  CHECK(refines(lprime, out.search->quotient, ctx));
  // The strong untils of L' force l3 and l5 to alternate forever, so L'
  // already implies the patrols of the candidate and refines C1 alone.
  CHECK(contract::is_equivalent(lprime, *out.refinement));
  CHECK(refines(lprime, c1, ctx));

  // Without the force flag the 100% similarity routes to repair.
  const auto repaired = refinement_analysis(c1, lib, cand, extra, {}, w, ctx);
  CHECK(repaired.status == Status::RepairResult);
  REQUIRE(repaired.repair.has_value());
  CHECK(refines(cand.composed, repaired.repair->repaired, ctx));
}

TEST_CASE("search without libraries carries the quotient") {
  const world::WorldModel w = testing::store_world();
  const Contract c1 = sat_c("true", kC1);
  const auto cand = library::best_candidate_composition(c1, delta(), w);
  const auto out = search_procedure(cand, c1, {}, w);
  CHECK(out.status == Status::SearchResult);
  REQUIRE(out.search.has_value());
  CHECK_FALSE(out.search->found.has_value());
  CHECK_FALSE(out.refinement.has_value());
}

TEST_CASE("a library holding the quotient succeeds at once") {
  const world::WorldModel w = testing::store_world();
  const Contract c1 = sat_c("true", kC1);
  const auto cand = library::best_candidate_composition(c1, delta(), w);
  const Contract q = contract::quotient(c1, cand.composed);
  const std::vector<ComponentLibrary> extra{single("Q", "Q", q)};
  const auto out = search_procedure(cand, c1, extra, w);
  CHECK(out.status == Status::SearchResult);
  REQUIRE(out.refinement.has_value());
  CHECK(refines(*out.refinement, c1));
}

TEST_CASE("the full front covering defeats the store search") {
  // With LF covered by {L1, L3, L4}, going from L3 to L1 stays in the front,
  // which the ordered patrolling forbids but the order-only contract allows.
  const world::WorldModel w = testing::store_world(true);
  const contract::Context ctx{&w};
  const Contract c1 = sat_c("true", kC1);
  const auto cand = library::best_candidate_composition(c1, delta(), w);
  const Contract lstar = contract::compose(sat_c("true", kLprime), cand.composed);
  CHECK_FALSE(refines(lstar, c1, ctx));
}

TEST_CASE("repair reproduces the reaction example") {
  const world::WorldModel w = testing::store_world();
  const Contract c2 = sat_c("G F s", "G F s -> G(s -> g)");
  const ComponentLibrary lib = single("Lib", "Lhat", sat_c("true", "G(s -> X g)"));
  const auto cand = library::best_candidate_composition(c2, lib, w);
  CHECK(cand.similarity == 100.0);
  AnalysisOptions opts;
  opts.force_repair = true;
  const auto out = refinement_analysis(c2, lib, cand, {}, opts, w);
  REQUIRE(out.status == Status::RepairResult);
  REQUIRE(out.repair.has_value());
  const Contract expected_s(parse("G(s -> g) | !(G(s -> X g) & G F s)"),
                         parse("G(s -> X g) & G F s"), true);
  const Contract expected_c2p(parse("G F s & (G(s -> g) | !(G F s & G(s -> X g)))"),
                           parse("G F s -> G(s -> X g)"), true);
  CHECK(contract::is_equivalent(out.repair->separation, expected_s));
  CHECK(contract::is_equivalent(out.repair->repaired, expected_c2p));
  CHECK(refines(cand.composed, out.repair->repaired));
  CHECK_FALSE(refines(cand.composed, c2));
}

TEST_CASE("complete and failed outcomes") {
  const world::WorldModel w = testing::store_world();
  const ComponentLibrary lib = single("One", "K", sat_c("true", "G F l3"));
  const Contract c = sat_c("true", "F l3");
  const auto cand = library::best_candidate_composition(c, lib, w);
  const auto done = refinement_analysis(c, lib, cand, {}, {}, w);
  CHECK(done.status == Status::Complete);
  REQUIRE(done.refinement.has_value());
  CHECK(refines(*done.refinement, c));
  CHECK_THROWS_AS(repair_procedure(cand, c), AnalysisError);

  // The library speaks of the back only; the specification of the sensor.
  const ComponentLibrary back = single("Back", "K", sat_c("true", "G F l5"));
  const Contract sensor = sat_c("true", "G F s");
  const auto cand0 = library::make_candidate(sensor, back, {"K"}, w);
  CHECK(cand0.similarity == 0.0);
  const auto failed = refinement_analysis(sensor, back, cand0, {}, {}, w);
  CHECK(failed.status == Status::Failed);

  AnalysisOptions both;
  both.force_repair = both.force_search = true;
  CHECK_THROWS_AS(refinement_analysis(sensor, back, cand0, {}, both, w),
                  AnalysisError);
  // A candidate computed for another specification is rejected.
  CHECK_THROWS_AS(refinement_analysis(c, back, cand0, {}, {}, w), AnalysisError);
}

TEST_CASE("verdict parsing") {
  CHECK(parse_verdict("REALIZABLE\n") == Realizability::Realizable);
  CHECK(parse_verdict("result: UNREALIZABLE") == Realizability::Unrealizable);
  CHECK_FALSE(parse_verdict("NOTREALIZABLE").has_value());
  CHECK_FALSE(parse_verdict("unknown").has_value());
}

TEST_CASE("realizability decided locally") {
  const world::WorldModel w = testing::store_world(true);
  const auto patrol = check_realizability(sat_c("true", "G F l1 & G F l3"), w,
                                          nullptr);
  CHECK(patrol.verdict == Realizability::Realizable);
  CHECK(patrol.decided_locally);
  CHECK(patrol.inputs.empty());
  CHECK(patrol.outputs ==
        std::vector<std::string>{"l1", "l2", "l3", "l4", "l5"});
  CHECK(patrol.input_file.find("G (l1 -> X") != std::string::npos);

  const auto never = check_realizability(sat_c("true", "false"), w, nullptr);
  CHECK(never.verdict == Realizability::Unrealizable);

  const auto open = check_realizability(sat_c("G F s", "G(s -> g)"), w, nullptr,
                                        {"s"}, {"g"});
  CHECK(open.verdict == Realizability::ToolError);
  CHECK(open.message == "no adapter");
}

TEST_CASE("realizability through an external command") {
  const world::WorldModel w = testing::store_world();
  const Contract c = sat_c("G F s", "G(s -> g)");
  const auto dir = std::filesystem::temp_directory_path();

  SynthAdapter yes({"grep -q 'INPUTS: s' {input} && echo REALIZABLE"});
  auto r = check_realizability(c, w, &yes, {"s"}, {"g"});
  CHECK(r.verdict == Realizability::Realizable);
  CHECK_FALSE(r.decided_locally);

  SynthAdapter no({"echo 'status UNREALIZABLE'"});
  CHECK(check_realizability(c, w, &no, {"s"}, {"g"}).verdict ==
        Realizability::Unrealizable);

  SynthAdapter garbage({"echo maybe"});
  r = check_realizability(c, w, &garbage, {"s"}, {"g"});
  CHECK(r.verdict == Realizability::ToolError);
  CHECK(r.message.find("maybe") != std::string::npos);

  SynthAdapter missing({(dir / "agc-no-such-tool").string() + " {input}"});
  CHECK(check_realizability(c, w, &missing, {"s"}, {"g"}).verdict ==
        Realizability::ToolError);

  SynthAdapter slow({"sleep 5; echo REALIZABLE", std::chrono::seconds(1)});
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(check_realizability(c, w, &slow, {"s"}, {"g"}).verdict ==
        Realizability::ToolError);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(4));
}
