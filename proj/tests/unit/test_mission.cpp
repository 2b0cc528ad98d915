#include "doctest.h"

#include "agc/error.hpp"
#include "agc/ltl/parser.hpp"
#include "agc/mission/mission.hpp"
#include "agc/sat/solver.hpp"

#include <algorithm>

using namespace agc;
using namespace agc::ltl;
using mission::parse_mission;

namespace {

const std::string kDir = AGC_MISSIONS_DIR;

const char *const kSmall = R"(
world {
  type location L1
  type location L2
  type sensor S
  mutex L1 L2;
  adjacent L1 L2
}
// comment
contract C { assumes: G F s; guarantees: Patrolling(L1, l2); }
)";

} // namespace

TEST_CASE("bundled missions load clean") {
  for (const char *file : {"store.mission", "store_full_map.mission"}) {
    CAPTURE(file);
    const auto m = mission::load_mission(kDir + "/" + file);
    CHECK(m.warnings.empty());
    CHECK(m.world.validate().empty());
    CHECK(m.contracts.count("C1"));
    CHECK(m.library("Delta").size() == 4);
    for (const auto &[name, c] : m.contracts) CHECK(c.is_saturated());
    CHECK(m.world.extends("L3", "LF"));
  }
  const auto m = mission::load_mission(kDir + "/store.mission");
  CHECK(m.contract_order.front() == "C1");
  CHECK(m.library_order ==
        std::vector<std::string>{"Delta", "DeltaPrime", "Lib", "Reactions"});
  CHECK(m.library("Delta").find("L3")->contract.simplified().guarantees() ==
        parse("F l3 & F l1"));
  CHECK_THROWS_AS(m.contract("C9"), Error);
}

TEST_CASE("type names resolve inside patterns") {
  const auto m = parse_mission(kSmall);
  const auto &c = m.contract("C");
  CHECK(sat::default_solver().equivalent(
      c.guarantees(), parse("(G F l1 & G F l2) | !(G F s)")));
  CHECK(m.world.mutex("L1", "L2"));
  CHECK(m.world.find("S")->kind == world::TypeKind::Sensor);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse_mission("world { type location L1\n mutex l1 l1 }"),
                  Error);
  CHECK_THROWS_AS(parse_mission("world { type location L1\n mutex L1 L9 }"),
                  Error);
  CHECK_THROWS_AS(parse_mission("world { type location L1\n type location L1 }"),
                  Error);
  CHECK_THROWS_AS(parse_mission("world { type place L1 }"), ParseError);
  CHECK_THROWS_AS(parse_mission("contract C { guarantees: a; }\n"
                                "contract C { guarantees: b; }"),
                  Error);
  // Specifications may be inconsistent; only components are checked.
  CHECK_NOTHROW(parse_mission("contract C { guarantees: F false; }"));
  CHECK_THROWS_AS(
      parse_mission("library D { component K { guarantees: a; impl: \"none.mealy\"; } }",
                    kDir),
      Error);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_mission("contract C {\n  guarantees: G (a & ;\n}");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.position().line == 2);
  }
  CHECK_THROWS_AS(parse_mission("contract { }"), ParseError);
  CHECK_THROWS_AS(parse_mission("contract C { guarantees: a; } world { }"),
                  ParseError);
}

TEST_CASE("undeclared atoms warn and become anonymous types") {
  const auto m = parse_mission("world { type location L1 }\n"
                               "contract C { guarantees: G F l1 & F door; }");
  REQUIRE(m.warnings.size() == 1);
  CHECK(m.warnings[0].find("door") != std::string::npos);
  const auto *t = m.world.find_by_ap("door");
  REQUIRE(t != nullptr);
  CHECK(t->anonymous);
}

TEST_CASE("components must be well formed") {
  CHECK_THROWS_AS(parse_mission("world { type location L1\n type location L2\n"
                                "mutex L1 L2 }\n"
                                "library D { component K { guarantees: l1 & l2; } }"),
                  Error);
  mission::LoadOptions lax;
  lax.check_components = false;
  CHECK_NOTHROW(parse_mission("world { type location L1\n type location L2\n"
                              "mutex L1 L2 }\n"
                              "library D { component K { guarantees: l1 & l2; } }",
                              ".", lax));
}
