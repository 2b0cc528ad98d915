#include "doctest.h"

#include "../support/store_world.hpp"

#include "agc/error.hpp"
#include "agc/ltl/parser.hpp"
#include "agc/ltl/transform.hpp"
#include "agc/sat/solver.hpp"
#include "agc/world/world.hpp"

#include <algorithm>
#include <functional>

using namespace agc;
using namespace agc::ltl;
using world::TypeKind;
using world::Violation;
using world::WorldModel;

namespace {

bool equiv(const Formula &a, const Formula &b) {
  return sat::default_solver().equivalent(a, b);
}

std::size_t count_kind(const Formula &f, Kind k) {
  std::size_t n = f.kind() == k ? 1 : 0;
  if (is_unary(f.kind()) || is_binary(f.kind())) n += count_kind(f.lhs(), k);
  if (is_binary(f.kind())) n += count_kind(f.rhs(), k);
  return n;
}

WorldModel locations(std::initializer_list<const char *> ids) {
  WorldModel w;
  for (const char *id : ids) w.add_type(id, TypeKind::Location);
  return w;
}

} // namespace

TEST_CASE("type registration") {
  WorldModel w = locations({"LF", "L1"});
  CHECK(w.find("LF")->ap == "lf");
  CHECK(w.find_by_ap("l1")->id == "L1");
  CHECK(w.resolve("l1") == w.find("L1"));
  CHECK(w.resolve("nope") == nullptr);
  CHECK_THROWS_AS(w.add_type("LF", TypeKind::Location), Error);
  const auto &anon = w.register_atom("door");
  CHECK(anon.anonymous);
  CHECK(anon.kind == TypeKind::Unknown);
  CHECK(&w.register_atom("l1") == w.find("L1"));
  CHECK(world::to_ap("LF") == "lf");
}

TEST_CASE("mtx examples") {
  WorldModel w = locations({"LB", "LF"});
  w.add_mutex("LB", "LF");
  CHECK(w.mutex("LF", "LB"));
  const Formula expected = parse("G(lb -> !lf) & G(lf -> !lb)");
  CHECK(equiv(w.mtx({"lb", "lf"}), expected));
  CHECK(w.mtx({"lb"}) == top());
  CHECK(locations({"A", "B"}).mtx({"a", "b"}) == top());

  WorldModel three = locations({"L1", "L2", "L3"});
  three.add_mutex("L1", "L2");
  three.add_mutex("L1", "L3");
  three.add_mutex("L2", "L3");
  const Formula m = three.mtx({"l1", "l2", "l3"});
  CHECK(count_kind(m, Kind::Globally) == 6);
}

TEST_CASE("adj examples") {
  WorldModel w = locations({"LB", "LF"});
  w.add_adjacency("LB", "LF");
  CHECK(equiv(w.adj({"lb", "lf"}),
              parse("G(lb -> X(lb | lf)) & G(lf -> X(lf | lb))")));
  CHECK(locations({"A"}).adj({"a"}) == top());

  WorldModel m = testing::store_world(true);
  // Per location, the successor may be any neighbour.
  CHECK(equiv(m.adj({"l1"}), parse("G(l1 -> X(l1 | l2 | l3))")));
  CHECK(equiv(m.adj({"l3"}), parse("G(l3 -> X(l3 | l1 | l4 | l5))")));
  // Pairwise clauses restrict l1's successor to the intersection.
  const ApSet near{"l1", "l2", "l3"};
  const Formula pairwise =
      conj(m.mtx(near), m.adj(near, world::AdjacencyMode::Pairwise));
  CHECK(sat::is_valid(implies(pairwise, parse("G(l1 -> X l1)"))));
  CHECK_FALSE(sat::is_valid(
      implies(conj(m.mtx(near), m.adj(near)), parse("G(l1 -> X l1)"))));
}

TEST_CASE("ext and cov examples") {
  WorldModel w = locations({"LF", "L1", "L3", "L4"});
  w.add_extension("L1", "LF");
  w.add_extension("L3", "LF");
  CHECK(equiv(w.ext(), parse("G(l1 -> lf) & G(l3 -> lf)")));
  CHECK(w.cov() == top());
  w.add_extension("L4", "LF");
  w.add_covering("LF", {"L1", "L3", "L4"});
  CHECK(equiv(w.cov(), parse("G(lf -> l1 | l3 | l4)")));

  WorldModel empty;
  CHECK(empty.ext() == top());
  CHECK(empty.cov() == top());
}

TEST_CASE("ext_cov slicing keeps connected clauses") {
  const WorldModel w = testing::store_world(true);
  const Formula sliced = w.ext_cov({"l1"});
  const ApSet a = atoms(sliced);
  CHECK(a.contains("lf"));
  CHECK(a.contains("l4"));
  CHECK_FALSE(a.contains("l5"));
  CHECK_FALSE(a.contains("lb"));
  CHECK(equiv(w.ext_cov({"l1", "l5", "l2"}), conj(w.ext(), w.cov())));
}

TEST_CASE("similar") {
  const WorldModel w = testing::store_world(true);
  CHECK(w.similar("L1", "LF"));
  CHECK(w.similar("LF", "LF"));
  CHECK_FALSE(w.similar("LF", "L1"));
  CHECK_FALSE(w.similar("L5", "LF"));

  WorldModel chain = locations({"A", "B", "C"});
  chain.add_extension("A", "B");
  chain.add_extension("B", "C");
  CHECK(chain.extends("A", "C"));
  CHECK(chain.similar("A", "C"));
}

TEST_CASE("validate") {
  CHECK(testing::store_world(false).validate().empty());
  CHECK(testing::store_world(true).validate().empty());

  WorldModel cyc = locations({"A", "B"});
  cyc.add_extension("A", "B");
  cyc.add_extension("B", "A");
  auto v = cyc.validate();
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::ExtensionCycle);

  WorldModel cov = locations({"A", "B"});
  cov.add_covering("A", {"B"});
  v = cov.validate();
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::CoveringNotSubtype);

  WorldModel self = locations({"A"});
  self.add_mutex("A", "A");
  v = self.validate();
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::SelfMutex);

  WorldModel unknown = locations({"A"});
  unknown.add_adjacency("A", "Z");
  v = unknown.validate();
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].kind == Violation::Kind::UnknownType);
}

TEST_CASE("types_of") {
  const WorldModel w = testing::store_world();
  CHECK(w.types_of({"lf", "lb", "zz"}) == std::set<std::string>{"LB", "LF"});
}

TEST_CASE("in_context conjoins mtx and adj") {
  const WorldModel w = testing::store_world();
  const Formula phi = parse("lb & lf");
  CHECK_FALSE(sat::is_satisfiable(w.in_context(phi)));
  CHECK(sat::is_satisfiable(phi));
}

TEST_CASE("generator monotonicity") {
  const WorldModel w = testing::store_world(true);
  const std::vector<ApSet> sets{{"l1"},
                                {"l1", "l3"},
                                {"l1", "l2", "l3"},
                                {"lb", "lf"},
                                {"lb", "lf", "l5"},
                                {"l3", "l4", "l5"}};
  for (const auto &small : sets) {
    for (const auto &big : sets) {
      if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) {
        continue;
      }
      CHECK(sat::is_valid(implies(w.mtx(big), w.mtx(small))));
      CHECK(sat::is_valid(
          implies(w.adj(big, world::AdjacencyMode::Pairwise),
                  w.adj(small, world::AdjacencyMode::Pairwise))));
    }
  }
}
