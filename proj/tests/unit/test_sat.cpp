#include "doctest.h"

#include "../support/random_formula.hpp"

#include "agc/error.hpp"
#include "agc/ltl/lasso.hpp"
#include "agc/ltl/parser.hpp"
#include "agc/ltl/transform.hpp"
#include "agc/sat/automaton.hpp"
#include "agc/sat/oracle.hpp"
#include "agc/sat/solver.hpp"
#include "agc/simd/bitvec.hpp"

#include <random>

using namespace agc;
using namespace agc::ltl;
using agc::sat::Solver;

namespace {
sat::GeneralizedBuchiAutomaton automaton(const char *text) {
  return sat::to_buchi(nnf(simplify(parse(text))));
}
} // namespace

TEST_CASE("to_buchi languages") {
  auto gfa = automaton("G F a");
  auto r = sat::check_emptiness(gfa);
  REQUIRE_FALSE(r.empty);
  CHECK(evaluate_on_lasso(parse("G F a"), *r.witness));
  CHECK(evaluate_on_lasso(parse("G F a"),
                          LassoTrace::from_maps({}, {{{"a", true}}})));

  CHECK(sat::check_emptiness(sat::to_buchi(nnf(parse("a & !a")))).empty);
  CHECK(sat::check_emptiness(automaton("G a & F !a")).empty);
  CHECK(sat::check_emptiness(automaton("G a & F !a")).empty);
  CHECK_FALSE(sat::lasso_oracle(parse("G a & F !a"), 8).has_value());
}

TEST_CASE("to_buchi preconditions") {
  CHECK_THROWS_AS(sat::to_buchi(parse("G a")), std::invalid_argument);
  CHECK_THROWS_AS(sat::to_buchi(parse("a & b & c"), {2}), ApCapExceeded);
  const auto a = automaton("a U b");
  CHECK(a.acceptance_count() == 1);
  CHECK(a.dump().find("acc 0") != std::string::npos);
}

TEST_CASE("transition labels are satisfiable cubes") {
  std::mt19937 rng(3);
  agc::testing::FormulaGen gen;
  for (int i = 0; i < 200; ++i) {
    const auto a = sat::to_buchi(nnf(gen(rng)));
    for (const auto &out : a.edges) {
      for (const auto &e : out) {
        CHECK_FALSE(e.label.empty());
        for (const auto &cube : e.label) {
          for (std::size_t k = 1; k < cube.size(); ++k) {
            CHECK(cube[k - 1].ap < cube[k].ap);
          }
        }
        CHECK(e.marks.width() == a.acceptance_count());
      }
    }
  }
}

TEST_CASE("is_satisfiable examples") {
  Solver s;
  CHECK_FALSE(s.is_satisfiable(
      parse("lb & lf & G(lb -> !lf) & G(lf -> !lb) & G(lb -> X(lb | lf)) & "
            "G(lf -> X(lf | lb))")));
  CHECK(s.is_satisfiable(parse("G F l5 & G F l3")));
  CHECK_FALSE(s.is_satisfiable(bottom()));
  CHECK(s.is_satisfiable(top()));
}

TEST_CASE("is_valid examples") {
  Solver s;
  CHECK(s.is_valid(parse(
      "(G(l1 -> lf) & G(l3 -> lf)) -> ((G F l1 & G F l3) -> G F lf)")));
  CHECK(s.is_valid(parse("a -> a")));
  CHECK(s.is_valid(parse("G F a -> F a")));
  CHECK_FALSE(s.is_valid(parse("F a -> G F a")));
  CHECK(s.equivalent(parse("!G a"), parse("F !a")));
  CHECK(s.equivalent(parse("a U b"), parse("b | (a & X(a U b))")));
  CHECK_FALSE(s.equivalent(parse("G(s -> g)"), parse("G(s -> X g)")));
}

TEST_CASE("ap cap") {
  Solver s(sat::SatOptions{3});
  CHECK_THROWS_AS(s.is_satisfiable(parse("a & b & c & d")), ApCapExceeded);
  CHECK(s.is_satisfiable(parse("a & b & c")));
  // true-simplified atoms still count
  CHECK_THROWS_AS(s.is_satisfiable(parse("a | b | c | d | true")), ApCapExceeded);
}

TEST_CASE("witness covers the original atoms") {
  Solver s;
  const auto r = s.check(parse("a & (b | true)"));
  REQUIRE(r.witness);
  CHECK(r.witness->aps() == std::vector<std::string>{"a", "b"});
  CHECK(evaluate_on_lasso(parse("a & (b | true)"), *r.witness));
}

TEST_CASE("lasso oracle examples") {
  auto w = sat::lasso_oracle(parse("G F a"), 2);
  REQUIRE(w);
  CHECK(w->prefix().empty());
  CHECK(w->loop() == std::vector<State>{State{true}});

  w = sat::lasso_oracle(parse("a & X !a"), 2);
  REQUIRE(w);
  CHECK(w->prefix() == std::vector<State>{State{true}});
  CHECK(w->loop() == std::vector<State>{State{false}});

  const Formula f = parse("!lb U lf");
  w = sat::lasso_oracle(f, 3);
  REQUIRE(w);
  CHECK(evaluate_on_lasso(f, *w));

  CHECK_THROWS_AS(sat::lasso_oracle(parse("a & b & c & d & e"), 2), Error);
  CHECK_THROWS_AS(sat::lasso_oracle(parse("a"), 9), Error);
  CHECK_THROWS_AS(sat::lasso_oracle(parse("a"), 0), Error);
}

TEST_CASE("bit-parallel evaluation agrees with evaluate_on_lasso") {
  std::mt19937 rng(5);
  agc::testing::FormulaGen gen;
  gen.atoms = {"a", "b"};
  const std::vector<std::string> aps{"a", "b"};
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {0, 1}, {1, 1}, {0, 3}, {2, 2}, {1, 3}, {3, 2}, {4, 4}};
  for (int i = 0; i < 60; ++i) {
    const Formula f = gen(rng);
    for (auto [p, l] : shapes) {
      const auto bits = sat::evaluate_all_assignments(f, aps, p, l);
      const std::uint64_t count = std::uint64_t{1} << (aps.size() * (p + l));
      // sample at most 512 assignments per shape
      const std::uint64_t stride = count > 512 ? count / 512 + 1 : 1;
      for (std::uint64_t idx = 0; idx < count; idx += stride) {
        const bool expected =
            evaluate_on_lasso(f, sat::assignment_trace(aps, p, l, idx));
        const bool got = (bits[idx / 64] >> (idx % 64)) & 1;
        INFO(print(f), " shape ", p, "+", l, " idx ", idx);
        REQUIRE(got == expected);
      }
    }
  }
}

TEST_CASE("SIMD kernels match the scalar reference") {
  using simd::Word;
  std::mt19937_64 rng(9);
  const auto &ref = simd::kernels_for(simd::Backend::Scalar);
  for (auto b : {simd::Backend::Avx2, simd::Backend::Neon}) {
    if (!simd::backend_supported(b)) continue;
    const auto &k = simd::kernels_for(b);
    for (std::size_t n : {0, 1, 3, 4, 5, 17, 1024}) {
      std::vector<Word> a(n), c(n), d(n), x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng();
        c[i] = rng();
        d[i] = rng();
      }
      auto bin = [&](auto fa, auto fb) {
        fa(x.data(), a.data(), c.data(), n);
        fb(y.data(), a.data(), c.data(), n);
        CHECK(x == y);
      };
      bin(ref.and_words, k.and_words);
      bin(ref.or_words, k.or_words);
      bin(ref.xnor_words, k.xnor_words);
      bin(ref.implies_words, k.implies_words);
      ref.not_words(x.data(), a.data(), n);
      k.not_words(y.data(), a.data(), n);
      CHECK(x == y);
      ref.until_step(x.data(), a.data(), c.data(), d.data(), n);
      k.until_step(y.data(), a.data(), c.data(), d.data(), n);
      CHECK(x == y);
      ref.release_step(x.data(), a.data(), c.data(), d.data(), n);
      k.release_step(y.data(), a.data(), c.data(), d.data(), n);
      CHECK(x == y);
      CHECK(ref.any_words(a.data(), n) == k.any_words(a.data(), n));
      std::vector<Word> zero(n, 0);
      CHECK_FALSE(k.any_words(zero.data(), n));
      if (n) {
        zero[n - 1] = 1;
        CHECK(k.any_words(zero.data(), n));
      }
    }
  }
}

TEST_CASE("oracle answers are backend independent") {
  std::mt19937 rng(21);
  agc::testing::FormulaGen gen;
  gen.atoms = {"a", "b"};
  sat::OracleOptions scalar{&simd::kernels_for(simd::Backend::Scalar)};
  for (int i = 0; i < 100; ++i) {
    const Formula f = gen(rng);
    const auto x = sat::lasso_oracle(f, 4, scalar);
    const auto y = sat::lasso_oracle(f, 4);
    REQUIRE(x.has_value() == y.has_value());
    if (x) CHECK(x->to_string() == y->to_string());
  }
}

TEST_CASE("witness soundness, duality and oracle agreement on random formulas") {
  Solver s;
  std::mt19937 rng(13);
  agc::testing::FormulaGen gen;
  gen.atoms = {"a", "b"};
  gen.max_depth = 4;
  for (int i = 0; i < 400; ++i) {
    const Formula f = gen(rng);
    INFO(print(f));
    const auto r = s.check(f);
    if (r.satisfiable) {
      REQUIRE(r.witness);
      CHECK(evaluate_on_lasso(f, *r.witness));
    }
    CHECK(s.is_valid(f) == !s.is_satisfiable(neg(f)));
    const auto w = sat::lasso_oracle(f, 6);
    if (w) {
      CHECK(evaluate_on_lasso(f, *w));
      CHECK(r.satisfiable);
    }
    const Formula g = gen(rng);
    if (s.is_satisfiable(conj(f, g))) CHECK(r.satisfiable);
  }
}

TEST_CASE("simplify and nnf preserve semantics") {
  Solver s;
  std::mt19937 rng(17);
  agc::testing::FormulaGen gen;
  gen.max_depth = 4;
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen(rng);
    INFO(print(f));
    CHECK(s.equivalent(f, nnf(f)));
    CHECK(s.equivalent(f, simplify(f)));
  }
}

TEST_CASE("simplified saturation example stays equivalent") {
  Solver s;
  const Formula raw = parse("((G F s) -> G(s -> g)) | !(G(s -> X g) & G F s)");
  const Formula expected = parse("G(s -> g) | !(G(s -> X g) & G F s)");
  CHECK(s.equivalent(simplify(raw), expected));
  CHECK(s.equivalent(raw, expected));
}
