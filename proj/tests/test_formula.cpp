#include <functional>

#include "doctest.h"
#include "modalk/formula.hpp"
#include "modalk/generator.hpp"
#include "modalk/kripke.hpp"

using namespace modalk;

namespace {

Formula P() { return Formula::var("p"); }
Formula Q() { return Formula::var("q"); }

// Every Kripke model with up to max_states states over the given variables,
// fed to a callback.  Small enough only for tiny bounds.
template <class F>
void for_each_model(int max_states, const std::vector<std::string>& vars,
                    F&& fn) {
  int v = static_cast<int>(vars.size());
  for (int n = 1; n <= max_states; ++n) {
    std::uint64_t rel_count = 1ull << (n * n);
    std::uint64_t val_count = 1ull << (v * n);
    for (std::uint64_t rel = 0; rel < rel_count; ++rel) {
      std::vector<std::pair<int, int>> edges;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (rel >> (s * n + t) & 1) edges.emplace_back(s, t);
      for (std::uint64_t val = 0; val < val_count; ++val) {
        std::vector<KripkeModel::Valuation> vals(n);
        for (int k = 0; k < v; ++k)
          for (int s = 0; s < n; ++s)
            if (val >> (k * n + s) & 1) vals[s][vars[k]] = true;
        fn(KripkeModel(n, edges, std::move(vals)));
      }
    }
  }
}

}  // namespace

TEST_CASE("parse basics") {
  CHECK(parse("p & ~q") == Formula::conjunction(P(), Formula::negation(Q())));
  CHECK(parse("[] false") == Formula::box(Formula::bot()));
  CHECK(parse("<> <> p | [] q") ==
        Formula::disjunction(Formula::dia(Formula::dia(P())),
                             Formula::box(Q())));
  CHECK(parse("true") == Formula::top());
  CHECK(parse("  p ") == P());
  CHECK(parse("p_1x") == Formula::var("p_1x"));
}

TEST_CASE("parse precedence and associativity") {
  // & tighter than |, | tighter than ->, -> tighter than <->.
  CHECK(parse("p | q & p") ==
        Formula::disjunction(P(), Formula::conjunction(Q(), P())));
  // a -> b desugars to ~a | b; right-associative.
  CHECK(parse("p -> q") ==
        Formula::disjunction(Formula::negation(P()), Q()));
  CHECK(parse("p -> q -> p") == parse("~p | (~q | p)"));
  // a <-> b desugars to (~a | b) & (~b | a).
  CHECK(parse("p <-> q") == parse("(~p | q) & (~q | p)"));
  CHECK(parse("~ [] <> p") ==
        Formula::negation(Formula::box(Formula::dia(P()))));
}

TEST_CASE("parse errors carry a byte offset") {
  CHECK_THROWS_AS(parse("p &"), ParseError);
  CHECK_THROWS_AS(parse("(p | q"), ParseError);
  CHECK_THROWS_AS(parse("p ? q"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("P"), ParseError);  // identifiers start lowercase
  try {
    parse("p & & q");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() >= 3);
    CHECK(e.offset() <= 5);
  }
}

TEST_CASE("print basics") {
  CHECK(print(Formula::box(Formula::bot())) == "[] false");
  CHECK(print(Formula::conjunction(P(), Formula::negation(Q()))) ==
        "(p & (~ q))");
  CHECK(print(P()) == "p");
  CHECK(print(Formula::dia(Formula::top())) == "<> true");
}

TEST_CASE("round trip parse(print(f)) == f on 1000 random formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 3, 5);
    CHECK(parse(print(f)) == f);
  }
}

TEST_CASE("structural equality is node-for-node") {
  CHECK(parse("p & q") != parse("q & p"));
  CHECK(parse("p & q") == parse("(p) & (q)"));
  CHECK(parse("p") != parse("q"));
  CHECK(parse("p & q").hash() == parse("p & q").hash());
}

TEST_CASE("to_nnf basics") {
  CHECK(to_nnf(parse("~ [] p")) == parse("<> ~ p"));
  CHECK(to_nnf(parse("~ (p & <> q)")) == parse("~ p | [] ~ q"));
  CHECK(to_nnf(parse("~ ~ p")) == P());
  CHECK(to_nnf(parse("~ true")) == Formula::bot());
  CHECK(to_nnf(parse("~ false")) == Formula::top());
  CHECK(to_nnf(parse("~ <> p")) == parse("[] ~ p"));
}

TEST_CASE("nnf shape, idempotence") {
  std::mt19937_64 rng(11);
  std::function<void(const Formula&)> assert_shape = [&](const Formula& f) {
    switch (f.kind()) {
      case Kind::Not:
        CHECK(f.child().kind() == Kind::Var);
        break;
      case Kind::And:
      case Kind::Or:
        assert_shape(f.left());
        assert_shape(f.right());
        break;
      case Kind::Box:
      case Kind::Dia:
        assert_shape(f.child());
        break;
      default:
        break;
    }
  };
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng, 2, 5);
    Formula n = to_nnf(f);
    assert_shape(n);
    CHECK(to_nnf(n) == n);
  }
}

TEST_CASE("nnf soundness against exhaustive small models") {
  // Semantic equivalence of f and to_nnf(f) at every state of every model
  // with <= 3 states over {p, q}.
  std::mt19937_64 rng(13);
  std::vector<Formula> sample = {
      parse("~ ([] p & <> (q | ~ p))"),
      parse("~ ~ <> ~ (p <-> q)"),
      parse("~ [] [] ~ p | ~ (q -> p)"),
  };
  for (int i = 0; i < 12; ++i) sample.push_back(random_formula(rng, 2, 4));
  for (const Formula& f : sample) {
    Formula n = to_nnf(f);
    for_each_model(3, {"p", "q"}, [&](const KripkeModel& m) {
      for (int s = 0; s < m.num_states(); ++s)
        REQUIRE(model_check(m, s, f) == model_check(m, s, n));
    });
  }
}

TEST_CASE("variables") {
  CHECK(variables(parse("p & [] p")) == std::set<std::string>{"p"});
  CHECK(variables(parse("[] false")).empty());
  CHECK(variables(parse("p & (q | x9)")) ==
        std::set<std::string>{"p", "q", "x9"});
}

TEST_CASE("desugar_diamonds") {
  CHECK(desugar_diamonds(parse("<> p")) == parse("~ [] ~ p"));
  CHECK(desugar_diamonds(parse("[] <> p & q")) == parse("[] ~ [] ~ p & q"));
  CHECK(desugar_diamonds(parse("p | [] q")) == parse("p | [] q"));
}
