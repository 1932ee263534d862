#include "doctest.h"
#include "modalk/formula.hpp"
#include "modalk/generator.hpp"
#include "modalk/kripke.hpp"

using namespace modalk;

namespace {

KripkeModel single_state() { return KripkeModel(1, {}, {{}}); }

KripkeModel chain_p_at_1() {
  return KripkeModel(2, {{0, 1}}, {{}, {{"p", true}}});
}

}  // namespace

TEST_CASE("model_check basics") {
  CHECK(model_check(single_state(), 0, parse("[] false")));
  CHECK_FALSE(model_check(single_state(), 0, parse("<> true")));
  CHECK(model_check(chain_p_at_1(), 0, parse("<> p & [] p")));
  CHECK_FALSE(model_check(chain_p_at_1(), 0, parse("p")));
  CHECK(model_check(chain_p_at_1(), 1, parse("p & [] false")));
  CHECK_THROWS_AS(model_check(single_state(), 3, parse("p")), ModelError);
}

TEST_CASE("model construction validates edges") {
  CHECK_THROWS_AS(KripkeModel(1, {{0, 5}}, {{}}), ModelError);
  CHECK_THROWS_AS(KripkeModel(2, {{-1, 0}}, {{}, {}}), ModelError);
  CHECK_THROWS_AS(KripkeModel(0, {}, {}), ModelError);
}

TEST_CASE("JSON round trip") {
  std::string canon =
      R"({"states":[{"id":0,"valuation":{"p":true}},{"id":1,"valuation":{}}],"relation":[[0,1],[1,0]]})";
  KripkeModel m = KripkeModel::from_json(canon);
  CHECK(m.num_states() == 2);
  CHECK(m.value(0, "p"));
  CHECK_FALSE(m.value(1, "p"));
  CHECK(m.to_json() == canon);
  // Re-serialization of a re-parsed model is stable.
  CHECK(KripkeModel::from_json(m.to_json()).to_json() == canon);
}

TEST_CASE("JSON validation") {
  CHECK_NOTHROW(KripkeModel::from_json(
      R"({"states":[{"id":0,"valuation":{}}],"relation":[]})"));
  // Dangling edge.
  CHECK_THROWS_AS(KripkeModel::from_json(
                      R"({"states":[{"id":0,"valuation":{}}],"relation":[[0,5]]})"),
                  ModelError);
  // Duplicate id.
  CHECK_THROWS_AS(
      KripkeModel::from_json(
          R"({"states":[{"id":0,"valuation":{}},{"id":0,"valuation":{}}],"relation":[]})"),
      ModelError);
  // Not even JSON.
  CHECK_THROWS_AS(KripkeModel::from_json("nonsense"), ModelError);
  CHECK_THROWS_AS(KripkeModel::from_json(R"({"relation":[]})"), ModelError);
}

TEST_CASE("diamond/box duality over exhaustive tiny models") {
  Formula p = parse("p");
  Formula dia = Formula::dia(p);
  Formula dual = Formula::negation(Formula::box(Formula::negation(p)));
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t rel_count = 1ull << (n * n);
    std::uint64_t val_count = 1ull << n;
    for (std::uint64_t rel = 0; rel < rel_count; ++rel) {
      std::vector<std::pair<int, int>> edges;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (rel >> (s * n + t) & 1) edges.emplace_back(s, t);
      for (std::uint64_t val = 0; val < val_count; ++val) {
        std::vector<KripkeModel::Valuation> vals(n);
        for (int s = 0; s < n; ++s)
          if (val >> s & 1) vals[s]["p"] = true;
        KripkeModel m(n, edges, std::move(vals));
        for (int s = 0; s < n; ++s)
          REQUIRE(model_check(m, s, dia) == model_check(m, s, dual));
      }
    }
  }
}

TEST_CASE("checker visits each (subformula, state) pair at most once") {
  std::mt19937_64 rng(37);
  KripkeModel m(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 0}},
                {{{"p", true}}, {}, {{"q", true}}, {{"p", true}, {"q", true}}});
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 2, 5);
    CheckStats stats;
    model_check(m, 0, f, &stats);
    CHECK(stats.evaluations <=
          static_cast<std::uint64_t>(f.tree_size()) * m.num_states());
  }
}
