// End-to-end acceptance checks.  Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.
//
// Usage: acceptance [--cli /path/to/modalk]   (the CLI path is needed for the
// determinism criterion; it is skipped as FAIL if absent).

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "modalk/formula.hpp"
#include "modalk/generator.hpp"
#include "modalk/kripke.hpp"
#include "modalk/measures.hpp"
#include "modalk/reduction.hpp"
#include "modalk/solvers.hpp"

using namespace modalk;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << "criterion " << number << " [" << name << "]: "
            << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. The three complete solvers agree on every formula over one variable
// with tree size <= 7 and modality depth <= 2; bounded brute-force SAT
// verdicts are a subset.  Must finish within five minutes.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t mismatches = 0, total = 0;
  for (const Formula& f : enumerate_formulas(1, 7, 2)) {
    ++total;
    Verdict w = sat_width(f).verdict;
    Verdict d = sat_depth(f).verdict;
    Formula nnf = to_nnf(f);
    bool ok = (w == d) && w != Verdict::Unknown;
    if (diamond_dimension(nnf) <= 3)
      ok = ok && sat_diamond(nnf).verdict == w;
    Verdict b = sat_brute(f, 4).verdict;
    if (b == Verdict::Sat) ok = ok && w == Verdict::Sat;
    if (w == Verdict::Sat) ok = ok && b == Verdict::Sat;
    if (!ok) ++mismatches;
  }
  double secs = seconds_since(t0);
  report(1, "cross-solver agreement, exhaustive corpus",
         mismatches == 0 && secs < 300.0,
         std::to_string(total) + " formulas, " +
             std::to_string(mismatches) + " disagreements, " +
             std::to_string(secs) + "s");
}

// 2. Diamond dimension of a formula equals box dimension of its negation,
// on 1000 seeded random formulas over up to 3 variables, depth <= 5.
void criterion2() {
  std::mt19937_64 rng(2);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 3, 5);
    if (diamond_dimension(to_nnf(f)) !=
        box_dimension(to_nnf(Formula::negation(f))))
      ++violations;
  }
  report(2, "dimension duality on 1000 random formulas", violations == 0,
         std::to_string(violations) + " violations");
}

// 3. Level sets vanish at and beyond the modality depth on 1000 seeded
// random formulas.
void criterion3() {
  std::mt19937_64 rng(3);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 3, 5);
    auto ls = level_sets(f);
    std::size_t md = static_cast<std::size_t>(modality_depth(f));
    for (std::size_t lvl = md; lvl < ls.size(); ++lvl)
      if (!ls[lvl].empty()) ++violations;
  }
  report(3, "level sets vanish at the modality depth", violations == 0,
         std::to_string(violations) + " violations");
}

// 4. The two growth functions produce their small exact values.
void criterion4() {
  bool ok = type_bound(1, 0) == 2 && type_bound(1, 1) == 8 &&
            type_bound(0, 2) == 4 && tower(0) == 0 && tower(1) == 1 &&
            tower(2) == 2 && tower(3) == 4 && tower(4) == 16;
  report(4, "growth function values", ok);
}

// 5. For 100 seeded satisfiable CNF instances (n <= 3 variables, m <= 3
// clauses), the constructed witness model satisfies the encoding.  Within
// two minutes.
void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5);
  int verified = 0, failures = 0, attempts = 0;
  while (verified + failures < 100 && attempts < 5000) {
    ++attempts;
    CnfInstance cnf;
    cnf.num_vars = 1 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < m; ++c) {
      int len = 1 + static_cast<int>(rng() % 3);
      std::vector<int> clause;
      for (int l = 0; l < len; ++l) {
        int var = 1 + static_cast<int>(rng() % cnf.num_vars);
        clause.push_back(rng() % 2 ? var : -var);
      }
      cnf.clauses.push_back(std::move(clause));
    }
    auto a = brute_prop(cnf);
    if (!a) continue;  // only satisfiable instances count
    try {
      ReductionWitness w = witness_model(cnf, *a);
      if (model_check(w.model, w.root, encode(cnf)))
        ++verified;
      else
        ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  double secs = seconds_since(t0);
  report(5, "reduction witness models satisfy the encoding",
         verified == 100 && failures == 0 && secs < 120.0,
         std::to_string(verified) + "/100 verified, " +
             std::to_string(secs) + "s");
}

// 6. The encoding of (x1) and (~x1) is refuted by the width solver within a
// ten-minute budget.
void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  CnfInstance cnf;
  cnf.num_vars = 1;
  cnf.clauses = {{1}, {-1}};
  SolverOptions opts;
  opts.wall_seconds = 600.0;
  SatResult r = sat_width(encode(cnf), opts);
  double secs = seconds_since(t0);
  report(6, "width solver refutes the encoded contradiction",
         r.verdict == Verdict::Unsat && secs < 600.0,
         std::string(to_string(r.verdict)) + ", " + std::to_string(secs) +
             "s");
}

// 7. Depth certificate: md(encode(cnf)) <= 4 + min{h : tower(h) >= n} for
// n = 1..64 single-clause instances.  Within one minute.
void criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  int violations = 0;
  for (int n = 1; n <= 64; ++n) {
    CnfInstance cnf;
    cnf.num_vars = n;
    cnf.clauses = {{n}};
    int h = 0;
    while (tower(h) < n) ++h;
    if (modality_depth(encode(cnf)) > 4 + h) ++violations;
  }
  double secs = seconds_since(t0);
  report(7, "modality depth certificate for n = 1..64",
         violations == 0 && secs < 60.0,
         std::to_string(violations) + " violations, " + std::to_string(secs) +
             "s");
}

// 8. Numeral fidelity: numeral(5) has the expected structure, and in the
// canonical numeral models (states 0..n, edges to set bits) every numeral's
// truth at every numeral state matches the independent bit-support
// reference, in particular truth at its own designated state.
void criterion8() {
  bool ok = numeral(5) == Formula::conjunction(
                              Formula::dia(Formula::dia(numeral(1))),
                              Formula::dia(numeral(0)));

  // holds(i, j): numeral(i) is true at the state for j.
  std::function<bool(int, int)> holds = [&](int i, int j) {
    if (i == 0) return j == 0;
    for (int b = 0; b < 5; ++b) {
      if (!(i >> b & 1)) continue;
      bool found = false;
      for (int c = 0; c < 5 && !found; ++c)
        if ((j >> c & 1) && holds(b, c)) found = true;
      if (!found) return false;
    }
    return true;
  };

  for (int n = 1; n <= 16 && ok; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
      for (int b = 0; b < 5; ++b)
        if (i >> b & 1) edges.emplace_back(i, b);
    KripkeModel m(n + 1, edges,
                  std::vector<KripkeModel::Valuation>(n + 1));
    for (int i = 0; i <= n && ok; ++i) {
      if (!model_check(m, i, numeral(i))) ok = false;  // designated state
      for (int j = 0; j <= n && ok; ++j)
        if (model_check(m, j, numeral(i)) != holds(i, j)) ok = false;
    }
  }
  report(8, "numeral structure and model fidelity up to 16", ok);
}

// 9. Small-model bounds: depth-solver witnesses fit in the layered model;
// diamond-solver witnesses are subtrees of the skeleton tree.
void criterion9() {
  std::mt19937_64 rng(9);
  bool ok = true;
  int depth_checked = 0, diamond_checked = 0;
  for (int i = 0; i < 600; ++i) {
    Formula f = random_formula(rng, 2, 4);
    int d = modality_depth(f);
    int v = static_cast<int>(variables(f).size());
    if ((v <= 1 && d <= 2) || (v == 0 && d <= 3)) {
      SatResult r = sat_depth(f);
      if (r.verdict == Verdict::Sat) {
        ++depth_checked;
        BigInt bound = 1;
        for (int lvl = 0; lvl < d; ++lvl) bound += type_bound(v, lvl);
        if (BigInt(r.witness->model.num_states()) > bound) ok = false;
      }
    }
    Formula nnf = to_nnf(f);
    int k = diamond_dimension(nnf);
    if (k <= 3) {
      SatResult r = sat_diamond(nnf);
      if (r.verdict == Verdict::Sat) {
        ++diamond_checked;
        long tk = 1;
        for (int dd = 1; dd <= k; ++dd) tk = 1 + dd * tk;
        const KripkeModel& m = r.witness->model;
        if (m.num_states() > tk) ok = false;
        std::vector<int> indeg(m.num_states(), 0);
        for (auto [a, b] : m.relation()) ++indeg[b];
        if (indeg[r.witness->root] != 0) ok = false;
        for (int s = 0; s < m.num_states(); ++s)
          if (s != r.witness->root && indeg[s] != 1) ok = false;
      }
    }
  }
  report(9, "small-model bounds for depth and diamond witnesses",
         ok && depth_checked >= 20 && diamond_checked >= 50,
         std::to_string(depth_checked) + " depth / " +
             std::to_string(diamond_checked) + " diamond witnesses");
}

// 10. The corpus command is byte-deterministic for a fixed seed.
void criterion10(const std::string& cli) {
  if (cli.empty()) {
    report(10, "corpus determinism", false, "no --cli path given");
    return;
  }
  auto run = [&](std::string& out) {
    std::string cmd =
        cli + " corpus --vars 2 --count 300 --seed 123 --depth-cap 4 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return 127;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
      out.append(buf.data(), n);
    return pclose(p);
  };
  std::string a, b;
  int ra = run(a);
  int rb = run(b);
  report(10, "corpus determinism", ra == 0 && rb == 0 && !a.empty() && a == b,
         std::to_string(a.size()) + " bytes, exit " + std::to_string(ra));
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10(cli);

  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) +
                                      " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
