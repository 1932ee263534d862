#include "modalk/reduction.hpp"

#include <functional>
#include <sstream>

#include "modalk/measures.hpp"

namespace modalk {

CnfInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfInstance cnf;
  int declared_clauses = -1;
  std::vector<int> current;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "p") {
      if (have_header) throw DimacsError("duplicate DIMACS header");
      std::string fmt;
      if (!(ls >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
        throw DimacsError("malformed header; expected 'p cnf <vars> <clauses>'");
      if (cnf.num_vars < 1)
        throw DimacsError("DIMACS instance must declare at least one variable");
      if (declared_clauses < 0)
        throw DimacsError("negative clause count in header");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw DimacsError("clause data before 'p cnf' header");
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw DimacsError("empty clause");
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        int v = lit > 0 ? lit : -lit;
        if (v > cnf.num_vars)
          throw DimacsError("literal " + std::to_string(lit) +
                            " out of range 1.." + std::to_string(cnf.num_vars));
        current.push_back(lit);
      }
    }
  }
  if (!have_header) throw DimacsError("missing 'p cnf' header");
  if (!current.empty()) throw DimacsError("clause missing 0 terminator");
  if (static_cast<int>(cnf.clauses.size()) != declared_clauses)
    throw DimacsError("header declares " + std::to_string(declared_clauses) +
                      " clauses but " + std::to_string(cnf.clauses.size()) +
                      " were given");
  return cnf;
}

Formula NumeralBuilder::numeral(long n) {
  if (n < 0) throw std::invalid_argument("numeral of a negative number");
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  Formula out = Formula::bot();
  if (n == 0) {
    out = Formula::box(Formula::bot());
  } else {
    // One <>numeral(i) conjunct per set bit, highest bit first.
    bool first = true;
    for (int bit = 62; bit >= 0; --bit) {
      if (!(n >> bit & 1)) continue;
      Formula term = Formula::dia(numeral(bit));
      out = first ? term : Formula::conjunction(out, term);
      first = false;
    }
  }
  cache_.emplace(n, out);
  return out;
}

Formula numeral(long n) {
  NumeralBuilder nums;
  return nums.numeral(n);
}

Formula encode_literal(int var, bool negated, NumeralBuilder& nums) {
  if (var < 1) throw std::invalid_argument("literal index must be >= 1");
  Formula vi = nums.numeral(var);
  if (!negated)
    return Formula::conjunction(Formula::dia(vi), Formula::box(vi));
  Formula v0 = nums.numeral(0);
  return Formula::conjunction(
      Formula::conjunction(Formula::dia(vi), Formula::dia(v0)),
      Formula::box(Formula::disjunction(vi, v0)));
}

Formula encode_literal(int var, bool negated) {
  NumeralBuilder nums;
  return encode_literal(var, negated, nums);
}

Formula encode_clause(const std::vector<int>& clause, NumeralBuilder& nums) {
  if (clause.empty()) throw std::invalid_argument("empty clause");
  std::vector<Formula> lits;
  lits.reserve(clause.size());
  for (int lit : clause)
    lits.push_back(encode_literal(lit > 0 ? lit : -lit, lit < 0, nums));
  Formula diamonds = Formula::dia(lits[0]);
  for (std::size_t i = 1; i < lits.size(); ++i)
    diamonds = Formula::conjunction(diamonds, Formula::dia(lits[i]));
  Formula any = lits[0];
  for (std::size_t i = 1; i < lits.size(); ++i)
    any = Formula::disjunction(any, lits[i]);
  return Formula::conjunction(diamonds, Formula::box(any));
}

Formula encode_clause(const std::vector<int>& clause) {
  NumeralBuilder nums;
  return encode_clause(clause, nums);
}

Formula encode(const CnfInstance& cnf) {
  if (cnf.num_vars < 1)
    throw std::invalid_argument("encode: instance must have variables");
  NumeralBuilder nums;
  Formula y = Formula::var("y");

  // The plain numerals are not mutually exclusive: v_3 = <>v_1 & <>v_0
  // entails v_2 = <>v_1, so one state can stand for several indices and the
  // agreement conjuncts below would wrongly tie their truth values together.
  // Inside the encoding we therefore use exact numerals
  //   E_0 = [] false,
  //   E_i = AND_{b in bits(i)} <>E_b  &  [] OR_{b in bits(i)} E_b,
  // whose successors realize exactly the bit set of i.  Any two E_i, E_j are
  // contradictory: a differing bit's diamond witness violates the other's
  // box.  Still variable-free, and md(E_i) = md(v_i).
  std::unordered_map<int, Formula> exact_cache;
  std::function<Formula(int)> exact = [&](int i) -> Formula {
    auto it = exact_cache.find(i);
    if (it != exact_cache.end()) return it->second;
    Formula out = Formula::bot();
    if (i == 0) {
      out = nums.numeral(0);
    } else {
      bool first_term = true;
      Formula any = Formula::bot();
      for (int b = 30; b >= 0; --b) {
        if (!(i >> b & 1)) continue;
        Formula eb = exact(b);
        out = first_term ? Formula::dia(eb)
                         : Formula::conjunction(out, Formula::dia(eb));
        any = first_term ? eb : Formula::disjunction(any, eb);
        first_term = false;
      }
      out = Formula::conjunction(out, Formula::box(any));
    }
    exact_cache.emplace(i, out);
    return out;
  };
  auto exact_literal = [&](int var, bool negated) {
    Formula ui = exact(var);
    if (!negated)
      return Formula::conjunction(Formula::dia(ui), Formula::box(ui));
    Formula u0 = nums.numeral(0);
    return Formula::conjunction(
        Formula::conjunction(Formula::dia(ui), Formula::dia(u0)),
        Formula::box(Formula::disjunction(ui, u0)));
  };
  auto exact_clause = [&](const std::vector<int>& clause) {
    std::vector<Formula> lits;
    lits.reserve(clause.size());
    for (int lit : clause)
      lits.push_back(exact_literal(lit > 0 ? lit : -lit, lit < 0));
    Formula diamonds = Formula::dia(lits[0]);
    for (std::size_t i = 1; i < lits.size(); ++i)
      diamonds = Formula::conjunction(diamonds, Formula::dia(lits[i]));
    Formula any = lits[0];
    for (std::size_t i = 1; i < lits.size(); ++i)
      any = Formula::disjunction(any, lits[i]);
    return Formula::conjunction(diamonds, Formula::box(any));
  };

  // Structure part: one diamond per clause.
  Formula structure = Formula::top();
  bool first = true;
  for (const auto& clause : cnf.clauses) {
    Formula c = Formula::dia(exact_clause(clause));
    structure = first ? c : Formula::conjunction(structure, c);
    first = false;
  }

  // Assignment part: below every clause there is a state that reads off a
  // consistent value of y from the literal gadget shape.
  Formula dia_v0 = Formula::dia(nums.numeral(0));
  Formula consistent = Formula::conjunction(
      Formula::disjunction(Formula::negation(dia_v0),
                           Formula::box(Formula::negation(y))),
      Formula::disjunction(Formula::negation(Formula::negation(dia_v0)),
                           Formula::box(y)));
  Formula assign = Formula::box(Formula::dia(consistent));

  // Consistency part: for each variable index, y takes a single value at
  // the numeral state three steps below the root.
  Formula agree = Formula::top();
  first = true;
  for (int i = 1; i <= cnf.num_vars; ++i) {
    Formula ui = exact(i);
    Formula pos = Formula::dia(Formula::dia(
        Formula::dia(Formula::conjunction(y, ui))));
    Formula neg = Formula::negation(Formula::dia(Formula::dia(
        Formula::dia(Formula::conjunction(Formula::negation(y), ui)))));
    // A <-> B desugared as (~A | B) & (~B | A)
    Formula iff = Formula::conjunction(
        Formula::disjunction(Formula::negation(pos), neg),
        Formula::disjunction(Formula::negation(neg), pos));
    agree = first ? iff : Formula::conjunction(agree, iff);
    first = false;
  }

  return Formula::conjunction(Formula::conjunction(structure, assign), agree);
}

namespace {

bool clause_satisfied(const std::vector<int>& clause,
                      const std::vector<bool>& assignment) {
  for (int lit : clause) {
    int v = lit > 0 ? lit : -lit;
    bool val = assignment[v - 1];
    if (lit > 0 ? val : !val) return true;
  }
  return false;
}

bool cnf_satisfied(const CnfInstance& cnf, const std::vector<bool>& a) {
  for (const auto& clause : cnf.clauses)
    if (!clause_satisfied(clause, a)) return false;
  return true;
}

}  // namespace

std::optional<std::vector<bool>> brute_prop(const CnfInstance& cnf) {
  if (cnf.num_vars > 24)
    throw ResourceError("brute_prop limited to 24 variables");
  int n = cnf.num_vars;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<bool> a(n);
    // x1 is the most significant position, false before true.
    for (int i = 0; i < n; ++i) a[i] = (mask >> (n - 1 - i)) & 1;
    if (cnf_satisfied(cnf, a)) return a;
  }
  return std::nullopt;
}

ReductionWitness witness_model(const CnfInstance& cnf,
                               const std::vector<bool>& assignment) {
  int n = cnf.num_vars;
  int m = static_cast<int>(cnf.clauses.size());
  if (static_cast<int>(assignment.size()) != n)
    throw std::invalid_argument("assignment must cover x1..xn");
  if (!cnf_satisfied(cnf, assignment))
    throw std::invalid_argument(
        "witness_model requires a satisfying assignment");

  // State layout: numerals 0..n, then per variable a positive and a
  // negative literal state, then one state per clause, root last.
  auto num_state = [](int i) { return i; };
  auto pos_state = [n](int i) { return n + 2 * i - 1; };
  auto neg_state = [n](int i) { return n + 2 * i; };
  auto clause_state = [n](int c) { return 3 * n + 1 + c; };
  int root = 3 * n + 1 + m;

  // The agreement conjuncts need every s_i (i >= 1) reachable in exactly
  // three steps.  Variables absent from every clause get a dummy two-step
  // path from the root into their literal state.
  std::vector<bool> used(n + 1, false);
  for (const auto& clause : cnf.clauses)
    for (int lit : clause) used[lit > 0 ? lit : -lit] = true;
  int total = root + 1;
  std::vector<int> dummy(n + 1, -1);
  for (int i = 1; i <= n; ++i)
    if (!used[i]) dummy[i] = total++;

  std::vector<std::pair<int, int>> rel;
  for (int i = 1; i <= n; ++i) {
    if (dummy[i] < 0) continue;
    rel.emplace_back(root, dummy[i]);
    rel.emplace_back(dummy[i],
                     assignment[i - 1] ? pos_state(i) : neg_state(i));
  }
  for (int i = 1; i <= n; ++i) {
    for (int bit = 0; bit < 31; ++bit)
      if (i >> bit & 1) rel.emplace_back(num_state(i), num_state(bit));
    rel.emplace_back(pos_state(i), num_state(i));
    rel.emplace_back(neg_state(i), num_state(i));
    rel.emplace_back(neg_state(i), num_state(0));
  }
  for (int c = 0; c < m; ++c) {
    for (int lit : cnf.clauses[c]) {
      int v = lit > 0 ? lit : -lit;
      rel.emplace_back(clause_state(c), lit > 0 ? pos_state(v) : neg_state(v));
    }
    rel.emplace_back(root, clause_state(c));
  }

  std::vector<KripkeModel::Valuation> vals(total);
  for (int i = 1; i <= n; ++i)
    if (assignment[i - 1]) vals[num_state(i)]["y"] = true;

  ReductionWitness w{KripkeModel(total, std::move(rel), std::move(vals)), root,
                     {}};
  w.numeral_states.resize(n + 1);
  for (int i = 0; i <= n; ++i) w.numeral_states[i] = num_state(i);
  return w;
}

}  // namespace modalk
