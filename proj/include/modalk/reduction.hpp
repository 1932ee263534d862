#pragma once

#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modalk/formula.hpp"
#include "modalk/kripke.hpp"

namespace modalk {

class DimacsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Propositional CNF: variables 1..num_vars, clauses of signed literals.
struct CnfInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// Standard DIMACS CNF ("p cnf n m" header, 0-terminated clauses, 'c'
// comment lines).  Clause order preserved.
CnfInstance parse_dimacs(std::string_view text);

// Builds the binary-numeral formulas: numeral(0) = []false and numeral(n) =
// the conjunction of <>numeral(i) over the set bits of n.  The cache keeps
// shared numerals pointer-identical across calls.
class NumeralBuilder {
 public:
  Formula numeral(long n);

 private:
  std::unordered_map<long, Formula> cache_;
};

Formula numeral(long n);

Formula encode_literal(int var, bool negated, NumeralBuilder& nums);
Formula encode_literal(int var, bool negated);

Formula encode_clause(const std::vector<int>& clause, NumeralBuilder& nums);
Formula encode_clause(const std::vector<int>& clause);

// The full modal encoding of a CNF instance; uses exactly one
// propositional variable, y.
Formula encode(const CnfInstance& cnf);

// Exhaustive 2^n search (n <= 24); lexicographically first satisfying
// assignment (x1 most significant, false < true), or nullopt.
std::optional<std::vector<bool>> brute_prop(const CnfInstance& cnf);

// The constructive witness: given a satisfying assignment (assignment[i]
// is the value of x_{i+1}), builds a model whose root satisfies
// encode(cnf).  Throws std::invalid_argument if the assignment does not
// satisfy the CNF.
struct ReductionWitness {
  KripkeModel model;
  int root;
  std::vector<int> numeral_states;  // numeral_states[i] = state where numeral(i) holds
};

ReductionWitness witness_model(const CnfInstance& cnf,
                               const std::vector<bool>& assignment);

}  // namespace modalk
