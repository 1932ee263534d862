#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "modalk/formula.hpp"

namespace modalk {

using BigInt = boost::multiprecision::cpp_int;

// Thrown when a computed value would exceed a configured resource budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeasureReport {
  int v = 0;
  int md = 0;
  int dd = 0;
  int dbox = 0;
  int mw = 0;
  std::vector<int> widths;  // one entry per level 0..md-1

  std::string to_json() const;
};

// Modality depth: +1 under [] / <>, max over & / |, transparent under ~.
int modality_depth(const Formula& f);

// Diamond dimension of an NNF formula: sum over &, max over |, +1 under <>,
// transparent under [].  Throws std::invalid_argument if f is not in NNF.
int diamond_dimension(const Formula& f);

// Dual of diamond_dimension: sum over |, max over &, +1 under [].
int box_dimension(const Formula& f);

// Immediate modal children: {psi} for []psi / <>psi, union over the other
// connectives.  Deduplicated, first-occurrence order (structural identity).
std::vector<Formula> depth1_set(const Formula& f);

// [S_0, ..., S_md] with S_{i+1} = union of depth1_set over S_i.  The last
// entry is always empty.
std::vector<std::vector<Formula>> level_sets(const Formula& f);

// widths[i] = |S_i| for i < md; mw = max width (0 for propositional f).
std::pair<int, std::vector<int>> modal_width(const Formula& f);

struct PropResult {
  Formula prop;  // contains only Var/Top/Bot/~/&/| nodes
  // fresh variable name -> the boxed child it replaced, in order of first
  // occurrence; structurally identical boxed subformulas share one entry.
  std::vector<std::pair<std::string, Formula>> fresh_map;
};

// Replaces every box subformula by a fresh letter q1, q2, ...  The input
// must be diamond-free (apply desugar_diamonds first); throws
// std::invalid_argument otherwise.
PropResult prop_translate(const Formula& f);

// Upper bound on the number of d-types over v letters:
// b(0) = 2^v, b(n+1) = 2^(b(n) + v).  Throws ResourceError when an exponent
// exceeds max_bits.
BigInt type_bound(int v, int d, unsigned max_bits = 1u << 20);

// tower(0) = 0, tower(h+1) = 2^tower(h).
BigInt tower(int h, unsigned max_bits = 1u << 20);

// Convenience: every measure at once; dd/dbox are computed on to_nnf(f).
MeasureReport measure_all(const Formula& f);

}  // namespace modalk
