#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "modalk/formula.hpp"
#include "modalk/kripke.hpp"

namespace modalk {

enum class Verdict { Sat, Unsat, Unknown };

const char* to_string(Verdict v);

struct Witness {
  KripkeModel model;
  int root;
};

struct SolveStats {
  std::uint64_t candidates = 0;   // enumeration steps examined
  std::uint64_t table_cells = 0;  // DP cells allocated (width solver)
  double seconds = 0.0;
  bool complete = false;  // verdict covers the whole search space
  std::string note;       // set on resource aborts
};

struct SatResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> witness;
  SolveStats stats;

  std::string to_json() const;
};

struct SolverOptions {
  std::uint64_t max_candidates = 1ull << 26;
  std::uint64_t max_table_cells = 1ull << 22;
  std::uint64_t max_model_states = 1'000'000;
  double wall_seconds = 300.0;
  int brute_max_states = 4;
  // sat_brute may report UNSAT (not just UNKNOWN) when the caller vouches
  // that this many states are enough for any satisfiable formula in play.
  int brute_complete_bound = 0;
  bool width_witness = false;  // reconstruct a model in sat_width
};

// Enumerates all models with 1..max_states states (state 0 is the root,
// valuations in lexicographic order).  A witness finder: returns SAT or
// UNKNOWN, never UNSAT unless brute_complete_bound covers max_states.
SatResult sat_brute(const Formula& f, int max_states,
                    const SolverOptions& opts = {});

// Layered universal-model construction over modality depth: one state per
// realizable type at each level, then exhaustion over root candidates.
// Complete; SAT witnesses are reachable submodels of the layered model.
SatResult sat_depth(const Formula& f, const SolverOptions& opts = {});

// Small-model enumeration driven by the diamond dimension k: searches all
// subtree shapes of the k-ary decreasing skeleton tree with all valuations,
// collapsing interchangeable sibling subtrees.  Requires NNF (throws
// std::invalid_argument otherwise).  Complete.
SatResult sat_diamond(const Formula& f, const SolverOptions& opts = {});

// Bottom-up dynamic programming over modal levels: for each level and each
// (letter set, level subset) pair, decides realizability by propositional
// enumeration over the boxed children plus a successor-compatibility scan
// of the level below.  Complete; no witness unless width_witness is set.
SatResult sat_width(const Formula& f, const SolverOptions& opts = {});

enum class Algo { Width, Depth, Diamond, Brute };

// Dispatch; applies to_nnf first when the engine needs it.
SatResult solve(const Formula& f, Algo algo, const SolverOptions& opts = {});

struct ValidResult {
  enum class Verdict { Valid, NotValid, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> counterexample;
  SolveStats stats;
};

// Validity via satisfiability of the negation.
ValidResult valid(const Formula& f, Algo algo, const SolverOptions& opts = {});

}  // namespace modalk
