#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modalk/formula.hpp"

namespace modalk {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite Kripke structure: dense state ids 0..n-1, an accessibility
// relation and a per-state valuation.  Variables missing from a state's
// valuation read as false.  Immutable after construction.
class KripkeModel {
 public:
  using Valuation = std::map<std::string, bool>;

  KripkeModel(int num_states, std::vector<std::pair<int, int>> relation,
              std::vector<Valuation> valuations);

  static KripkeModel from_json(const std::string& text);
  std::string to_json() const;

  int num_states() const { return num_states_; }
  const std::vector<std::pair<int, int>>& relation() const { return relation_; }
  const std::vector<int>& successors(int s) const { return successors_.at(s); }
  const Valuation& valuation(int s) const { return valuations_.at(s); }

  bool value(int s, const std::string& var) const {
    const auto& val = valuations_.at(s);
    auto it = val.find(var);
    return it != val.end() && it->second;
  }

 private:
  int num_states_;
  std::vector<std::pair<int, int>> relation_;  // sorted, deduplicated
  std::vector<std::vector<int>> successors_;
  std::vector<Valuation> valuations_;
};

struct CheckStats {
  std::uint64_t evaluations = 0;  // (subformula, state) pairs visited
};

// Standard K semantics; each distinct (subformula, state) pair is evaluated
// at most once, so total work is O(|f| * (|W| + |R|)).
bool model_check(const KripkeModel& m, int state, const Formula& f,
                 CheckStats* stats = nullptr);

}  // namespace modalk
