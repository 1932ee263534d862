#include "modalk/generator.hpp"

#include "modalk/measures.hpp"

namespace modalk {

std::vector<std::string> generator_variable_names(int num_vars) {
  std::vector<std::string> names;
  if (num_vars <= 3) {
    const char* small[] = {"p", "q", "r"};
    for (int i = 0; i < num_vars; ++i) names.push_back(small[i]);
  } else {
    for (int i = 1; i <= num_vars; ++i)
      names.push_back("p" + std::to_string(i));
  }
  return names;
}

namespace {

Formula random_rec(std::mt19937_64& rng,
                   const std::vector<std::string>& names, int depth_left) {
  // Integer thresholds out of 1000 keep the stream platform-independent.
  std::uint64_t roll = rng() % 1000;
  if (depth_left == 0 || roll < 300) {
    return Formula::var(names[rng() % names.size()]);
  }
  if (roll < 450)
    return Formula::negation(random_rec(rng, names, depth_left - 1));
  if (roll < 600)
    return Formula::conjunction(random_rec(rng, names, depth_left - 1),
                                random_rec(rng, names, depth_left - 1));
  if (roll < 750)
    return Formula::disjunction(random_rec(rng, names, depth_left - 1),
                                random_rec(rng, names, depth_left - 1));
  if (roll < 875) return Formula::box(random_rec(rng, names, depth_left - 1));
  return Formula::dia(random_rec(rng, names, depth_left - 1));
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, int num_vars, int max_depth) {
  if (num_vars < 1) throw std::invalid_argument("need at least one variable");
  auto names = generator_variable_names(num_vars);
  return random_rec(rng, names, max_depth);
}

std::vector<Formula> enumerate_formulas(int num_vars, int max_size, int md_max,
                                        bool include_constants) {
  auto names = generator_variable_names(num_vars);
  // by_size[s]: all formulas of tree size s (md-capped; md only grows
  // upward, so pruning here loses nothing).
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  std::vector<Formula> out;
  auto emit = [&](int size, Formula f) {
    if (modality_depth(f) > md_max) return;
    by_size[size].push_back(f);
    out.push_back(std::move(f));
  };
  for (const auto& n : names) emit(1, Formula::var(n));
  if (include_constants) {
    emit(1, Formula::top());
    emit(1, Formula::bot());
  }
  for (int size = 2; size <= max_size; ++size) {
    for (const Formula& c : by_size[size - 1]) {
      emit(size, Formula::negation(c));
      emit(size, Formula::box(c));
      emit(size, Formula::dia(c));
    }
    for (int ls = 1; ls <= size - 2; ++ls) {
      for (const Formula& l : by_size[ls]) {
        for (const Formula& r : by_size[size - 1 - ls]) {
          emit(size, Formula::conjunction(l, r));
          emit(size, Formula::disjunction(l, r));
        }
      }
    }
  }
  return out;
}

}  // namespace modalk
