#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "modalk/formula.hpp"

namespace modalk {

// Seeded random formula generator.  Node weights: Var .3, Not .15, And .15,
// Or .15, Box .125, Dia .125; at the depth cap a leaf is forced.  Variables
// are drawn uniformly from p1..p_num_vars (p, q, r for num_vars <= 3).
Formula random_formula(std::mt19937_64& rng, int num_vars, int max_depth);

std::vector<std::string> generator_variable_names(int num_vars);

// All formulas over the given variables (plus true/false when
// include_constants) with tree size <= max_size and modality depth <=
// md_max, in a fixed deterministic order.
std::vector<Formula> enumerate_formulas(int num_vars, int max_size, int md_max,
                                        bool include_constants = true);

}  // namespace modalk
