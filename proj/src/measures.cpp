#include "modalk/measures.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace modalk {

int modality_depth(const Formula& f) {
  return static_cast<int>(cached_modality_depth(f));
}

namespace {

enum class Dim { Diamond, Box };

int dimension_rec(const Formula& f, Dim which,
                  std::unordered_map<const void*, int>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  int out = 0;
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      out = 0;
      break;
    case Kind::Not:
      if (f.child().kind() != Kind::Var)
        throw std::invalid_argument(
            "dimension is only defined on NNF formulas; found ~ above a "
            "non-variable: " + print(f));
      out = 0;
      break;
    case Kind::And: {
      int l = dimension_rec(f.left(), which, memo);
      int r = dimension_rec(f.right(), which, memo);
      out = which == Dim::Diamond ? l + r : std::max(l, r);
      break;
    }
    case Kind::Or: {
      int l = dimension_rec(f.left(), which, memo);
      int r = dimension_rec(f.right(), which, memo);
      out = which == Dim::Diamond ? std::max(l, r) : l + r;
      break;
    }
    case Kind::Box:
      out = dimension_rec(f.child(), which, memo) + (which == Dim::Box ? 1 : 0);
      break;
    case Kind::Dia:
      out = dimension_rec(f.child(), which, memo) +
            (which == Dim::Diamond ? 1 : 0);
      break;
  }
  memo.emplace(f.id(), out);
  return out;
}

void depth1_rec(const Formula& f, std::vector<Formula>& out,
                std::unordered_set<Formula, FormulaHash>& seen) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Not:
      depth1_rec(f.child(), out, seen);
      return;
    case Kind::And:
    case Kind::Or:
      depth1_rec(f.left(), out, seen);
      depth1_rec(f.right(), out, seen);
      return;
    case Kind::Box:
    case Kind::Dia:
      if (seen.insert(f.child()).second) out.push_back(f.child());
      return;
  }
}

}  // namespace

int diamond_dimension(const Formula& f) {
  std::unordered_map<const void*, int> memo;
  return dimension_rec(f, Dim::Diamond, memo);
}

int box_dimension(const Formula& f) {
  std::unordered_map<const void*, int> memo;
  return dimension_rec(f, Dim::Box, memo);
}

std::vector<Formula> depth1_set(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  depth1_rec(f, out, seen);
  return out;
}

std::vector<std::vector<Formula>> level_sets(const Formula& f) {
  std::vector<std::vector<Formula>> levels;
  levels.push_back(depth1_set(f));
  int d = modality_depth(f);
  for (int i = 0; i < d; ++i) {
    std::vector<Formula> next;
    std::unordered_set<Formula, FormulaHash> seen;
    for (const Formula& psi : levels.back()) {
      for (const Formula& chi : depth1_set(psi)) {
        if (seen.insert(chi).second) next.push_back(chi);
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

std::pair<int, std::vector<int>> modal_width(const Formula& f) {
  auto levels = level_sets(f);
  int d = modality_depth(f);
  std::vector<int> widths;
  widths.reserve(d);
  for (int i = 0; i < d; ++i)
    widths.push_back(static_cast<int>(levels[i].size()));
  int mw = widths.empty() ? 0 : *std::max_element(widths.begin(), widths.end());
  return {mw, widths};
}

namespace {

Formula prop_rec(const Formula& f,
                 std::unordered_map<Formula, Formula, FormulaHash>& boxes,
                 std::vector<std::pair<std::string, Formula>>& order) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::Not:
      return Formula::negation(prop_rec(f.child(), boxes, order));
    case Kind::And:
      return Formula::conjunction(prop_rec(f.left(), boxes, order),
                                  prop_rec(f.right(), boxes, order));
    case Kind::Or:
      return Formula::disjunction(prop_rec(f.left(), boxes, order),
                                  prop_rec(f.right(), boxes, order));
    case Kind::Box: {
      Formula child = f.child();
      auto it = boxes.find(child);
      if (it != boxes.end()) return it->second;
      std::string name = "q" + std::to_string(order.size() + 1);
      Formula fresh = Formula::var(name);
      boxes.emplace(child, fresh);
      order.emplace_back(name, child);
      return fresh;
    }
    case Kind::Dia:
      throw std::invalid_argument(
          "prop_translate requires a diamond-free formula; apply "
          "desugar_diamonds first");
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PropResult prop_translate(const Formula& f) {
  PropResult res{Formula::top(), {}};
  std::unordered_map<Formula, Formula, FormulaHash> boxes;
  res.prop = prop_rec(f, boxes, res.fresh_map);
  return res;
}

BigInt type_bound(int v, int d, unsigned max_bits) {
  if (v < 0 || d < 0) throw std::invalid_argument("type_bound: negative input");
  if (static_cast<unsigned>(v) > max_bits)
    throw ResourceError("type_bound: exponent exceeds bit budget");
  BigInt val = BigInt(1) << v;
  for (int n = 0; n < d; ++n) {
    BigInt exp = val + v;
    if (exp > max_bits)
      throw ResourceError("type_bound: exponent exceeds bit budget (" +
                          std::to_string(max_bits) + " bits)");
    val = BigInt(1) << static_cast<unsigned>(exp);
  }
  return val;
}

BigInt tower(int h, unsigned max_bits) {
  if (h < 0) throw std::invalid_argument("tower: negative input");
  BigInt val = 0;
  for (int i = 0; i < h; ++i) {
    if (val > max_bits)
      throw ResourceError("tower: exponent exceeds bit budget (" +
                          std::to_string(max_bits) + " bits)");
    val = BigInt(1) << static_cast<unsigned>(val);
  }
  return val;
}

std::string MeasureReport::to_json() const {
  nlohmann::ordered_json j;
  j["v"] = v;
  j["md"] = md;
  j["dd"] = dd;
  j["dbox"] = dbox;
  j["mw"] = mw;
  j["widths"] = widths;
  return j.dump();
}

MeasureReport measure_all(const Formula& f) {
  MeasureReport r;
  r.v = static_cast<int>(variables(f).size());
  r.md = modality_depth(f);
  Formula nnf = to_nnf(f);
  r.dd = diamond_dimension(nnf);
  r.dbox = box_dimension(nnf);
  auto [mw, widths] = modal_width(f);
  r.mw = mw;
  r.widths = std::move(widths);
  return r;
}

}  // namespace modalk
