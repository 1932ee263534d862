#include "modalk/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "modalk/measures.hpp"

namespace modalk {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string SatResult::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  if (witness) {
    nlohmann::ordered_json w = nlohmann::ordered_json::parse(
        witness->model.to_json());
    w["root"] = witness->root;
    j["witness"] = std::move(w);
  }
  nlohmann::ordered_json s;
  s["candidates"] = stats.candidates;
  s["table_cells"] = stats.table_cells;
  s["complete"] = stats.complete;
  s["seconds"] = stats.seconds;
  if (!stats.note.empty()) s["note"] = stats.note;
  j["stats"] = std::move(s);
  return j.dump();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

// Distinct subformula nodes, children before parents.
std::vector<Formula> subformula_order(const Formula& f) {
  std::vector<Formula> order;
  std::unordered_set<const void*> visited;
  std::vector<std::pair<Formula, bool>> dfs{{f, false}};
  while (!dfs.empty()) {
    auto [cur, expanded] = dfs.back();
    dfs.pop_back();
    if (expanded) {
      order.push_back(cur);
      continue;
    }
    if (!visited.insert(cur.id()).second) continue;
    dfs.push_back({cur, true});
    switch (cur.kind()) {
      case Kind::Not:
      case Kind::Box:
      case Kind::Dia:
        dfs.push_back({cur.child(), false});
        break;
      case Kind::And:
      case Kind::Or:
        dfs.push_back({cur.left(), false});
        dfs.push_back({cur.right(), false});
        break;
      default:
        break;
    }
  }
  return order;
}

// Flat node table for tight evaluation loops.
struct FlatNode {
  Kind kind;
  int a = -1;
  int b = -1;
  int var = -1;  // index into the sorted variable list
};

struct FlatFormula {
  std::vector<FlatNode> nodes;  // children-first; nodes.back() is the root
  std::vector<std::string> vars;
  int root() const { return static_cast<int>(nodes.size()) - 1; }
};

FlatFormula flatten(const Formula& f) {
  FlatFormula out;
  std::set<std::string> vs = variables(f);
  out.vars.assign(vs.begin(), vs.end());
  std::unordered_map<std::string, int> var_idx;
  for (std::size_t i = 0; i < out.vars.size(); ++i)
    var_idx[out.vars[i]] = static_cast<int>(i);
  auto order = subformula_order(f);
  std::unordered_map<const void*, int> idx;
  for (const Formula& g : order) {
    FlatNode n;
    n.kind = g.kind();
    switch (g.kind()) {
      case Kind::Var:
        n.var = var_idx.at(g.var_name());
        break;
      case Kind::Not:
      case Kind::Box:
      case Kind::Dia:
        n.a = idx.at(g.child().id());
        break;
      case Kind::And:
      case Kind::Or:
        n.a = idx.at(g.left().id());
        n.b = idx.at(g.right().id());
        break;
      default:
        break;
    }
    idx[g.id()] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(n);
  }
  return out;
}

void require_witness_checks(const KripkeModel& m, int root, const Formula& f) {
  if (!model_check(m, root, f))
    throw std::logic_error("internal error: produced witness fails model_check");
}

SatResult unknown_result(SolveStats stats, std::string note) {
  SatResult r;
  r.verdict = Verdict::Unknown;
  r.stats = std::move(stats);
  r.stats.note = std::move(note);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bounded brute force
// ---------------------------------------------------------------------------

SatResult sat_brute(const Formula& f, int max_states,
                    const SolverOptions& opts) {
  if (max_states < 1)
    throw std::invalid_argument("sat_brute: max_states must be >= 1");
  Timer timer;
  SolveStats stats;
  FlatFormula ff = flatten(f);
  int v = static_cast<int>(ff.vars.size());
  if (max_states > 6 || v * max_states > 48)
    return unknown_result(stats, "state/variable budget out of range");

  std::vector<std::uint32_t> truth(ff.nodes.size());
  for (int n = 1; n <= max_states; ++n) {
    std::uint32_t full = (1u << n) - 1;
    std::uint64_t rel_count = 1ull << (n * n);
    std::uint64_t val_count = 1ull << (v * n);
    std::vector<std::uint32_t> succ(n);
    for (std::uint64_t rel = 0; rel < rel_count; ++rel) {
      for (int s = 0; s < n; ++s)
        succ[s] = static_cast<std::uint32_t>((rel >> (s * n)) & full);
      for (std::uint64_t val = 0; val < val_count; ++val) {
        if (++stats.candidates > opts.max_candidates) {
          stats.seconds = timer.elapsed();
          return unknown_result(stats, "candidate budget exhausted");
        }
        if ((stats.candidates & 0xfff) == 0 &&
            timer.elapsed() > opts.wall_seconds) {
          stats.seconds = timer.elapsed();
          return unknown_result(stats, "wall-clock budget exhausted");
        }
        for (std::size_t i = 0; i < ff.nodes.size(); ++i) {
          const FlatNode& nd = ff.nodes[i];
          std::uint32_t row = 0;
          switch (nd.kind) {
            case Kind::Var:
              row = static_cast<std::uint32_t>((val >> (nd.var * n)) & full);
              break;
            case Kind::Top: row = full; break;
            case Kind::Bot: row = 0; break;
            case Kind::Not: row = ~truth[nd.a] & full; break;
            case Kind::And: row = truth[nd.a] & truth[nd.b]; break;
            case Kind::Or: row = truth[nd.a] | truth[nd.b]; break;
            case Kind::Box:
              for (int s = 0; s < n; ++s)
                if ((succ[s] & ~truth[nd.a] & full) == 0) row |= 1u << s;
              break;
            case Kind::Dia:
              for (int s = 0; s < n; ++s)
                if (succ[s] & truth[nd.a]) row |= 1u << s;
              break;
          }
          truth[i] = row;
        }
        if (truth[ff.root()] & 1u) {
          // State 0 is the root; materialize the model.
          std::vector<std::pair<int, int>> edges;
          for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
              if (rel >> (s * n + t) & 1) edges.emplace_back(s, t);
          std::vector<KripkeModel::Valuation> vals(n);
          for (int k = 0; k < v; ++k)
            for (int s = 0; s < n; ++s)
              if (val >> (k * n + s) & 1) vals[s][ff.vars[k]] = true;
          SatResult r;
          r.verdict = Verdict::Sat;
          r.witness = Witness{KripkeModel(n, std::move(edges), std::move(vals)),
                              0};
          require_witness_checks(r.witness->model, 0, f);
          stats.seconds = timer.elapsed();
          r.stats = stats;
          return r;
        }
      }
    }
  }
  stats.seconds = timer.elapsed();
  SatResult r;
  if (opts.brute_complete_bound > 0 &&
      max_states >= opts.brute_complete_bound) {
    r.verdict = Verdict::Unsat;
    stats.complete = true;
  } else {
    r.verdict = Verdict::Unknown;
    stats.note = "exhausted without witness; not a refutation";
  }
  r.stats = stats;
  return r;
}

// ---------------------------------------------------------------------------
// Modality-depth layered construction
// ---------------------------------------------------------------------------

SatResult sat_depth(const Formula& f, const SolverOptions& opts) {
  Timer timer;
  SolveStats stats;
  FlatFormula ff = flatten(f);
  int v = static_cast<int>(ff.vars.size());
  int d = modality_depth(f);
  int m = static_cast<int>(ff.nodes.size());

  if (v > 20) return unknown_result(stats, "variable budget out of range");

  // Level sizes: 2^v realizable types at level 0, then one state per
  // (valuation, successor subset) pair over the previous level.
  std::vector<std::uint64_t> level_size;
  std::uint64_t total_states = 0;
  for (int i = 0; i < d; ++i) {
    std::uint64_t exponent =
        (i == 0) ? static_cast<std::uint64_t>(v) : level_size[i - 1] + v;
    if (exponent > 26) {
      stats.seconds = timer.elapsed();
      return unknown_result(stats, "layered model exceeds state budget");
    }
    level_size.push_back(1ull << exponent);
    total_states += level_size.back();
    if (total_states > opts.max_model_states) {
      stats.seconds = timer.elapsed();
      return unknown_result(stats, "layered model exceeds state budget");
    }
  }
  std::uint64_t prev = d == 0 ? 0 : level_size[d - 1];
  if (prev + v > 26 || (1ull << (prev + v)) > opts.max_candidates) {
    stats.seconds = timer.elapsed();
    return unknown_result(stats, "root candidate budget exhausted");
  }
  if (total_states * static_cast<std::uint64_t>(m) > (1ull << 27)) {
    stats.seconds = timer.elapsed();
    return unknown_result(stats, "layered model exceeds state budget");
  }

  // Global ids: level 0 first.  State index within a level encodes
  // (valuation, subset): id = val * 2^{prev} + subset.
  std::vector<std::uint64_t> level_offset(d, 0);
  for (int i = 1; i < d; ++i)
    level_offset[i] = level_offset[i - 1] + level_size[i - 1];

  auto state_val = [&](int level, std::uint64_t local) -> std::uint64_t {
    if (level == 0) return local;
    return local >> level_size[level - 1];
  };
  auto state_subset = [&](int level, std::uint64_t local) -> std::uint64_t {
    if (level == 0) return 0;
    return local & ((std::uint64_t{1} << level_size[level - 1]) - 1);
  };

  // truth[sf][global state]
  std::vector<std::vector<char>> truth(m,
                                       std::vector<char>(total_states, 0));
  for (int level = 0; level < d; ++level) {
    std::uint64_t off = level_offset[level];
    std::uint64_t prev_off = level == 0 ? 0 : level_offset[level - 1];
    for (std::uint64_t local = 0; local < level_size[level]; ++local) {
      std::uint64_t g = off + local;
      std::uint64_t val = state_val(level, local);
      std::uint64_t subset = state_subset(level, local);
      for (int i = 0; i < m; ++i) {
        const FlatNode& nd = ff.nodes[i];
        char t = 0;
        switch (nd.kind) {
          case Kind::Var: t = (val >> nd.var) & 1; break;
          case Kind::Top: t = 1; break;
          case Kind::Bot: t = 0; break;
          case Kind::Not: t = !truth[nd.a][g]; break;
          case Kind::And: t = truth[nd.a][g] && truth[nd.b][g]; break;
          case Kind::Or: t = truth[nd.a][g] || truth[nd.b][g]; break;
          case Kind::Box: {
            t = 1;
            for (std::uint64_t b = subset; b; b &= b - 1) {
              std::uint64_t succ = prev_off + std::countr_zero(b);
              if (!truth[nd.a][succ]) { t = 0; break; }
            }
            break;
          }
          case Kind::Dia: {
            t = 0;
            for (std::uint64_t b = subset; b; b &= b - 1) {
              std::uint64_t succ = prev_off + std::countr_zero(b);
              if (truth[nd.a][succ]) { t = 1; break; }
            }
            break;
          }
        }
        truth[i][g] = t;
      }
    }
  }

  // Root candidates: (valuation, subset of top-level states).
  std::uint64_t top_off = d == 0 ? 0 : level_offset[d - 1];
  std::vector<char> root_truth(m, 0);
  for (std::uint64_t val = 0; val < (1ull << v); ++val) {
    for (std::uint64_t subset = 0; subset < (1ull << prev); ++subset) {
      ++stats.candidates;
      for (int i = 0; i < m; ++i) {
        const FlatNode& nd = ff.nodes[i];
        char t = 0;
        switch (nd.kind) {
          case Kind::Var: t = (val >> nd.var) & 1; break;
          case Kind::Top: t = 1; break;
          case Kind::Bot: t = 0; break;
          case Kind::Not: t = !root_truth[nd.a]; break;
          case Kind::And: t = root_truth[nd.a] && root_truth[nd.b]; break;
          case Kind::Or: t = root_truth[nd.a] || root_truth[nd.b]; break;
          case Kind::Box: {
            t = 1;
            for (std::uint64_t b = subset; b; b &= b - 1)
              if (!truth[nd.a][top_off + std::countr_zero(b)]) { t = 0; break; }
            break;
          }
          case Kind::Dia: {
            t = 0;
            for (std::uint64_t b = subset; b; b &= b - 1)
              if (truth[nd.a][top_off + std::countr_zero(b)]) { t = 1; break; }
            break;
          }
        }
        root_truth[i] = t;
      }
      if (!root_truth[ff.root()]) continue;

      // Build the reachable submodel under the chosen root.
      struct Pending { int level; std::uint64_t local; };
      std::unordered_map<std::uint64_t, int> global_to_new;
      std::vector<Pending> bfs;
      std::vector<std::pair<int, int>> edges;
      std::vector<KripkeModel::Valuation> vals;
      vals.emplace_back();
      for (int k = 0; k < v; ++k)
        if (val >> k & 1) vals[0][ff.vars[k]] = true;
      auto intern = [&](int level, std::uint64_t local) {
        std::uint64_t g = level_offset[level] + local;
        auto it = global_to_new.find(g);
        if (it != global_to_new.end()) return it->second;
        int id = static_cast<int>(vals.size());
        global_to_new.emplace(g, id);
        KripkeModel::Valuation valn;
        std::uint64_t sval = state_val(level, local);
        for (int k = 0; k < v; ++k)
          if (sval >> k & 1) valn[ff.vars[k]] = true;
        vals.push_back(std::move(valn));
        bfs.push_back({level, local});
        return id;
      };
      if (d > 0) {
        for (std::uint64_t b = subset; b; b &= b - 1)
          edges.emplace_back(0, intern(d - 1, std::countr_zero(b)));
      }
      for (std::size_t q = 0; q < bfs.size(); ++q) {
        auto [level, local] = bfs[q];
        int from = global_to_new.at(level_offset[level] + local);
        std::uint64_t sub = state_subset(level, local);
        for (std::uint64_t b = sub; b; b &= b - 1)
          edges.emplace_back(from, intern(level - 1, std::countr_zero(b)));
      }
      SatResult r;
      r.verdict = Verdict::Sat;
      int num_states = static_cast<int>(vals.size());
      r.witness =
          Witness{KripkeModel(num_states, std::move(edges), std::move(vals)), 0};
      require_witness_checks(r.witness->model, 0, f);
      stats.complete = true;
      stats.seconds = timer.elapsed();
      r.stats = stats;
      return r;
    }
  }
  SatResult r;
  r.verdict = Verdict::Unsat;
  stats.complete = true;
  stats.seconds = timer.elapsed();
  r.stats = stats;
  return r;
}

// ---------------------------------------------------------------------------
// Diamond-dimension skeleton-tree enumeration
// ---------------------------------------------------------------------------

namespace {

struct TreeConfig {
  std::string key;             // truth of every subformula at this node
  std::uint32_t val;           // valuation bits
  std::vector<int> children;   // indices into the previous level
};

std::string eval_config(const FlatFormula& ff, std::uint32_t val,
                        const std::vector<int>& children,
                        const std::vector<TreeConfig>& prev) {
  std::string t(ff.nodes.size(), 0);
  for (std::size_t i = 0; i < ff.nodes.size(); ++i) {
    const FlatNode& nd = ff.nodes[i];
    char r = 0;
    switch (nd.kind) {
      case Kind::Var: r = (val >> nd.var) & 1; break;
      case Kind::Top: r = 1; break;
      case Kind::Bot: r = 0; break;
      case Kind::Not: r = !t[nd.a]; break;
      case Kind::And: r = t[nd.a] && t[nd.b]; break;
      case Kind::Or: r = t[nd.a] || t[nd.b]; break;
      case Kind::Box: {
        r = 1;
        for (int c : children)
          if (!prev[c].key[nd.a]) { r = 0; break; }
        break;
      }
      case Kind::Dia: {
        r = 0;
        for (int c : children)
          if (prev[c].key[nd.a]) { r = 1; break; }
        break;
      }
    }
    t[i] = r;
  }
  return t;
}

// Expands a configuration into explicit tree-model states.
int expand_config(const std::vector<std::vector<TreeConfig>>& levels,
                  int level, const TreeConfig& cfg,
                  const std::vector<std::string>& vars,
                  std::vector<std::pair<int, int>>& edges,
                  std::vector<KripkeModel::Valuation>& vals) {
  int id = static_cast<int>(vals.size());
  KripkeModel::Valuation valn;
  for (std::size_t k = 0; k < vars.size(); ++k)
    if (cfg.val >> k & 1) valn[vars[k]] = true;
  vals.push_back(std::move(valn));
  for (int c : cfg.children) {
    int child =
        expand_config(levels, level - 1, levels[level - 1][c], vars, edges, vals);
    edges.emplace_back(id, child);
  }
  return id;
}

}  // namespace

SatResult sat_diamond(const Formula& f, const SolverOptions& opts) {
  Timer timer;
  SolveStats stats;
  int k = diamond_dimension(f);  // also rejects non-NNF input
  FlatFormula ff = flatten(f);
  int v = static_cast<int>(ff.vars.size());
  if (v > 20) return unknown_result(stats, "variable budget out of range");
  std::uint32_t val_count = 1u << v;
  int root_sf = ff.root();

  std::vector<std::vector<TreeConfig>> levels(k + 1);

  // A node at distance k - level from the root may have up to `level`
  // children; duplicate sibling subtrees never change the root's truth, so
  // only sets of distinct child configurations are enumerated.
  for (int level = 0; level <= k; ++level) {
    std::unordered_map<std::string, int> dedup;
    const std::vector<TreeConfig> empty_prev;
    const std::vector<TreeConfig>& prev =
        level == 0 ? empty_prev : levels[level - 1];
    int pool = static_cast<int>(prev.size());
    int cap = std::min(level, pool);

    std::vector<int> combo;
    for (int size = 0; size <= cap; ++size) {
      combo.assign(size, 0);
      for (int i = 0; i < size; ++i) combo[i] = i;
      bool more = true;
      while (more) {
        if (++stats.candidates > opts.max_candidates ||
            ((stats.candidates & 0xfff) == 0 &&
             timer.elapsed() > opts.wall_seconds)) {
          stats.seconds = timer.elapsed();
          return unknown_result(stats, "enumeration budget exhausted");
        }
        for (std::uint32_t val = 0; val < val_count; ++val) {
          std::string key = eval_config(ff, val, combo, prev);
          if (level == k) {
            if (key[root_sf]) {
              TreeConfig root{key, val, combo};
              std::vector<std::pair<int, int>> edges;
              std::vector<KripkeModel::Valuation> vals;
              expand_config(levels, k, root, ff.vars, edges, vals);
              SatResult r;
              r.verdict = Verdict::Sat;
              int num_states = static_cast<int>(vals.size());
              r.witness = Witness{
                  KripkeModel(num_states, std::move(edges), std::move(vals)),
                  0};
              require_witness_checks(r.witness->model, 0, f);
              stats.complete = true;
              stats.seconds = timer.elapsed();
              r.stats = stats;
              return r;
            }
          } else if (!dedup.count(key)) {
            dedup.emplace(key, static_cast<int>(levels[level].size()));
            levels[level].push_back(TreeConfig{key, val, combo});
          }
        }
        // next lexicographic combination of `size` indices out of `pool`
        more = false;
        for (int i = size - 1; i >= 0; --i) {
          if (combo[i] < pool - (size - i)) {
            ++combo[i];
            for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
            more = true;
            break;
          }
        }
      }
    }
  }

  SatResult r;
  r.verdict = Verdict::Unsat;
  stats.complete = true;
  stats.seconds = timer.elapsed();
  r.stats = stats;
  return r;
}

// ---------------------------------------------------------------------------
// Modal-width dynamic programming
// ---------------------------------------------------------------------------

namespace {

struct WidthLevel {
  std::vector<Formula> elems;
  std::unordered_map<Formula, int, FormulaHash> index;
  // member_letter[j] >= 0: element j is a propositional letter with that
  // index into the variable list; membership in a table entry is then read
  // off the letter mask instead of the level mask.
  std::vector<int> member_letter;
};

// Evaluates a diamond-free formula against a letter mask and a mask of
// boxed-child truths taken from the next level down.
bool eval_prop(const Formula& g, std::uint32_t pmask, std::uint32_t qmask,
               const std::unordered_map<std::string, int>& var_idx,
               const WidthLevel& next) {
  switch (g.kind()) {
    case Kind::Var: return pmask >> var_idx.at(g.var_name()) & 1;
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Not: return !eval_prop(g.child(), pmask, qmask, var_idx, next);
    case Kind::And:
      return eval_prop(g.left(), pmask, qmask, var_idx, next) &&
             eval_prop(g.right(), pmask, qmask, var_idx, next);
    case Kind::Or:
      return eval_prop(g.left(), pmask, qmask, var_idx, next) ||
             eval_prop(g.right(), pmask, qmask, var_idx, next);
    case Kind::Box: return qmask >> next.index.at(g.child()) & 1;
    case Kind::Dia:
      throw std::logic_error("diamond survived desugaring");
  }
  return false;
}

struct WidthDecision {
  std::uint32_t qmask = 0;
  // chosen row-(i+1) entry per falsified boxed child, in element order
  std::vector<std::pair<int, std::uint32_t>> successors;  // (elem, entry idx)
};

}  // namespace

SatResult sat_width(const Formula& f, const SolverOptions& opts) {
  Timer timer;
  SolveStats stats;
  Formula fd = desugar_diamonds(f);
  std::set<std::string> vs = variables(fd);
  std::vector<std::string> vars(vs.begin(), vs.end());
  int v = static_cast<int>(vars.size());
  if (v > 16) return unknown_result(stats, "variable budget out of range");
  std::unordered_map<std::string, int> var_idx;
  for (int i = 0; i < v; ++i) var_idx[vars[i]] = i;

  auto raw_levels = level_sets(fd);
  int d = modality_depth(fd);
  std::vector<WidthLevel> levels(d + 1);
  for (int i = 0; i <= d; ++i) {
    levels[i].elems = raw_levels[i];
    for (std::size_t j = 0; j < levels[i].elems.size(); ++j) {
      const Formula& e = levels[i].elems[j];
      levels[i].index.emplace(e, static_cast<int>(j));
      int letter = -1;
      if (e.kind() == Kind::Var) letter = var_idx.at(e.var_name());
      levels[i].member_letter.push_back(letter);
    }
    if (levels[i].elems.size() > 20)
      return unknown_result(stats, "level width exceeds budget");
  }

  std::uint64_t cells = 0;
  for (int i = 0; i <= d; ++i) {
    cells += 1ull << (v + levels[i].elems.size());
    if (cells > opts.max_table_cells)
      return unknown_result(stats, "table budget exhausted");
  }
  stats.table_cells = cells;

  // Membership of element j of level i+1 in a row-(i+1) entry.
  auto member_mask = [&](int i1, std::uint32_t pmask, std::uint32_t smask) {
    std::uint32_t m = 0;
    const WidthLevel& lv = levels[i1];
    for (std::size_t j = 0; j < lv.elems.size(); ++j) {
      bool in = lv.member_letter[j] >= 0 ? (pmask >> lv.member_letter[j] & 1)
                                         : (smask >> j & 1);
      if (in) m |= 1u << j;
    }
    return m;
  };

  // rows[i]: truth of "some state realizes exactly (P', S')".
  std::vector<std::vector<char>> rows(d + 1);
  std::vector<std::vector<WidthDecision>> decisions(d + 1);
  rows[d].assign(1ull << v, 1);  // bottom level: any valuation, no successors
  if (opts.width_witness) decisions[d].resize(1ull << v);

  // Per-row cache of true entries with their membership masks.
  struct TrueEntry { std::uint32_t idx; std::uint32_t members; };
  auto collect_true = [&](int i1) {
    std::vector<TrueEntry> out;
    int w1 = static_cast<int>(levels[i1].elems.size());
    for (std::uint32_t e = 0; e < rows[i1].size(); ++e) {
      if (!rows[i1][e]) continue;
      std::uint32_t pmask = e >> w1;
      std::uint32_t smask = e & ((1u << w1) - 1);
      out.push_back({e, member_mask(i1, pmask, smask)});
    }
    return out;
  };

  // Decides one table entry (or the top-level formula when `top` is set):
  // searches the 2^|Q| assignments of the boxed children from `next` for one
  // that matches the required truth pattern and whose demands can be served
  // by entries of the row below.
  auto try_assignments = [&](const WidthLevel* here, const WidthLevel& next,
                             std::uint32_t pmask, std::uint32_t smask,
                             const Formula* top,
                             const std::vector<TrueEntry>& below,
                             WidthDecision* dec) -> bool {
    int w1 = static_cast<int>(next.elems.size());
    int w0 = here ? static_cast<int>(here->elems.size()) : 0;
    for (std::uint32_t qmask = 0; qmask < (1u << w1); ++qmask) {
      if (++stats.candidates > opts.max_candidates ||
          ((stats.candidates & 0xfff) == 0 &&
           timer.elapsed() > opts.wall_seconds))
        throw ResourceError("width DP budget exhausted");
      bool match;
      if (top) {
        match = eval_prop(*top, pmask, qmask, var_idx, next);
      } else {
        match = true;
        for (int j = 0; j < w0 && match; ++j)
          match = eval_prop(here->elems[j], pmask, qmask, var_idx, next) ==
                  ((smask >> j & 1) != 0);
      }
      if (!match) continue;
      // qmask bit set: the boxed child must hold in every successor;
      // cleared: it must fail in at least one successor.
      bool ok = true;
      std::vector<std::pair<int, std::uint32_t>> chosen;
      for (int t = 0; t < w1 && ok; ++t) {
        if (qmask >> t & 1) continue;
        bool found = false;
        for (const TrueEntry& e : below) {
          if ((qmask & ~e.members) == 0 && !(e.members >> t & 1)) {
            found = true;
            if (dec) chosen.emplace_back(t, e.idx);
            break;
          }
        }
        ok = found;
      }
      if (ok) {
        if (dec) {
          dec->qmask = qmask;
          dec->successors = std::move(chosen);
        }
        return true;
      }
    }
    return false;
  };

  try {
    for (int i = d - 1; i >= 0; --i) {
      int w0 = static_cast<int>(levels[i].elems.size());
      rows[i].assign(1ull << (v + w0), 0);
      if (opts.width_witness) decisions[i].resize(1ull << (v + w0));
      auto below = collect_true(i + 1);
      for (std::uint32_t e = 0; e < rows[i].size(); ++e) {
        std::uint32_t pmask = e >> w0;
        std::uint32_t smask = e & ((1u << w0) - 1);
        WidthDecision dec;
        if (try_assignments(&levels[i], levels[i + 1], pmask, smask, nullptr,
                            below, opts.width_witness ? &dec : nullptr)) {
          rows[i][e] = 1;
          if (opts.width_witness) decisions[i][e] = std::move(dec);
        }
      }
    }

    // Top level: the formula itself over every letter assignment.
    auto below = collect_true(0);
    for (std::uint32_t pmask = 0; pmask < (1u << v); ++pmask) {
      WidthDecision dec;
      if (!try_assignments(nullptr, levels[0], pmask, 0, &fd, below,
                           opts.width_witness ? &dec : nullptr))
        continue;
      SatResult r;
      r.verdict = Verdict::Sat;
      if (opts.width_witness) {
        std::vector<std::pair<int, int>> edges;
        std::vector<KripkeModel::Valuation> vals;
        // Recursive expansion of one supporting entry per demand.
        auto expand = [&](auto&& self, int level, std::uint32_t pm,
                          const WidthDecision& dcn) -> int {
          int id = static_cast<int>(vals.size());
          KripkeModel::Valuation valn;
          for (int k2 = 0; k2 < v; ++k2)
            if (pm >> k2 & 1) valn[vars[k2]] = true;
          vals.push_back(std::move(valn));
          for (const auto& [elem, entry] : dcn.successors) {
            (void)elem;
            int w1 = static_cast<int>(levels[level + 1].elems.size());
            std::uint32_t cpm = entry >> w1;
            int child = self(self, level + 1, cpm, decisions[level + 1][entry]);
            edges.emplace_back(id, child);
          }
          return id;
        };
        expand(expand, -1, pmask, dec);
        int num_states = static_cast<int>(vals.size());
        r.witness = Witness{
            KripkeModel(num_states, std::move(edges), std::move(vals)), 0};
        require_witness_checks(r.witness->model, 0, f);
      }
      stats.complete = true;
      stats.seconds = timer.elapsed();
      r.stats = stats;
      return r;
    }
  } catch (const ResourceError& e) {
    stats.seconds = timer.elapsed();
    return unknown_result(stats, e.what());
  }

  SatResult r;
  r.verdict = Verdict::Unsat;
  stats.complete = true;
  stats.seconds = timer.elapsed();
  r.stats = stats;
  return r;
}

// ---------------------------------------------------------------------------
// Dispatch and validity
// ---------------------------------------------------------------------------

SatResult solve(const Formula& f, Algo algo, const SolverOptions& opts) {
  switch (algo) {
    case Algo::Width: return sat_width(f, opts);
    case Algo::Depth: return sat_depth(f, opts);
    case Algo::Diamond: return sat_diamond(to_nnf(f), opts);
    case Algo::Brute: {
      SolverOptions o = opts;
      // A propositional formula is satisfiable iff it holds at one state, so
      // exhausting 1-state models is a complete search.
      if (o.brute_complete_bound == 0 && modality_depth(f) == 0)
        o.brute_complete_bound = 1;
      return sat_brute(f, o.brute_max_states, o);
    }
  }
  throw std::logic_error("unknown algorithm");
}

ValidResult valid(const Formula& f, Algo algo, const SolverOptions& opts) {
  SatResult neg = solve(Formula::negation(f), algo, opts);
  ValidResult r;
  r.stats = neg.stats;
  switch (neg.verdict) {
    case Verdict::Unsat: r.verdict = ValidResult::Verdict::Valid; break;
    case Verdict::Sat:
      r.verdict = ValidResult::Verdict::NotValid;
      r.counterexample = neg.witness;
      break;
    case Verdict::Unknown: r.verdict = ValidResult::Verdict::Unknown; break;
  }
  return r;
}

}  // namespace modalk
