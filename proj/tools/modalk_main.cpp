#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modalk/formula.hpp"
#include "modalk/generator.hpp"
#include "modalk/kripke.hpp"
#include "modalk/measures.hpp"
#include "modalk/reduction.hpp"
#include "modalk/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

modalk::Formula input_formula(const std::string& expr,
                              const std::string& file) {
  if (!file.empty()) return modalk::parse(read_file(file));
  return modalk::parse(expr);
}

modalk::Algo parse_algo(const std::string& name) {
  if (name == "width") return modalk::Algo::Width;
  if (name == "depth") return modalk::Algo::Depth;
  if (name == "diamond") return modalk::Algo::Diamond;
  if (name == "brute") return modalk::Algo::Brute;
  throw std::runtime_error("unknown algorithm '" + name + "'");
}

int run_measure(const std::string& expr, const std::string& file) {
  modalk::Formula f = input_formula(expr, file);
  std::cout << modalk::measure_all(f).to_json() << "\n";
  return kExitOk;
}

int run_solve(const std::string& expr, const std::string& file,
              const std::string& algo, const modalk::SolverOptions& opts,
              const std::string& out) {
  modalk::Formula f = input_formula(expr, file);
  modalk::SatResult res = modalk::solve(f, parse_algo(algo), opts);
  std::cout << modalk::to_string(res.verdict) << "\n";
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << res.to_json() << "\n";
  }
  switch (res.verdict) {
    case modalk::Verdict::Sat: return kExitOk;
    case modalk::Verdict::Unsat: return kExitUnsat;
    case modalk::Verdict::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int run_check(const std::string& model_path, int root,
              const std::string& expr, const std::string& file) {
  modalk::KripkeModel m = modalk::KripkeModel::from_json(read_file(model_path));
  modalk::Formula f = input_formula(expr, file);
  bool ok = modalk::model_check(m, root, f);
  std::cout << (ok ? "true" : "false") << "\n";
  return ok ? kExitOk : kExitUnsat;
}

int run_reduce(const std::string& dimacs_path, bool want_witness,
               const std::string& out) {
  modalk::CnfInstance cnf = modalk::parse_dimacs(read_file(dimacs_path));
  modalk::Formula fm = modalk::encode(cnf);
  modalk::MeasureReport report = modalk::measure_all(fm);

  int h = 0;
  while (modalk::tower(h) < cnf.num_vars) ++h;

  nlohmann::ordered_json j;
  j["formula"] = modalk::print(fm);
  j["measures"] = nlohmann::ordered_json::parse(report.to_json());
  j["certificate"] = {{"n", cnf.num_vars},
                      {"h", h},
                      {"bound", 4 + h},
                      {"md", report.md}};
  if (want_witness) {
    auto assignment = modalk::brute_prop(cnf);
    if (!assignment) {
      std::cout << j.dump() << "\n";
      std::cout << "no satisfying assignment; witness skipped\n";
      return kExitOk;
    }
    modalk::ReductionWitness w = modalk::witness_model(cnf, *assignment);
    if (!modalk::model_check(w.model, w.root, fm))
      throw std::logic_error("internal error: reduction witness fails check");
    nlohmann::ordered_json wj = nlohmann::ordered_json::parse(w.model.to_json());
    wj["root"] = w.root;
    if (!out.empty()) {
      std::ofstream os(out, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + out);
      os << wj.dump() << "\n";
    } else {
      j["witness"] = std::move(wj);
    }
  }
  std::cout << j.dump() << "\n";
  return kExitOk;
}

struct CorpusTally {
  std::uint64_t formulas = 0;
  std::uint64_t sat = 0, unsat = 0, unknown = 0;
  std::uint64_t skipped_depth = 0, skipped_diamond = 0, skipped_width = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t duality_violations = 0;
  std::uint64_t width_violations = 0;
};

void corpus_one(const modalk::Formula& f, const modalk::SolverOptions& opts,
                int dd_max, CorpusTally& tally, std::ostream& outs) {
  ++tally.formulas;

  // Measure invariants first: dimension duality and width vanishing.
  modalk::Formula nnf = modalk::to_nnf(f);
  modalk::Formula nnf_neg = modalk::to_nnf(modalk::Formula::negation(f));
  if (modalk::diamond_dimension(nnf) != modalk::box_dimension(nnf_neg)) {
    ++tally.duality_violations;
    outs << "DUALITY " << modalk::print(f) << "\n";
  }
  int md = modalk::modality_depth(f);
  auto levels = modalk::level_sets(f);
  for (std::size_t i = md; i < levels.size(); ++i) {
    if (!levels[i].empty()) {
      ++tally.width_violations;
      outs << "WIDTH " << modalk::print(f) << "\n";
      break;
    }
  }

  int v = static_cast<int>(modalk::variables(f).size());
  auto [mw, widths] = modalk::modal_width(f);
  int dd = modalk::diamond_dimension(nnf);

  std::optional<modalk::Verdict> definite;
  bool disagreed = false;
  auto merge = [&](const modalk::SatResult& r, const char* name) {
    if (r.verdict == modalk::Verdict::Unknown) return;
    if (definite && *definite != r.verdict) {
      disagreed = true;
      outs << "DISAGREE " << name << " " << modalk::print(f) << "\n";
    }
    definite = r.verdict;
  };

  bool depth_ok = (v <= 1 && md <= 2) || (v == 0 && md <= 3);
  if (depth_ok)
    merge(modalk::sat_depth(f, opts), "depth");
  else
    ++tally.skipped_depth;

  if (2 * v + 3 * mw <= 40)
    merge(modalk::sat_width(f, opts), "width");
  else
    ++tally.skipped_width;

  if (dd <= dd_max)
    merge(modalk::sat_diamond(nnf, opts), "diamond");
  else
    ++tally.skipped_diamond;

  modalk::SatResult brute =
      modalk::sat_brute(f, opts.brute_max_states, opts);
  if (brute.verdict == modalk::Verdict::Sat && definite &&
      *definite == modalk::Verdict::Unsat) {
    disagreed = true;
    outs << "DISAGREE brute " << modalk::print(f) << "\n";
  }

  if (disagreed) ++tally.disagreements;
  if (definite == modalk::Verdict::Sat || (!definite && brute.verdict == modalk::Verdict::Sat))
    ++tally.sat;
  else if (definite == modalk::Verdict::Unsat)
    ++tally.unsat;
  else
    ++tally.unknown;
}

int run_corpus(int vars, int md_max, int size_max, std::uint64_t count,
               std::uint64_t seed, int depth_cap, int dd_max,
               const modalk::SolverOptions& opts) {
  CorpusTally tally;
  std::ostringstream outs;
  if (count == 0) {
    for (const modalk::Formula& f :
         modalk::enumerate_formulas(vars, size_max, md_max))
      corpus_one(f, opts, dd_max, tally, outs);
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < count; ++i)
      corpus_one(modalk::random_formula(rng, vars, depth_cap), opts, dd_max,
                 tally, outs);
  }
  std::cout << "corpus v=" << vars << " md_max=" << md_max
            << " size_max=" << size_max << " count=" << count
            << " seed=" << seed << "\n";
  std::cout << outs.str();
  std::cout << "formulas=" << tally.formulas << "\n"
            << "sat=" << tally.sat << " unsat=" << tally.unsat
            << " unknown=" << tally.unknown << "\n"
            << "skipped depth=" << tally.skipped_depth
            << " diamond=" << tally.skipped_diamond
            << " width=" << tally.skipped_width << "\n"
            << "disagreements=" << tally.disagreements << "\n"
            << "duality_violations=" << tally.duality_violations << "\n"
            << "width_violations=" << tally.width_violations << "\n";
  bool ok = tally.disagreements == 0 && tally.duality_violations == 0 &&
            tally.width_violations == 0;
  return ok ? kExitOk : kExitUnsat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satisfiability, validity and structural measures for modal logic K"};
  app.require_subcommand(1);

  std::string expr, file, algo = "width", out, model_path, dimacs_path;
  bool want_witness = false;
  int root = 0;
  modalk::SolverOptions opts;
  int vars = 1, md_max = 2, size_max = 7, depth_cap = 5, dd_max = 3;
  std::uint64_t count = 0, seed = 0;

  auto add_formula_input = [&](CLI::App* cmd) {
    cmd->add_option("formula", expr, "formula expression");
    cmd->add_option("--file", file, "read the formula from a file");
  };

  CLI::App* measure = app.add_subcommand("measure", "structural measures as JSON");
  add_formula_input(measure);

  CLI::App* solve = app.add_subcommand("solve", "decide satisfiability");
  add_formula_input(solve);
  solve->add_option("--algo", algo, "width|depth|diamond|brute");
  solve->add_option("--max-states", opts.brute_max_states,
                    "state bound for the brute-force search");
  solve->add_option("--budget-seconds", opts.wall_seconds, "wall-clock budget");
  solve->add_option("--max-candidates", opts.max_candidates,
                    "enumeration budget");
  solve->add_option("--out", out, "write the result JSON (with witness) here");
  solve->add_flag("--witness", opts.width_witness,
                  "reconstruct a model in the width solver");

  CLI::App* check = app.add_subcommand("check", "evaluate a formula in a model");
  check->add_option("--model", model_path, "model JSON path")->required();
  check->add_option("--root", root, "state to check at");
  add_formula_input(check);

  CLI::App* reduce = app.add_subcommand(
      "reduce", "encode a DIMACS CNF instance as a modal formula");
  reduce->add_option("dimacs", dimacs_path, "DIMACS CNF path")->required();
  reduce->add_flag("--witness", want_witness,
                   "build and verify the satisfying model when the CNF is satisfiable");
  reduce->add_option("--out", out, "write the witness model JSON here");

  CLI::App* corpus = app.add_subcommand(
      "corpus", "cross-validate the solvers over a formula corpus");
  corpus->add_option("--vars", vars, "number of variables");
  corpus->add_option("--md-max", md_max, "modality depth cap (exhaustive mode)");
  corpus->add_option("--size-max", size_max, "tree size cap (exhaustive mode)");
  corpus->add_option("--count", count,
                     "number of random formulas (0 = exhaustive)");
  corpus->add_option("--seed", seed, "random seed");
  corpus->add_option("--depth-cap", depth_cap, "tree depth cap (random mode)");
  corpus->add_option("--dd-max", dd_max, "diamond-dimension cap for the diamond solver");
  corpus->add_option("--max-states", opts.brute_max_states,
                     "state bound for the brute-force search");
  corpus->add_option("--budget-seconds", opts.wall_seconds, "wall-clock budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (measure->parsed()) return run_measure(expr, file);
    if (solve->parsed()) return run_solve(expr, file, algo, opts, out);
    if (check->parsed()) return run_check(model_path, root, expr, file);
    if (reduce->parsed()) return run_reduce(dimacs_path, want_witness, out);
    if (corpus->parsed())
      return run_corpus(vars, md_max, size_max, count, seed, depth_cap, dd_max,
                        opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
