#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modalk {

enum class Kind : unsigned char { Var, Top, Bot, Not, And, Or, Box, Dia };

// Immutable modal formula tree. Copies are cheap (shared nodes); all
// observers are pure. Equality is structural, node for node.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula box(Formula child);
  static Formula dia(Formula child);

  Kind kind() const { return node_->kind; }
  const std::string& var_name() const;  // Var only
  Formula child() const;                // Not/Box/Dia
  Formula left() const;                 // And/Or
  Formula right() const;                // And/Or

  std::size_t hash() const { return node_->hash; }
  std::size_t tree_size() const { return node_->size; }
  // Node identity for memo tables; equal pointers imply equal formulas.
  const void* id() const { return node_.get(); }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    std::string name;  // Var only
    std::shared_ptr<const Node> a, b;
    std::size_t hash = 0;
    std::size_t size = 1;
    unsigned md = 0;  // modality depth, cached at construction
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, std::string name, const Formula* a,
                      const Formula* b);

  std::shared_ptr<const Node> node_;

  friend unsigned cached_modality_depth(const Formula& f);
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

inline unsigned cached_modality_depth(const Formula& f) {
  return f.node_->md;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the ASCII grammar: ~ [] <> bind tightest, then &, |, -> (right
// assoc), <->.  "->"/"<->" are desugared into ~/| at parse time.
Formula parse(std::string_view text);

// Prints in the same grammar; binary operators fully parenthesized, so
// parse(print(f)) == f.
std::string print(const Formula& f);

// Negation normal form: Not only directly above Var.  K-equivalent.
Formula to_nnf(const Formula& f);

// Distinct variable names occurring in f.
std::set<std::string> variables(const Formula& f);

// Rewrites every <>psi into ~[]~psi (recursively).
Formula desugar_diamonds(const Formula& f);

}  // namespace modalk
