#include "modalk/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <utility>
#include <vector>

namespace modalk {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Formula Formula::make(Kind k, std::string name, const Formula* a,
                      const Formula* b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  if (a) n->a = a->node_;
  if (b) n->b = b->node_;
  n->hash = hash_combine(static_cast<std::size_t>(k) * 0x100000001b3ULL,
                         std::hash<std::string>{}(n->name));
  n->size = 1;
  n->md = 0;
  if (n->a) {
    n->hash = hash_combine(n->hash, n->a->hash);
    n->size += n->a->size;
    n->md = n->a->md;
  }
  if (n->b) {
    n->hash = hash_combine(n->hash, n->b->hash);
    n->size += n->b->size;
    n->md = std::max(n->md, n->b->md);
  }
  if (k == Kind::Box || k == Kind::Dia) n->md += 1;
  return Formula(std::move(n));
}

Formula Formula::var(std::string name) {
  if (!valid_identifier(name))
    throw std::invalid_argument("invalid variable name: '" + name + "'");
  return make(Kind::Var, std::move(name), nullptr, nullptr);
}

Formula Formula::top() {
  static const Formula t = make(Kind::Top, "", nullptr, nullptr);
  return t;
}

Formula Formula::bot() {
  static const Formula b = make(Kind::Bot, "", nullptr, nullptr);
  return b;
}

Formula Formula::negation(Formula c) { return make(Kind::Not, "", &c, nullptr); }

Formula Formula::conjunction(Formula l, Formula r) {
  return make(Kind::And, "", &l, &r);
}

Formula Formula::disjunction(Formula l, Formula r) {
  return make(Kind::Or, "", &l, &r);
}

Formula Formula::box(Formula c) { return make(Kind::Box, "", &c, nullptr); }

Formula Formula::dia(Formula c) { return make(Kind::Dia, "", &c, nullptr); }

const std::string& Formula::var_name() const {
  if (node_->kind != Kind::Var)
    throw std::logic_error("var_name on non-variable node");
  return node_->name;
}

Formula Formula::child() const {
  switch (node_->kind) {
    case Kind::Not:
    case Kind::Box:
    case Kind::Dia:
      return Formula(node_->a);
    default:
      throw std::logic_error("child on non-unary node");
  }
}

Formula Formula::left() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or)
    throw std::logic_error("left on non-binary node");
  return Formula(node_->a);
}

Formula Formula::right() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or)
    throw std::logic_error("right on non-binary node");
  return Formula(node_->b);
}

bool Formula::operator==(const Formula& other) const {
  const Node* x = node_.get();
  const Node* y = other.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind || x->size != y->size)
    return false;
  if (x->kind == Kind::Var) return x->name == y->name;
  if (x->a && !(Formula(x->a) == Formula(y->a))) return false;
  if (x->b && !(Formula(x->b) == Formula(y->b))) return false;
  return true;
}

ParseError::ParseError(const std::string& msg, std::size_t offset)
    : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

namespace {

enum class Tok { Ident, True, False, Not, Box, Dia, And, Or, Imp, Iff, LPar, RPar, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    cur_.offset = pos_;
    if (pos_ >= s_.size()) {
      cur_.kind = Tok::End;
      return;
    }
    char c = s_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_'))
        ++pos_;
      cur_.text = std::string(s_.substr(start, pos_ - start));
      if (cur_.text == "true")
        cur_.kind = Tok::True;
      else if (cur_.text == "false")
        cur_.kind = Tok::False;
      else
        cur_.kind = Tok::Ident;
      return;
    }
    switch (c) {
      case '~': cur_.kind = Tok::Not; ++pos_; return;
      case '&': cur_.kind = Tok::And; ++pos_; return;
      case '|': cur_.kind = Tok::Or; ++pos_; return;
      case '(': cur_.kind = Tok::LPar; ++pos_; return;
      case ')': cur_.kind = Tok::RPar; ++pos_; return;
      case '[':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == ']') {
          cur_.kind = Tok::Box;
          pos_ += 2;
          return;
        }
        throw ParseError("expected ']' after '['", pos_);
      case '<':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          cur_.kind = Tok::Dia;
          pos_ += 2;
          return;
        }
        if (pos_ + 2 < s_.size() && s_[pos_ + 1] == '-' && s_[pos_ + 2] == '>') {
          cur_.kind = Tok::Iff;
          pos_ += 3;
          return;
        }
        throw ParseError("expected '<>' or '<->'", pos_);
      case '-':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          cur_.kind = Tok::Imp;
          pos_ += 2;
          return;
        }
        throw ParseError("expected '->' after '-'", pos_);
      default:
        throw ParseError(std::string("unknown token '") + c + "'", pos_);
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected trailing input", lex_.peek().offset);
    return f;
  }

 private:
  // iff := imp ("<->" imp)*   (left assoc; desugared)
  Formula parse_iff() {
    Formula f = parse_imp();
    while (lex_.peek().kind == Tok::Iff) {
      lex_.take();
      Formula g = parse_imp();
      // A <-> B  =>  (~A | B) & (~B | A)
      f = Formula::conjunction(
          Formula::disjunction(Formula::negation(f), g),
          Formula::disjunction(Formula::negation(g), f));
    }
    return f;
  }

  // imp := or ("->" or)*   (right assoc; desugared)
  Formula parse_imp() {
    Formula f = parse_or();
    if (lex_.peek().kind == Tok::Imp) {
      lex_.take();
      Formula g = parse_imp();
      f = Formula::disjunction(Formula::negation(f), g);
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      f = Formula::disjunction(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      f = Formula::conjunction(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Not:
        lex_.take();
        return Formula::negation(parse_unary());
      case Tok::Box:
        lex_.take();
        return Formula::box(parse_unary());
      case Tok::Dia:
        lex_.take();
        return Formula::dia(parse_unary());
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Ident: return Formula::var(t.text);
      case Tok::True: return Formula::top();
      case Tok::False: return Formula::bot();
      case Tok::LPar: {
        Formula f = parse_iff();
        Token close = lex_.take();
        if (close.kind != Tok::RPar)
          throw ParseError("unbalanced parentheses: expected ')'", close.offset);
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.offset);
      default:
        throw ParseError("unexpected token", t.offset);
    }
  }

  Lexer lex_;
};

void print_into(const Formula& f, bool paren_unary, std::string& out) {
  switch (f.kind()) {
    case Kind::Var: out += f.var_name(); return;
    case Kind::Top: out += "true"; return;
    case Kind::Bot: out += "false"; return;
    case Kind::Not:
    case Kind::Box:
    case Kind::Dia: {
      if (paren_unary) out += '(';
      out += f.kind() == Kind::Not ? "~ " : f.kind() == Kind::Box ? "[] " : "<> ";
      print_into(f.child(), false, out);
      if (paren_unary) out += ')';
      return;
    }
    case Kind::And:
    case Kind::Or: {
      out += '(';
      print_into(f.left(), true, out);
      out += f.kind() == Kind::And ? " & " : " | ";
      print_into(f.right(), true, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, false, out);
  return out;
}

namespace {

struct NnfKey {
  const void* id;
  bool neg;
  bool operator==(const NnfKey&) const = default;
};

struct NnfKeyHash {
  std::size_t operator()(const NnfKey& k) const {
    return std::hash<const void*>{}(k.id) * 2 + (k.neg ? 1 : 0);
  }
};

Formula nnf_rec(const Formula& f, bool neg,
                std::unordered_map<NnfKey, Formula, NnfKeyHash>& memo) {
  NnfKey key{f.id(), neg};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Formula out = Formula::top();
  switch (f.kind()) {
    case Kind::Var:
      out = neg ? Formula::negation(f) : f;
      break;
    case Kind::Top:
      out = neg ? Formula::bot() : Formula::top();
      break;
    case Kind::Bot:
      out = neg ? Formula::top() : Formula::bot();
      break;
    case Kind::Not:
      out = nnf_rec(f.child(), !neg, memo);
      break;
    case Kind::And: {
      Formula l = nnf_rec(f.left(), neg, memo);
      Formula r = nnf_rec(f.right(), neg, memo);
      out = neg ? Formula::disjunction(l, r) : Formula::conjunction(l, r);
      break;
    }
    case Kind::Or: {
      Formula l = nnf_rec(f.left(), neg, memo);
      Formula r = nnf_rec(f.right(), neg, memo);
      out = neg ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
      break;
    }
    case Kind::Box: {
      Formula c = nnf_rec(f.child(), neg, memo);
      out = neg ? Formula::dia(c) : Formula::box(c);
      break;
    }
    case Kind::Dia: {
      Formula c = nnf_rec(f.child(), neg, memo);
      out = neg ? Formula::box(c) : Formula::dia(c);
      break;
    }
  }
  memo.emplace(key, out);
  return out;
}

}  // namespace

Formula to_nnf(const Formula& f) {
  std::unordered_map<NnfKey, Formula, NnfKeyHash> memo;
  return nnf_rec(f, false, memo);
}

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out,
                  std::unordered_map<const void*, bool>& seen) {
  if (seen.count(f.id())) return;
  seen[f.id()] = true;
  switch (f.kind()) {
    case Kind::Var: out.insert(f.var_name()); return;
    case Kind::Top:
    case Kind::Bot: return;
    case Kind::Not:
    case Kind::Box:
    case Kind::Dia: collect_vars(f.child(), out, seen); return;
    case Kind::And:
    case Kind::Or:
      collect_vars(f.left(), out, seen);
      collect_vars(f.right(), out, seen);
      return;
  }
}

Formula desugar_rec(const Formula& f,
                    std::unordered_map<const void*, Formula>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  Formula out = Formula::top();
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      out = f;
      break;
    case Kind::Not:
      out = Formula::negation(desugar_rec(f.child(), memo));
      break;
    case Kind::And:
      out = Formula::conjunction(desugar_rec(f.left(), memo),
                                 desugar_rec(f.right(), memo));
      break;
    case Kind::Or:
      out = Formula::disjunction(desugar_rec(f.left(), memo),
                                 desugar_rec(f.right(), memo));
      break;
    case Kind::Box:
      out = Formula::box(desugar_rec(f.child(), memo));
      break;
    case Kind::Dia:
      out = Formula::negation(
          Formula::box(Formula::negation(desugar_rec(f.child(), memo))));
      break;
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  std::unordered_map<const void*, bool> seen;
  collect_vars(f, out, seen);
  return out;
}

Formula desugar_diamonds(const Formula& f) {
  std::unordered_map<const void*, Formula> memo;
  return desugar_rec(f, memo);
}

}  // namespace modalk
