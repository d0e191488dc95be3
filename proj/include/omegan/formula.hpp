#pragma once

// Modal formulas and their text syntax:
//
//   implies := or ( "->" implies )?          right associative
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | "<>" unary | "[]" unary | atom
//   atom    := "true" | "false" | var | "(" implies ")"
//   var     := [a-zA-Z][a-zA-Z0-9_]*

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "omegan/error.hpp"

namespace omegan {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

enum class Op { Var, False, True, Not, And, Or, Implies, Diamond, Box };

/// Immutable formula tree with shared subterms.
class Formula {
 public:
  Formula() : Formula(Op::False) {}

  static Formula var(std::string name) {
    Formula f(Op::Var);
    f.node_->name = std::move(name);
    return f;
  }
  static Formula falsum() { return Formula(Op::False); }
  static Formula verum() { return Formula(Op::True); }
  static Formula negation(Formula a) { return unary(Op::Not, std::move(a)); }
  static Formula diamond(Formula a) { return unary(Op::Diamond, std::move(a)); }
  static Formula box(Formula a) { return unary(Op::Box, std::move(a)); }
  static Formula conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return binary(Op::Implies, std::move(a), std::move(b)); }

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Formula& lhs() const { return node_->args.at(0); }
  const Formula& rhs() const { return node_->args.at(1); }
  const std::vector<Formula>& args() const { return node_->args; }

  /// Modal depth.
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& a : args()) d = std::max(d, a.depth());
    return d + (op() == Op::Diamond || op() == Op::Box ? 1 : 0);
  }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    collect_vars(out);
    return out;
  }

  /// Fully parenthesized text that parses back to the same tree.
  std::string str() const {
    switch (op()) {
      case Op::Var: return name();
      case Op::False: return "false";
      case Op::True: return "true";
      case Op::Not: return "~" + lhs().str();
      case Op::Diamond: return "<>" + lhs().str();
      case Op::Box: return "[]" + lhs().str();
      case Op::And: return "(" + lhs().str() + " & " + rhs().str() + ")";
      case Op::Or: return "(" + lhs().str() + " | " + rhs().str() + ")";
      case Op::Implies: return "(" + lhs().str() + " -> " + rhs().str() + ")";
    }
    return {};
  }

  /// Distinct subformulas in post-order (children before parents).
  std::vector<Formula> subformulas() const {
    std::vector<Formula> out;
    std::unordered_set<std::string> seen;
    collect_post(out, seen);
    return out;
  }

  friend bool operator==(const Formula& a, const Formula& b) { return a.str() == b.str(); }

 private:
  struct Node {
    Op op = Op::False;
    std::string name;
    std::vector<Formula> args;
  };

  explicit Formula(Op op) : node_(std::make_shared<Node>()) { node_->op = op; }

  static Formula unary(Op op, Formula a) {
    Formula f(op);
    f.node_->args.push_back(std::move(a));
    return f;
  }
  static Formula binary(Op op, Formula a, Formula b) {
    Formula f(op);
    f.node_->args.push_back(std::move(a));
    f.node_->args.push_back(std::move(b));
    return f;
  }

  void collect_vars(std::set<std::string>& out) const {
    if (op() == Op::Var) out.insert(name());
    for (const auto& a : args()) a.collect_vars(out);
  }

  void collect_post(std::vector<Formula>& out, std::unordered_set<std::string>& seen) const {
    for (const auto& a : args()) a.collect_post(out, seen);
    if (seen.insert(str()).second) out.push_back(*this);
  }

  std::shared_ptr<Node> node_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : s_(text) {}

  Formula parse() {
    Formula f = implication();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (eat("->")) return Formula::implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (eat("|")) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (eat("&")) f = Formula::conj(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (eat("~")) return Formula::negation(unary());
    if (eat("<>")) return Formula::diamond(unary());
    if (eat("[]")) return Formula::box(unary());
    return atom();
  }

  Formula atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    if (eat("(")) {
      Formula f = implication();
      if (!eat(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (!std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string word(s_.substr(start, pos_ - start));
    if (word == "true") return Formula::verum();
    if (word == "false") return Formula::falsum();
    return Formula::var(std::move(word));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

}  // namespace omegan
