#pragma once

// A small expression language for cylindrical-function bodies.
//
//   expr    := sum
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | postfix
//   postfix := primary ('^-1')*
//   primary := number ['i'] | name | func '(' expr ')' | '(' expr ')'
//
// Variables are group elements: path names or x1, x2, ... by position.
// Products of group elements stay in the group; anywhere a number is needed a
// group element is replaced by its trace. Functions: tr, re, im, abs, abs2,
// conj, inv, chi_1/2 (alias chi_half), chi_1.

#include "holonomy/error.hpp"
#include "holonomy/group.hpp"

#include <cctype>
#include <complex>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace holonomy::expr {

using Number = std::complex<double>;
using Value = std::variant<Number, GroupElement>;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { constant, variable, negate, add, sub, mul, div, inverse, call };
  Kind kind;
  Number constant{};
  std::size_t variable = 0;
  std::string function;
  NodePtr lhs, rhs;
};

class Expression {
 public:
  Expression() = default;
  Expression(NodePtr root, std::size_t variables) : root_(std::move(root)), variables_(variables) {}

  std::size_t variable_count() const { return variables_; }

  Number evaluate(const Group& G, std::span<const GroupElement> vars) const {
    if (vars.size() != variables_) throw input_error("expression expects " + std::to_string(variables_) + " values");
    return as_number(G, eval(*root_, G, vars));
  }

 private:
  static Number as_number(const Group& G, const Value& v) {
    if (const auto* g = std::get_if<GroupElement>(&v)) return G.trace(*g);
    return std::get<Number>(v);
  }

  static Value eval(const Node& n, const Group& G, std::span<const GroupElement> vars) {
    using K = Node::Kind;
    switch (n.kind) {
      case K::constant: return n.constant;
      case K::variable: return vars[n.variable];
      case K::negate: return -as_number(G, eval(*n.lhs, G, vars));
      case K::add: return as_number(G, eval(*n.lhs, G, vars)) + as_number(G, eval(*n.rhs, G, vars));
      case K::sub: return as_number(G, eval(*n.lhs, G, vars)) - as_number(G, eval(*n.rhs, G, vars));
      case K::div: return as_number(G, eval(*n.lhs, G, vars)) / as_number(G, eval(*n.rhs, G, vars));
      case K::mul: {
        Value a = eval(*n.lhs, G, vars), b = eval(*n.rhs, G, vars);
        const auto* ga = std::get_if<GroupElement>(&a);
        const auto* gb = std::get_if<GroupElement>(&b);
        if (ga && gb) return G.mul(*ga, *gb);
        return as_number(G, a) * as_number(G, b);
      }
      case K::inverse: {
        Value a = eval(*n.lhs, G, vars);
        if (const auto* g = std::get_if<GroupElement>(&a)) return G.inv(*g);
        return Number(1) / std::get<Number>(a);
      }
      case K::call: return call(n.function, eval(*n.lhs, G, vars), G);
    }
    return Number(0);
  }

  static Value call(const std::string& f, const Value& a, const Group& G) {
    const auto* g = std::get_if<GroupElement>(&a);
    if (f == "inv") {
      if (!g) throw input_error("inv() needs a group element");
      return G.inv(*g);
    }
    if (f == "chi_1") {
      if (!g) throw input_error("chi_1() needs a group element");
      return Number(G.chi_one(*g));
    }
    const Number z = as_number(G, a);
    if (f == "tr" || f == "chi_half") return z;
    if (f == "re") return Number(z.real());
    if (f == "im") return Number(z.imag());
    if (f == "abs") return Number(std::abs(z));
    if (f == "abs2") return Number(std::norm(z));
    if (f == "conj") return std::conj(z);
    throw input_error("unknown function '" + f + "'");
  }

  NodePtr root_;
  std::size_t variables_ = 0;
};

class Parser {
 public:
  Parser(std::string text, std::vector<std::string> names) : text_(std::move(text)), names_(std::move(names)) {}

  Expression parse() {
    NodePtr root = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return Expression(std::move(root), names_.size());
  }

 private:
  static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
  static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
    Node n{k};
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make(std::move(n));
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      skip();
      if (eat('+'))
        lhs = binary(Node::Kind::add, lhs, product());
      else if (eat('-'))
        lhs = binary(Node::Kind::sub, lhs, product());
      else
        return lhs;
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      skip();
      if (eat('*'))
        lhs = binary(Node::Kind::mul, lhs, unary());
      else if (eat('/'))
        lhs = binary(Node::Kind::div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    skip();
    if (eat('-')) {
      Node n{Node::Kind::negate};
      n.lhs = unary();
      return make(std::move(n));
    }
    return postfix();
  }

  NodePtr postfix() {
    NodePtr base = primary();
    for (;;) {
      skip();
      if (text_.compare(pos_, 3, "^-1") != 0) return base;
      pos_ += 3;
      Node n{Node::Kind::inverse};
      n.lhs = base;
      base = make(std::move(n));
    }
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      NodePtr inner = sum();
      skip();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                                   text_[pos_] == 'e' || text_[pos_] == 'E' ||
                                   ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > begin &&
                                    (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(text_.substr(begin, pos_ - begin), &used);
      if (used != pos_ - begin) fail("malformed number");
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
    Node n{Node::Kind::constant};
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      n.constant = Number(0, v);
    } else {
      n.constant = Number(v, 0);
    }
    return make(std::move(n));
  }

  NodePtr name() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string id = text_.substr(begin, pos_ - begin);
    if (id == "chi_1" && text_.compare(pos_, 2, "/2") == 0) {
      pos_ += 2;
      id = "chi_half";
    }
    static const char* functions[] = {"tr", "re", "im", "abs", "abs2", "conj", "inv", "chi_half", "chi_1"};
    for (const char* f : functions)
      if (id == f) {
        skip();
        if (!eat('(')) fail("expected '(' after " + id);
        Node n{Node::Kind::call};
        n.function = id;
        n.lhs = sum();
        skip();
        if (!eat(')')) fail("expected ')'");
        return make(std::move(n));
      }
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == id) return variable(k);
    if (id.size() > 1 && id[0] == 'x') {
      std::size_t k = 0;
      bool digits = true;
      for (std::size_t i = 1; i < id.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) digits = false;
        else k = k * 10 + static_cast<std::size_t>(id[i] - '0');
      }
      if (digits && k >= 1 && k <= names_.size()) return variable(k - 1);
    }
    fail("unknown variable '" + id + "'");
  }

  static NodePtr variable(std::size_t k) {
    Node n{Node::Kind::variable};
    n.variable = k;
    return make(std::move(n));
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("expression error at position " + std::to_string(pos_) + ": " + msg);
  }

  std::string text_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

/// Parses text with variables bound to the given names (and x1, x2, ...).
inline Expression parse(const std::string& text, std::vector<std::string> names) {
  return Parser(text, std::move(names)).parse();
}

}  // namespace holonomy::expr
