#include "skewform/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "skewform/error.hpp"

namespace skewform {

struct Expression::Node {
  enum Kind { number, variable, negate, add, sub, mul, div, pow, call } kind;
  double value = 0.0;
  int index = 0;  // variable axis or function id
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

constexpr const char* kFunctions[] = {"sin",  "cos",  "tan",  "exp",
                                      "log",  "sqrt", "tanh", "abs"};

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + s_ + "': " + what + " at column " +
                      std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Node::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Node::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->kind = Node::number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      auto n = std::make_shared<Node>();
      if (name == "pi") {
        n->kind = Node::number;
        n->value = std::numbers::pi;
        return n;
      }
      const std::pair<const char*, int> vars[] = {
          {"x", 0}, {"y", 1}, {"z", 2}, {"r", 0}, {"theta", 1}};
      for (const auto& [v, idx] : vars) {
        if (name == v) {
          n->kind = Node::variable;
          n->index = idx;
          return n;
        }
      }
      for (int f = 0; f < static_cast<int>(std::size(kFunctions)); ++f) {
        if (name == kFunctions[f]) {
          if (!accept('(')) fail("expected '(' after " + name);
          NodePtr arg = expr();
          if (!accept(')')) fail("missing ')'");
          auto call = std::make_shared<Node>();
          call->kind = Node::call;
          call->index = f;
          call->a = arg;
          return call;
        }
      }
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, const Position& p) {
  switch (n.kind) {
    case Node::number:
      return n.value;
    case Node::variable:
      return p[n.index];
    case Node::negate:
      return -eval(*n.a, p);
    case Node::add:
      return eval(*n.a, p) + eval(*n.b, p);
    case Node::sub:
      return eval(*n.a, p) - eval(*n.b, p);
    case Node::mul:
      return eval(*n.a, p) * eval(*n.b, p);
    case Node::div:
      return eval(*n.a, p) / eval(*n.b, p);
    case Node::pow:
      return std::pow(eval(*n.a, p), eval(*n.b, p));
    case Node::call: {
      const double x = eval(*n.a, p);
      switch (n.index) {
        case 0:
          return std::sin(x);
        case 1:
          return std::cos(x);
        case 2:
          return std::tan(x);
        case 3:
          return std::exp(x);
        case 4:
          return std::log(x);
        case 5:
          return std::sqrt(x);
        case 6:
          return std::tanh(x);
        default:
          return std::abs(x);
      }
    }
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(const Position& p) const { return eval(*root_, p); }

}  // namespace skewform
