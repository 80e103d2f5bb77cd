#pragma once

// Arithmetic expressions in the coordinates, for initial data, mean states,
// forcing and boundary data in scenario files.
//
// Grammar: numbers, + - * / ^ (right associative), parentheses, the
// variables x y z (aliases r theta for the first two axes), the constant pi
// and the functions sin cos tan exp log sqrt tanh abs.

#include <memory>
#include <string>

#include "skewform/grid.hpp"

namespace skewform {

class Expression {
 public:
  /// Throws ConfigError with the offending column on malformed input.
  static Expression parse(const std::string& text);

  double operator()(const Position& p) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace skewform
