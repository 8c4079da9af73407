#pragma once

// A small expression language for eta-quotient identities. See docs/grammar.md.
//
//   "2*f8^2/f4 - f2^3*f4^2/f1^2"
//   "phi(q) - phi(q^4) - 2*q*psi(q^8)"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spt2/products.hpp"

namespace spt2 {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

class LowerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Integer, Q, Eta, Theta, Neg, Add, Sub, Mul, Div, Pow };
enum class ThetaKind { Phi, Psi };

struct ExprAst {
  NodeKind kind = NodeKind::Integer;
  Integer value;          // Integer
  int level = 1;          // Eta: k in f_k; Theta: m in phi(+-q^m)
  int exponent = 1;       // Pow
  ThetaKind theta = ThetaKind::Phi;
  bool negated_arg = false;  // Theta: phi(-q^m) / psi(-q^m)
  std::size_t offset = 0;    // byte offset of the node's first token
  std::vector<ExprAst> children;

  // Structural equality; offsets are ignored.
  friend bool operator==(const ExprAst& a, const ExprAst& b);
};

ExprAst parse(std::string_view text);

// Renders with the minimum parentheses needed to reparse to an equal tree.
std::string to_string(const ExprAst& ast);

// Normalized sum of eta monomials; theta atoms are replaced by their product forms.
ProductExpr lower(const ExprAst& ast);

inline ProductExpr parse_product(std::string_view text) { return lower(parse(text)); }

}  // namespace spt2
