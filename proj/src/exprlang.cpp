#include "spt2/exprlang.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace spt2 {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      message_(message) {}

bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.kind != b.kind || a.children != b.children) return false;
  switch (a.kind) {
    case NodeKind::Integer: return a.value == b.value;
    case NodeKind::Eta: return a.level == b.level;
    case NodeKind::Theta:
      return a.theta == b.theta && a.negated_arg == b.negated_arg && a.level == b.level;
    case NodeKind::Pow: return a.exponent == b.exponent;
    default: return true;
  }
}

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Int, s.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, s.substr(start, 1), start});
    ++i;
  }
  out.push_back({Tok::End, {}, s.size()});
  return out;
}

int small_int(const Token& t, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) {
    throw ParseError(t.offset, std::string(what) + " out of range");
  }
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ExprAst run() {
    ExprAst e = expr();
    if (peek().kind == Tok::RParen) throw ParseError(peek().offset, "unbalanced ')'");
    if (peek().kind != Tok::End) throw ParseError(peek().offset, "unexpected token '" +
                                                                     std::string(peek().text) + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  static ExprAst binary(NodeKind kind, ExprAst lhs, ExprAst rhs) {
    ExprAst n;
    n.kind = kind;
    n.offset = lhs.offset;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  ExprAst expr() {
    ExprAst lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      NodeKind k = next().kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      lhs = binary(k, std::move(lhs), term());
    }
    return lhs;
  }

  ExprAst term() {
    ExprAst lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      NodeKind k = next().kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      lhs = binary(k, std::move(lhs), unary());
    }
    return lhs;
  }

  ExprAst unary() {
    if (peek().kind == Tok::Minus) {
      ExprAst n;
      n.kind = NodeKind::Neg;
      n.offset = next().offset;
      n.children.push_back(unary());
      return n;
    }
    return power();
  }

  ExprAst power() {
    ExprAst base = primary();
    if (!accept(Tok::Caret)) return base;
    ExprAst n;
    n.kind = NodeKind::Pow;
    n.offset = base.offset;
    n.exponent = exponent();
    n.children.push_back(std::move(base));
    return n;
  }

  int exponent() {
    const bool paren = accept(Tok::LParen);
    const bool negative = accept(Tok::Minus);
    const Token& t = peek();
    if (t.kind != Tok::Int) {
      throw ParseError(t.offset, t.kind == Tok::End ? "expected integer exponent"
                                                    : "exponent must be an integer literal");
    }
    next();
    int v = small_int(t, "exponent");
    if (paren && !accept(Tok::RParen)) throw ParseError(peek().offset, "expected ')'");
    return negative ? -v : v;
  }

  ExprAst primary() {
    const Token& t = peek();
    ExprAst n;
    n.offset = t.offset;
    switch (t.kind) {
      case Tok::Int:
        next();
        n.kind = NodeKind::Integer;
        n.value = Integer(std::string(t.text));
        return n;
      case Tok::LParen: {
        next();
        ExprAst inner = expr();
        if (!accept(Tok::RParen)) throw ParseError(peek().offset, "unbalanced '(': expected ')'");
        return inner;
      }
      case Tok::Ident:
        next();
        return atom(t);
      case Tok::End:
        throw ParseError(t.offset, "unexpected end of input");
      default:
        throw ParseError(t.offset, "unexpected token '" + std::string(t.text) + "'");
    }
  }

  ExprAst atom(const Token& t) {
    ExprAst n;
    n.offset = t.offset;
    if (t.text == "q") {
      n.kind = NodeKind::Q;
      return n;
    }
    if (t.text.size() > 1 && t.text[0] == 'f' &&
        t.text.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      Token digits{Tok::Int, t.text.substr(1), t.offset + 1};
      n.kind = NodeKind::Eta;
      n.level = small_int(digits, "eta level");
      if (n.level < 1) throw ParseError(t.offset, "eta level must be positive");
      return n;
    }
    if (t.text == "phi" || t.text == "psi") {
      n.kind = NodeKind::Theta;
      n.theta = t.text == "phi" ? ThetaKind::Phi : ThetaKind::Psi;
      if (!accept(Tok::LParen)) throw ParseError(peek().offset, "expected '(' after " + std::string(t.text));
      n.negated_arg = accept(Tok::Minus);
      if (peek().kind != Tok::Ident || peek().text != "q") {
        throw ParseError(peek().offset, "theta argument must be q, -q, q^m or -q^m");
      }
      next();
      if (accept(Tok::Caret)) {
        const Token& m = peek();
        if (m.kind != Tok::Int) throw ParseError(m.offset, "exponent must be an integer literal");
        next();
        n.level = small_int(m, "theta argument exponent");
        if (n.level < 1) throw ParseError(m.offset, "theta argument exponent must be positive");
      }
      if (!accept(Tok::RParen)) throw ParseError(peek().offset, "unbalanced '(': expected ')'");
      return n;
    }
    throw ParseError(t.offset, "unknown atom '" + std::string(t.text) + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const ExprAst& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

std::string render(const ExprAst& n, int min_prec) {
  std::string s;
  switch (n.kind) {
    case NodeKind::Integer: s = n.value.get_str(); break;
    case NodeKind::Q: s = "q"; break;
    case NodeKind::Eta: s = "f" + std::to_string(n.level); break;
    case NodeKind::Theta:
      s = std::string(n.theta == ThetaKind::Phi ? "phi(" : "psi(") + (n.negated_arg ? "-q" : "q") +
          (n.level != 1 ? "^" + std::to_string(n.level) : "") + ")";
      break;
    case NodeKind::Neg: s = "-" + render(n.children[0], 3); break;
    case NodeKind::Add: s = render(n.children[0], 1) + " + " + render(n.children[1], 2); break;
    case NodeKind::Sub: s = render(n.children[0], 1) + " - " + render(n.children[1], 2); break;
    case NodeKind::Mul: s = render(n.children[0], 2) + "*" + render(n.children[1], 3); break;
    case NodeKind::Div: s = render(n.children[0], 2) + "/" + render(n.children[1], 3); break;
    case NodeKind::Pow: s = render(n.children[0], 5) + "^" + std::to_string(n.exponent); break;
  }
  return precedence(n) < min_prec ? "(" + s + ")" : s;
}

EtaMonomial monomial_power(const EtaMonomial& m, int e) {
  EtaMonomial r;
  mpz_pow_ui(r.coeff.get_mpz_t(), m.coeff.get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
  r.qshift = m.qshift * e;
  for (const auto& [k, x] : m.factors) r.factors[k] = x * e;
  return r;
}

ProductExpr lower_node(const ExprAst& n) {
  switch (n.kind) {
    case NodeKind::Integer: return ProductExpr::constant(n.value);
    case NodeKind::Q: {
      EtaMonomial m;
      m.qshift = 1;
      return ProductExpr::single(m);
    }
    case NodeKind::Eta: return ProductExpr::single(eta_power(n.level, 1));
    case NodeKind::Theta: {
      const int sign = n.negated_arg ? -1 : 1;
      return n.theta == ThetaKind::Phi ? phi_product(sign, n.level) : psi_product(sign, n.level);
    }
    case NodeKind::Neg: return -lower_node(n.children[0]);
    case NodeKind::Add: return lower_node(n.children[0]) + lower_node(n.children[1]);
    case NodeKind::Sub: return lower_node(n.children[0]) - lower_node(n.children[1]);
    case NodeKind::Mul: return lower_node(n.children[0]) * lower_node(n.children[1]);
    case NodeKind::Div: {
      ProductExpr num = lower_node(n.children[0]);
      ProductExpr den = lower_node(n.children[1]);
      if (den.terms.size() != 1) {
        throw LowerError("denominator at offset " + std::to_string(n.children[1].offset) +
                         " is not a single eta monomial");
      }
      const EtaMonomial& d = den.terms[0];
      EtaMonomial inv = monomial_power(d, -1);
      inv.coeff = 1;
      for (auto& t : num.terms) {
        if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.coeff.get_mpz_t())) {
          throw LowerError("division by " + d.coeff.get_str() + " at offset " +
                           std::to_string(n.children[1].offset) + " is not exact");
        }
        mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.coeff.get_mpz_t());
        t.multiply_by(inv);
      }
      return num.normalize();
    }
    case NodeKind::Pow: {
      ProductExpr base = lower_node(n.children[0]);
      const int e = n.exponent;
      if (base.terms.size() == 1) {
        const EtaMonomial& m = base.terms[0];
        if (e < 0 && m.coeff != 1 && m.coeff != -1) {
          throw LowerError("negative power of a non-unit coefficient at offset " +
                           std::to_string(n.offset));
        }
        return ProductExpr::single(monomial_power(m, e));
      }
      if (e < 0) {
        throw LowerError("negative power of a sum at offset " + std::to_string(n.offset));
      }
      if (e > 64) throw LowerError("power of a sum exceeds 64 at offset " + std::to_string(n.offset));
      ProductExpr acc = ProductExpr::constant(1);
      for (int i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
  }
  throw LowerError("unreachable node kind");
}

}  // namespace

ExprAst parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(const ExprAst& ast) { return render(ast, 0); }

ProductExpr lower(const ExprAst& ast) {
  ProductExpr e = lower_node(ast);
  for (const auto& t : e.terms) {
    if (t.qshift < 0) throw LowerError("negative power of q in term " + to_string(t));
  }
  return e;
}

}  // namespace spt2
