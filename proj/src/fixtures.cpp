#include "spt2/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "spt2/exprlang.hpp"

namespace spt2 {

FixtureError::FixtureError(std::size_t line, const std::string& message)
    : std::runtime_error("fixture line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw FixtureError(line, std::string(what) + " must be a nonnegative integer, got '" + tok + "'");
  }
  try {
    return static_cast<std::size_t>(std::stoull(tok));
  } catch (const std::exception&) {
    throw FixtureError(line, std::string(what) + " out of range: " + tok);
  }
}

FixtureOperand parse_operand(const std::string& text, std::size_t line) {
  static const std::regex progression(R"(^spt2\(\s*(\d+)\s*\*?\s*n\s*(?:\+\s*(\d+)\s*)?\)$)");
  static const std::regex sum(R"(^sum\[(.*)\]$)");
  FixtureOperand op;
  op.text = text;
  std::smatch m;
  if (std::regex_match(text, m, progression)) {
    op.kind = FixtureOperand::Kind::Progression;
    op.step = parse_count(m[1].str(), line, "progression step");
    op.offset = m[2].matched ? parse_count(m[2].str(), line, "progression offset") : 0;
    if (op.step == 0) throw FixtureError(line, "progression step must be >= 1");
    return op;
  }
  if (std::regex_match(text, m, sum)) {
    std::string name = m[1].str();
    std::erase_if(name, [](unsigned char c) { return std::isspace(c); });
    op.kind = FixtureOperand::Kind::Sum;
    if (name == "phi(q)") op.sum = SumKind::PhiPlus;
    else if (name == "phi(-q)") op.sum = SumKind::PhiMinus;
    else if (name == "psi(q)") op.sum = SumKind::PsiPlus;
    else if (name == "psi(-q)") op.sum = SumKind::PsiMinus;
    else if (name == "f1^3") op.sum = SumKind::CubeF1;
    else throw FixtureError(line, "unknown sparse sum '" + name + "'");
    return op;
  }
  try {
    op.kind = FixtureOperand::Kind::Expression;
    op.expr = parse_product(text);
  } catch (const ParseError& e) {
    throw FixtureError(line, "in '" + text + "' at offset " + std::to_string(e.offset()) + ": " +
                                 e.message());
  } catch (const LowerError& e) {
    throw FixtureError(line, "in '" + text + "': " + e.what());
  }
  return op;
}

FixtureSide parse_side(const std::string& text, std::size_t line) {
  auto pieces = split(text, '|');
  FixtureSide side;
  const std::string operand = trim(pieces[0]);
  if (operand.empty()) throw FixtureError(line, "empty side");
  side.operand = parse_operand(operand, line);
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    std::istringstream is(pieces[i]);
    std::string word, m, r, extra;
    is >> word >> m >> r;
    if (word != "dissect" || m.empty() || r.empty() || (is >> extra)) {
      throw FixtureError(line, "expected '| dissect m r', got '|" + pieces[i] + "'");
    }
    DissectionSpec spec{parse_count(m, line, "dissection modulus"),
                        parse_count(r, line, "dissection residue")};
    if (spec.m < 1 || spec.r >= spec.m) {
      throw FixtureError(line, "dissection needs m >= 1 and 0 <= r < m");
    }
    side.stages.push_back(spec);
  }
  return side;
}

Fixture parse_line(const std::string& raw, std::size_t line) {
  static const std::regex name_re(R"(^[A-Za-z0-9_.+\-]+$)");
  static const std::regex options_re(R"(\s(mod|order|xfail)(\s|$))");
  Fixture f;
  f.line = line;
  const auto colon = raw.find(':');
  if (colon == std::string::npos) throw FixtureError(line, "expected 'name : LHS == RHS'");
  f.name = trim(std::string_view(raw).substr(0, colon));
  if (!std::regex_match(f.name, name_re)) throw FixtureError(line, "invalid fixture name '" + f.name + "'");
  std::string body = raw.substr(colon + 1);

  std::smatch m;
  std::string options;
  if (std::regex_search(body, m, options_re)) {
    options = body.substr(static_cast<std::size_t>(m.position(0)));
    body = body.substr(0, static_cast<std::size_t>(m.position(0)));
  }
  std::istringstream opts(options);
  for (std::string word; opts >> word;) {
    if (word == "mod") {
      std::string v;
      opts >> v;
      f.modulus = parse_count(v, line, "modulus");
      if (f.modulus < 2) throw FixtureError(line, "modulus must be >= 2");
    } else if (word == "order") {
      std::string v;
      opts >> v;
      f.order = parse_count(v, line, "order");
      if (f.order < 1) throw FixtureError(line, "order must be >= 1");
    } else if (word == "xfail") {
      f.expect_fail = true;
    } else {
      throw FixtureError(line, "unknown option '" + word + "'");
    }
  }

  const auto eq = body.find("==");
  if (eq == std::string::npos || body.find("==", eq + 2) != std::string::npos) {
    throw FixtureError(line, "expected exactly one '=='");
  }
  f.lhs = parse_side(body.substr(0, eq), line);
  f.rhs = parse_side(body.substr(eq + 2), line);
  return f;
}

}  // namespace

std::vector<Fixture> parse_fixtures(std::string_view text) {
  std::vector<Fixture> out;
  std::size_t line_no = 0;
  for (const auto& raw_line : split(text, '\n')) {
    ++line_no;
    std::string line = raw_line.substr(0, raw_line.find('#'));
    if (trim(line).empty()) continue;
    Fixture f = parse_line(line, line_no);
    for (const auto& g : out) {
      if (g.name == f.name) throw FixtureError(line_no, "duplicate fixture name '" + f.name + "'");
    }
    out.push_back(std::move(f));
  }
  return out;
}

const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> fixtures = parse_fixtures(builtin_fixture_text());
  return fixtures;
}

std::size_t source_order(const FixtureSide& side, std::size_t order) {
  std::size_t s = order;
  for (auto it = side.stages.rbegin(); it != side.stages.rend(); ++it) {
    if (s > 0) s = it->m * (s - 1) + it->r + 1;
  }
  return s;
}

std::optional<std::size_t> spt2_index_needed(const Fixture& f, std::size_t order) {
  std::optional<std::size_t> need;
  for (const FixtureSide* side : {&f.lhs, &f.rhs}) {
    if (side->operand.kind != FixtureOperand::Kind::Progression) continue;
    const std::size_t s = source_order(*side, order);
    if (s == 0) continue;
    const std::size_t idx = side->operand.step * (s - 1) + side->operand.offset;
    need = std::max(need.value_or(0), idx);
  }
  return need;
}

Series Spt2Source::prefix(CoeffRing ring, std::size_t length) {
  if (table_ != nullptr && table_->values.size() >= length) {
    return Series::from_integers(
        ring, std::vector<Integer>(table_->values.begin(), table_->values.begin() + length));
  }
  std::lock_guard lock(mutex_);
  auto it = computed_.find(ring.modulus());
  if (it == computed_.end() || it->second.order() < length) {
    Series s = spt2_series(length, ring);
    it = computed_.insert_or_assign(ring.modulus(), std::move(s)).first;
  }
  return truncate(it->second, length);
}

Series evaluate_side(const FixtureSide& side, CoeffRing ring, std::size_t order,
                     Spt2Source& spt2) {
  const std::size_t s = source_order(side, order);
  Series value;
  const FixtureOperand& op = side.operand;
  switch (op.kind) {
    case FixtureOperand::Kind::Expression:
      value = expand_expr(op.expr, ring, s);
      break;
    case FixtureOperand::Kind::Progression: {
      Series all = spt2.prefix(ring, op.step * (s - 1) + op.offset + 1);
      value = dissect(all, DissectionSpec{op.step, op.offset % op.step});
      // offset may exceed step; drop the leading coefficients that belong to n < 0.
      const std::size_t skip = op.offset / op.step;
      auto c = value.coefficients();
      value = Series::from_integers(ring, std::vector<Integer>(c.begin() + skip, c.begin() + skip + s));
      break;
    }
    case FixtureOperand::Kind::Sum:
      switch (op.sum) {
        case SumKind::PhiPlus: value = theta_phi(1, s, ring); break;
        case SumKind::PhiMinus: value = theta_phi(-1, s, ring); break;
        case SumKind::PsiPlus: value = theta_psi(1, s, ring); break;
        case SumKind::PsiMinus: value = theta_psi(-1, s, ring); break;
        case SumKind::CubeF1: value = cube_f1(s, ring); break;
      }
      break;
  }
  for (const auto& stage : side.stages) value = dissect(value, stage);
  return truncate(value, order);
}

CheckReport run_fixture(const Fixture& f, Spt2Source& spt2, std::optional<std::size_t> order_override) {
  const std::size_t order = order_override.value_or(f.order);
  if (order < 1) throw std::invalid_argument("run_fixture: order must be >= 1");
  const CoeffRing ring = f.modulus == 0 ? CoeffRing::integers() : CoeffRing::modulo(f.modulus);
  const Series lhs = evaluate_side(f.lhs, ring, order, spt2);
  const Series rhs = evaluate_side(f.rhs, ring, order, spt2);
  return check_series_congruence(lhs, rhs, f.modulus, f.name);
}

}  // namespace spt2
