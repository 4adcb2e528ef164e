#include "lct/linear.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lct/errors.hpp"

namespace lct {

Affine& Affine::operator+=(const Affine& o) {
  for (const auto& [name, k] : o.terms) {
    Rat& slot = terms[name];
    slot += k;
    if (slot.is_zero()) terms.erase(name);
  }
  constant += o.constant;
  return *this;
}

Affine& Affine::operator-=(const Affine& o) { return *this += o * Rat(-1); }

Affine& Affine::operator*=(const Rat& k) {
  if (k.is_zero()) {
    terms.clear();
    constant = 0;
    return *this;
  }
  for (auto& [name, c] : terms) c *= k;
  constant *= k;
  return *this;
}

Affine Affine::variable(const std::string& name) {
  Affine a;
  a.terms[name] = 1;
  return a;
}

Affine Affine::number(const Rat& value) {
  Affine a;
  a.constant = value;
  return a;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, Cmp, End };

struct Token {
  Tok kind;
  std::string text;
  Comparison cmp = Comparison::Ge;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto error = [&](const std::string& msg) { return ParseError("", msg + " in '" + std::string(s) + "'"); };
  while (i < s.size()) {
    const unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (s.substr(i).starts_with("\xE2\x88\x92")) {
      out.push_back({Tok::Minus, "-"});
      i += 3;
    } else if (s.substr(i).starts_with("\xE2\x89\xA5") || s.substr(i).starts_with("\xE2\xA9\xBE")) {
      out.push_back({Tok::Cmp, ">=", Comparison::Ge});
      i += 3;
    } else if (s.substr(i).starts_with("\xE2\x89\xA4") || s.substr(i).starts_with("\xE2\xA9\xBD")) {
      out.push_back({Tok::Cmp, "<=", Comparison::Le});
      i += 3;
    } else if (c == '>' || c == '<' || c == '=') {
      const bool eq_follows = i + 1 < s.size() && s[i + 1] == '=';
      Comparison cmp = Comparison::Eq;
      if (c == '>') cmp = eq_follows ? Comparison::Ge : Comparison::Gt;
      if (c == '<') cmp = eq_follows ? Comparison::Le : Comparison::Lt;
      const std::size_t len = (c != '=' && eq_follows) || (c == '=' && eq_follows) ? 2 : 1;
      out.push_back({Tok::Cmp, std::string(s.substr(i, len)), cmp});
      i += len;
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default: throw error(std::string("unexpected character '") + static_cast<char>(c) + "'");
      }
      out.push_back({k, std::string(1, static_cast<char>(c))});
      ++i;
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string_view source) : toks_(std::move(toks)), source_(source) {}

  Affine expression() {
    Affine acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      Affine t = term();
      if (minus) acc -= t;
      else acc += t;
    }
    return acc;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  ParseError error(const std::string& msg) const {
    return ParseError("", msg + " in '" + std::string(source_) + "'");
  }

 private:
  static Affine product(const Affine& a, const Affine& b, const Parser& p) {
    if (a.is_constant()) return Affine(b) * a.constant;
    if (b.is_constant()) return Affine(a) * b.constant;
    throw p.error("nonlinear product");
  }

  bool starts_factor() const {
    const Tok k = peek().kind;
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  Affine term() {
    Affine acc = unary();
    for (;;) {
      if (peek().kind == Tok::Star) {
        next();
        acc = product(acc, unary(), *this);
      } else if (peek().kind == Tok::Slash) {
        next();
        Affine d = unary();
        if (!d.is_constant()) throw error("division by a non-constant");
        if (d.constant.is_zero()) throw ZeroDenominator("division by zero in '" + std::string(source_) + "'");
        acc *= d.constant.reciprocal();
      } else if (starts_factor() && acc.is_constant()) {
        acc = product(acc, unary(), *this);
      } else {
        return acc;
      }
    }
  }

  Affine unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return unary() * Rat(-1);
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return primary();
  }

  Affine primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return Affine::number(Rat::parse(t.text));
      case Tok::Ident: return Affine::variable(t.text);
      case Tok::LParen: {
        Affine inner = expression();
        if (next().kind != Tok::RParen) throw error("missing ')'");
        return inner;
      }
      default: throw error("unexpected token '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string_view source_;
};

}  // namespace

Affine parse_affine(std::string_view text) {
  Parser p(tokenize(text), text);
  if (p.peek().kind == Tok::End) throw p.error("empty expression");
  Affine a = p.expression();
  if (p.peek().kind != Tok::End) throw p.error("trailing input '" + p.peek().text + "'");
  return a;
}

Constraint parse_constraint(std::string_view text) {
  Parser p(tokenize(text), text);
  if (p.peek().kind == Tok::End) throw p.error("empty constraint");
  Constraint c;
  c.lhs = p.expression();
  if (p.peek().kind != Tok::Cmp) throw p.error("expected a comparison");
  c.op = p.next().cmp;
  c.rhs = p.expression();
  if (p.peek().kind != Tok::End) throw p.error("trailing input '" + p.peek().text + "'");
  return c;
}

const char* relation_symbol(Relation r) { return r == Relation::Gt ? ">" : ">="; }

Relation parse_relation(std::string_view s) {
  if (s == ">=" || s == "\xE2\x89\xA5") return Relation::Geq;
  if (s == ">") return Relation::Gt;
  throw ParseError("relation", "unknown relation '" + std::string(s) + "'");
}

bool Row::is_zero_row() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c.is_zero(); });
}

std::optional<std::size_t> LinearSystem::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return i;
  return std::nullopt;
}

std::size_t LinearSystem::ensure_variable(const std::string& name) {
  if (auto i = index_of(name)) return *i;
  variables.push_back(name);
  for (auto& r : rows) r.coeffs.emplace_back();
  return variables.size() - 1;
}

void LinearSystem::add_constraint(const Constraint& c, const std::string& provenance) {
  for (auto& r : rows_from_constraint(c, variables, provenance)) rows.push_back(std::move(r));
}

void LinearSystem::add_constraint(std::string_view text, const std::string& provenance) {
  add_constraint(parse_constraint(text), provenance);
}

void LinearSystem::add_row(Row r) {
  if (r.coeffs.size() != variables.size()) throw DimensionMismatch("row length differs from variable count");
  rows.push_back(std::move(r));
}

LinearSystem LinearSystem::widened(const std::vector<std::string>& vars) const {
  LinearSystem out;
  out.variables = vars;
  std::vector<std::size_t> where(variables.size());
  for (std::size_t i = 0; i < variables.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), variables[i]);
    if (it == vars.end()) throw UnknownVariable("variable '" + variables[i] + "' missing from widened order");
    where[i] = static_cast<std::size_t>(it - vars.begin());
  }
  for (const auto& r : rows) {
    Row w = r;
    w.coeffs.assign(vars.size(), Rat());
    for (std::size_t i = 0; i < variables.size(); ++i) w.coeffs[where[i]] = r.coeffs[i];
    out.rows.push_back(std::move(w));
  }
  return out;
}

bool LinearSystem::satisfied_by(const QVector& point) const {
  if (point.size() != variables.size()) throw DimensionMismatch("point has wrong dimension");
  for (const auto& r : rows) {
    Rat lhs;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (!r.coeffs[i].is_zero()) lhs += r.coeffs[i] * point[i];
    if (r.strict() ? !(lhs > r.rhs) : !(lhs >= r.rhs)) return false;
  }
  return true;
}

std::vector<Row> rows_from_constraint(const Constraint& c, const std::vector<std::string>& variables,
                                      const std::string& provenance) {
  // lhs - rhs OP 0, flipped to the ≥ / > convention.
  Affine diff = c.lhs - c.rhs;
  auto make = [&](const Affine& form, Relation rel) {
    Row r;
    r.coeffs.assign(variables.size(), Rat());
    for (const auto& [name, k] : form.terms) {
      auto it = std::find(variables.begin(), variables.end(), name);
      if (it == variables.end()) throw UnknownVariable("unknown variable '" + name + "'");
      r.coeffs[static_cast<std::size_t>(it - variables.begin())] = k;
    }
    r.rhs = -form.constant;
    r.rel = rel;
    r.provenance = provenance;
    return r;
  };
  const Affine neg = diff * Rat(-1);
  switch (c.op) {
    case Comparison::Ge: return {make(diff, Relation::Geq)};
    case Comparison::Gt: return {make(diff, Relation::Gt)};
    case Comparison::Le: return {make(neg, Relation::Geq)};
    case Comparison::Lt: return {make(neg, Relation::Gt)};
    case Comparison::Eq: return {make(diff, Relation::Geq), make(neg, Relation::Geq)};
  }
  return {};
}

Row canonical_row(const Row& r) {
  BigInt l = 1;
  auto lcm = [](const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; };
  for (const auto& c : r.coeffs) l = lcm(l, c.den());
  l = lcm(l, r.rhs.den());
  BigInt g = 0;
  for (const auto& c : r.coeffs) g = boost::multiprecision::gcd(g, BigInt(abs(c.num()) * (l / c.den())));
  g = boost::multiprecision::gcd(g, BigInt(abs(r.rhs.num()) * (l / r.rhs.den())));
  if (g.is_zero()) g = 1;
  const Rat scale(l, g);
  Row out;
  out.coeffs.reserve(r.coeffs.size());
  for (const auto& c : r.coeffs) out.coeffs.push_back(c * scale);
  out.rhs = r.rhs * scale;
  out.rel = r.rel;
  out.provenance = r.provenance;
  return out;
}

bool same_row(const Row& a, const Row& b) { return a.coeffs == b.coeffs && a.rhs == b.rhs && a.rel == b.rel; }

namespace {

bool row_less(const Row& a, const Row& b) {
  if (a.coeffs != b.coeffs)
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
  if (a.rhs != b.rhs) return a.rhs < b.rhs;
  return a.rel < b.rel;
}

}  // namespace

std::vector<Row> canonical_row_set(const std::vector<Row>& rows) {
  std::vector<Row> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(canonical_row(r));
  std::sort(out.begin(), out.end(), row_less);
  out.erase(std::unique(out.begin(), out.end(), same_row), out.end());
  return out;
}

std::string format_row(const Row& r, const std::vector<std::string>& variables) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    const Rat& c = r.coeffs[i];
    if (c.is_zero()) continue;
    const Rat mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (mag != Rat(1)) os << mag << '*';
    os << (i < variables.size() ? variables[i] : "x" + std::to_string(i));
    first = false;
  }
  if (first) os << '0';
  os << ' ' << relation_symbol(r.rel) << ' ' << r.rhs;
  return os.str();
}

}  // namespace lct
