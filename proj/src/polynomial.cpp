// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ccvp/errors.hpp"

namespace ccvp {

namespace {

// Double-double helpers built on error-free transforms. The low word carries
// what a plain sum or product rounds away.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  const DD r = two_sum(s.hi, s.lo);
  return r;
}

inline DD dd_mul_double(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  const DD r = two_sum(p.hi, p.lo);
  return r;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw UsageError("polynomial: variable index out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (int k : e) t += k;
    d = std::max(d, t);
  }
  return d;
}

int Polynomial::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Polynomial::add_term(const Exponents& exps, double coeff) {
  if (exps.size() != nvars_) throw UsageError("polynomial: exponent vector length mismatch");
  if (coeff == 0.0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw UsageError("polynomial: mixed variable counts");
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw UsageError("polynomial: mixed variable counts");
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw UsageError("polynomial: mixed variable counts");
  Polynomial r(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::negate() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw UsageError("polynomial: negative exponent");
  Polynomial r = Polynomial::constant(nvars_, 1.0);
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

Polynomial Polynomial::differentiate(std::size_t var) const {
  if (var >= nvars_) throw UsageError("polynomial: derivative variable index out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * static_cast<double>(e[var]));
  }
  return r;
}

double Polynomial::eval(const Vec& x) const {
  require_size(x, nvars_, "polynomial eval");
  DD acc{0.0, 0.0};
  for (const auto& [e, c] : terms_) {
    DD m{c, 0.0};
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m = dd_mul_double(m, x[i]);
    acc = dd_add(acc, m);
  }
  return acc.hi + acc.lo;
}

std::string Polynomial::to_string(const std::vector<std::string>& vars) const {
  if (vars.size() != nvars_) throw UsageError("polynomial: variable name list length mismatch");
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    char buf[40];
    if (out.empty()) {
      std::snprintf(buf, sizeof(buf), "%.17g", c);
      out += buf;
    } else if (c < 0.0) {
      std::snprintf(buf, sizeof(buf), "%.17g", -c);
      out += " - ";
      out += buf;
    } else {
      std::snprintf(buf, sizeof(buf), "%.17g", c);
      out += " + ";
      out += buf;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      out += "*";
      out += vars[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

namespace {

struct Token {
  enum Kind { Number, Name, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
  double value = 0.0;
  std::string text;
  int column = 0;  // 1-based
};

class Lexer {
 public:
  Lexer(const std::string& s, int line, int col_offset)
      : s_(s), line_(line), col_offset_(col_offset) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, int column) const {
    throw ParseError(msg, line_, column + col_offset_);
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    tok_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::End;
      return;
    }
    const char c = s_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Plus; ++pos_; return;
      case '-': tok_.kind = Token::Minus; ++pos_; return;
      case '*': tok_.kind = Token::Star; ++pos_; return;
      case '^': tok_.kind = Token::Caret; ++pos_; return;
      case '(': tok_.kind = Token::LParen; ++pos_; return;
      case ')': tok_.kind = Token::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(start, &end);
      if (end == start) fail("malformed number", tok_.column);
      tok_.kind = Token::Number;
      tok_.value = v;
      tok_.text.assign(start, static_cast<const char*>(end));
      pos_ += static_cast<std::size_t>(end - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_.kind = Token::Name;
      tok_.text = s_.substr(pos_, j - pos_);
      pos_ = j;
      return;
    }
    fail(std::string("unexpected character '") + c + "'", tok_.column);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  Token tok_;
  int line_;
  int col_offset_;
};

class Parser {
 public:
  Parser(Lexer& lex, const std::vector<std::string>& vars)
      : lex_(lex), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    if (lex_.peek().kind != Token::End)
      lex_.fail("trailing input after expression", lex_.peek().column);
    return p;
  }

 private:
  Polynomial expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      neg = true;
    }
    Polynomial p = term();
    if (neg) p = p.negate();
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      const bool minus = lex_.take().kind == Token::Minus;
      Polynomial t = term();
      p = minus ? p - t : p + t;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      p = p * factor();
    }
    return p;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (lex_.peek().kind != Token::Caret) return b;
    lex_.take();
    const Token e = lex_.peek();
    if (e.kind != Token::Number) lex_.fail("expected exponent after '^'", e.column);
    const double v = e.value;
    if (v < 0.0 || v != std::floor(v) || e.text.find_first_of(".eE") != std::string::npos)
      lex_.fail("exponent must be a nonnegative integer", e.column);
    lex_.take();
    return b.pow(static_cast<int>(v));
  }

  Polynomial base() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Token::Number:
        lex_.take();
        return Polynomial::constant(vars_.size(), t.value);
      case Token::Name: {
        lex_.take();
        for (std::size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == t.text) return Polynomial::variable(vars_.size(), i);
        lex_.fail("unknown variable '" + t.text + "'", t.column);
      }
      case Token::LParen: {
        lex_.take();
        Polynomial p = expr();
        if (lex_.peek().kind != Token::RParen)
          lex_.fail("expected ')'", lex_.peek().column);
        lex_.take();
        return p;
      }
      default:
        lex_.fail("expected number, variable or '('", t.column);
    }
  }

  Lexer& lex_;
  const std::vector<std::string>& vars_;
};

}  // namespace

Polynomial parse_expression(const std::string& text,
                            const std::vector<std::string>& vars,
                            int line_for_errors,
                            int column_offset) {
  Lexer lex(text, line_for_errors, column_offset);
  Parser parser(lex, vars);
  return parser.parse();
}

}  // namespace ccvp
