#pragma once

/// \file dsl.hpp
/// Text syntax for operator polynomials.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('-' | '+') unary | factor
///   factor  := atom ('^' uint)?
///   atom    := number | 'i' | 'hbar' | symbol | pair | '(' expr ')'
///   symbol  := ('z' | 'w' | 'dz' | 'dw') '[' uint ']'
///   pair    := '(' real ',' real ')'        real := ['-'|'+'] number ['/' number]
///
/// Products are operator compositions, so "dz[0]*z[0]" parses to
/// "z[0] * dz[0] + 1". Decimal literals convert to rationals exactly.

#include "bargmann/operator.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bargmann::dsl {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected)
      : std::runtime_error(message), span_(span), expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

/// An exponent, or an exponent produced by evaluation, exceeds kMaxExponent.
class ExponentOverflow : public ParseError {
 public:
  using ParseError::ParseError;
};

inline constexpr std::uint32_t kMaxExponent = 64;

struct ParseOptions {
  Rational hbar{1};
};

namespace detail {

enum class Tok { Number, Ident, LBracket, RBracket, LParen, RParen, Comma, Plus, Minus, Star, Caret, Slash, End };

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

inline std::string describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok k) {
      out.push_back({k, src.substr(start, 1), {start, start + 1}});
      ++i;
    };
    switch (c) {
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '+': single(Tok::Plus); continue;
      case '-': single(Tok::Minus); continue;
      case '*': single(Tok::Star); continue;
      case '^': single(Tok::Caret); continue;
      case '/': single(Tok::Slash); continue;
      default: break;
    }
    if (bargmann::detail::is_digit(c)) {
      while (i < src.size() && bargmann::detail::is_digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        if (i >= src.size() || !bargmann::detail::is_digit(src[i]))
          throw ParseError("digit expected after decimal point", {i, std::min(i + 1, src.size())}, {"digit"});
        while (i < src.size() && bargmann::detail::is_digit(src[i])) ++i;
      }
      out.push_back({Tok::Number, src.substr(start, i - start), {start, i}});
      continue;
    }
    if (is_alpha(c)) {
      while (i < src.size() && is_alpha(src[i])) ++i;
      out.push_back({Tok::Ident, src.substr(start, i - start), {start, i}});
      continue;
    }
    throw ParseError(std::string("unexpected character"), {start, start + 1},
                     {"number", "identifier", "'('", "'+'", "'-'"});
  }
  out.push_back({Tok::End, src.substr(src.size()), {src.size(), src.size()}});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& opts) : tokens_(tokenize(src)), opts_(opts) {}

  OperatorPolynomial parse_all() {
    OperatorPolynomial result = expr();
    expect(Tok::End, {"'+'", "'-'", "'*'", "'^'", "end of input"});
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    throw ParseError(message + ", found " + describe(peek().kind), peek().span, std::move(expected));
  }
  const Token& expect(Tok kind, std::vector<std::string> expected) {
    if (peek().kind != kind) fail("expected " + describe(kind), std::move(expected));
    return advance();
  }

  static void check_exponents(const OperatorPolynomial& p, SourceSpan span) {
    for (const auto& [key, c] : p.terms()) {
      for (const auto* idx : {&key.first, &key.second})
        for (const auto& [v, e] : idx->entries())
          if (e > kMaxExponent)
            throw ExponentOverflow("exponent exceeds " + std::to_string(kMaxExponent), span, {"smaller exponent"});
    }
  }

  OperatorPolynomial expr() {
    OperatorPolynomial acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = advance().kind == Tok::Minus;
      OperatorPolynomial rhs = term();
      if (minus) acc -= rhs;
      else acc += rhs;
    }
    return acc;
  }

  OperatorPolynomial term() {
    const std::size_t start = peek().span.start;
    OperatorPolynomial acc = unary();
    while (peek().kind == Tok::Star) {
      advance();
      OperatorPolynomial rhs = unary();
      acc = compose(acc, rhs);
      check_exponents(acc, {start, peek().span.start});
    }
    return acc;
  }

  OperatorPolynomial unary() {
    if (peek().kind == Tok::Minus) {
      advance();
      return unary() * Coefficient(-1);
    }
    if (peek().kind == Tok::Plus) {
      advance();
      return unary();
    }
    return factor();
  }

  OperatorPolynomial factor() {
    const std::size_t start = peek().span.start;
    OperatorPolynomial base = atom();
    if (peek().kind != Tok::Caret) return base;
    advance();
    const Token& num = peek();
    if (num.kind != Tok::Number || num.text.find('.') != std::string_view::npos)
      fail("expected an unsigned integer exponent", {"unsigned integer"});
    advance();
    const std::uint32_t n = parse_uint(num, kMaxExponent, true);
    OperatorPolynomial result = OperatorPolynomial::identity();
    for (std::uint32_t k = 0; k < n; ++k) {
      result = compose(result, base);
      check_exponents(result, {start, num.span.end});
    }
    return result;
  }

  static std::uint32_t parse_uint(const Token& t, std::uint64_t limit, bool exponent) {
    std::uint64_t v = 0;
    for (char c : t.text) {
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > limit) {
        if (exponent)
          throw ExponentOverflow("exponent exceeds " + std::to_string(kMaxExponent), t.span, {"exponent <= 64"});
        throw ParseError("integer out of range", t.span, {"smaller integer"});
      }
    }
    return static_cast<std::uint32_t>(v);
  }

  /// [sign] number ['/' number] inside a coefficient pair.
  Rational pair_component() {
    bool negative = false;
    if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) negative = advance().kind == Tok::Minus;
    const Token& num = expect(Tok::Number, {"number"});
    Rational value = rational_from_decimal(num.text);
    if (peek().kind == Tok::Slash) {
      advance();
      const Token& den = expect(Tok::Number, {"number"});
      const Rational d = rational_from_decimal(den.text);
      if (d == 0) throw ParseError("zero denominator", den.span, {"nonzero number"});
      value /= d;
    }
    return negative ? Rational(-value) : value;
  }

  /// True if the tokens after '(' read: [sign] number ['/' number] ','.
  bool looks_like_pair() const {
    std::size_t k = 1;
    if (peek(k).kind == Tok::Minus || peek(k).kind == Tok::Plus) ++k;
    if (peek(k).kind != Tok::Number) return false;
    ++k;
    if (peek(k).kind == Tok::Slash) {
      if (peek(k + 1).kind != Tok::Number) return false;
      k += 2;
    }
    return peek(k).kind == Tok::Comma;
  }

  OperatorPolynomial atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        advance();
        return OperatorPolynomial::scalar(Coefficient(rational_from_decimal(t.text)));
      case Tok::LParen: {
        if (looks_like_pair()) {
          advance();
          Rational re = pair_component();
          expect(Tok::Comma, {"','"});
          Rational im = pair_component();
          expect(Tok::RParen, {"')'"});
          return OperatorPolynomial::scalar(Coefficient(std::move(re), std::move(im)));
        }
        advance();
        OperatorPolynomial inner = expr();
        expect(Tok::RParen, {"')'", "'+'", "'-'", "'*'"});
        return inner;
      }
      case Tok::Ident: {
        advance();
        if (t.text == "i") return OperatorPolynomial::scalar(Coefficient::i());
        if (t.text == "hbar") return OperatorPolynomial::scalar(Coefficient(opts_.hbar));
        const bool is_deriv = t.text == "dz" || t.text == "dw";
        const bool is_var = t.text == "z" || t.text == "w";
        if (!is_deriv && !is_var)
          throw ParseError("unknown identifier '" + std::string(t.text) + "'", t.span,
                           {"z", "w", "dz", "dw", "i", "hbar"});
        expect(Tok::LBracket, {"'['"});
        const Token& idx = expect(Tok::Number, {"site index"});
        if (idx.text.find('.') != std::string_view::npos)
          throw ParseError("site index must be an unsigned integer", idx.span, {"unsigned integer"});
        const std::uint32_t site = parse_uint(idx, UINT32_MAX, false);
        expect(Tok::RBracket, {"']'"});
        const Flavor f = (t.text.back() == 'z') ? Flavor::Z : Flavor::W;
        const VariableId v{site, f};
        return is_deriv ? OperatorPolynomial::derivative(v) : OperatorPolynomial::variable(v);
      }
      default:
        fail("expected an operand", {"number", "symbol", "'('", "'-'"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
};

}  // namespace detail

/// Parses `text` into canonical normal-ordered form.
inline OperatorPolynomial parse(std::string_view text, const ParseOptions& opts = {}) {
  return detail::Parser(text, opts).parse_all();
}

/// Canonical text: terms in key order joined by " + ", each
/// `(re,im) * z[i]^p * w[i]^q * dz[i]^r * dw[i]^t` with unit exponents and a
/// (1,0) coefficient elided. The zero operator prints as "0".
inline std::string format(const OperatorPolynomial& op) {
  if (op.is_zero()) return "0";
  const Coefficient one(1);
  std::string out;
  for (const auto& [key, c] : op.terms()) {
    if (!out.empty()) out += " + ";
    std::vector<std::string> factors;
    if (!(c == one)) factors.push_back(to_string(c));
    for (const auto& [v, e] : key.first.entries())
      factors.push_back(to_string(v) + (e != 1 ? "^" + std::to_string(e) : ""));
    for (const auto& [v, e] : key.second.entries())
      factors.push_back("d" + to_string(v) + (e != 1 ? "^" + std::to_string(e) : ""));
    if (factors.empty()) factors.push_back("1");
    for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? " * " : "") + factors[k];
  }
  return out;
}

}  // namespace bargmann::dsl
