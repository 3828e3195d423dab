#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "frob/errors.hpp"
#include "frob/functional.hpp"
#include "frob/polynomial.hpp"
#include "frob/scalar.hpp"

// Command-line polynomials:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := ('+' | '-') factor | atom ('^' digits)?
//   atom   := digits ('/' digits)? | 'u' digits? | 'i' | '(' expr ')'
// A bare 'u' is u1 and 'i' is the imaginary unit.

namespace frob::io {

namespace detail {

template <Scalar S>
class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars, std::size_t line, std::size_t column)
      : text_(text), num_vars_(num_vars), line_(line), column_(column) {}

  Polynomial<S> parse() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    auto p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  Polynomial<S> expr() {
    auto p = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial<S> term() {
    auto p = factor();
    for (;;) {
      skip_space();
      if (!accept('*')) return p;
      p = p * factor();
    }
  }

  Polynomial<S> factor() {
    skip_space();
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    auto base = atom();
    skip_space();
    if (accept('^')) {
      skip_space();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent after '^'");
      const auto digits = take_digits();
      if (digits.size() > 4) fail("exponent " + digits + " is too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial<S> atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string literal = take_digits();
      if (accept('/')) {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator after '/'");
        const auto den = take_digits();
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        literal += "/" + den;
      }
      return Polynomial<S>::constant(num_vars_, S(parse_rational(literal)));
    }
    if (c == 'u') {
      const auto start = pos_;
      advance();
      std::size_t index = 1;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        const auto digits = take_digits();
        index = digits.size() > 6 ? 0 : std::stoul(digits);
      }
      if (index == 0 || index > num_vars_) {
        fail_at(start, "variable " + std::string(text_.substr(start, pos_ - start)) + " is outside u1..u" +
                           std::to_string(num_vars_));
      }
      return Polynomial<S>::variable(num_vars_, index - 1);
    }
    if (c == 'i') {
      advance();
      return Polynomial<S>::constant(num_vars_, scalar_cast<S>(GaussianRational(0, 1)));
    }
    if (accept('(')) {
      auto p = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string take_digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      out += peek();
      advance();
    }
    return out;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  bool accept(char c) {
    if (at_end() || peek() != c) return false;
    advance();
    return true;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }
  [[noreturn]] void fail_at(std::size_t start, const std::string& message) const {
    throw ParseError(message, line_, column_ - (pos_ - start));
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace detail

template <Scalar S>
Polynomial<S> parse_polynomial(std::string_view text, std::size_t num_vars) {
  return detail::PolyParser<S>(text, num_vars, 1, 1).parse();
}

/// A scalar written in the same grammar without variables, e.g. "3/2-1/4*i".
template <Scalar S>
S parse_scalar(std::string_view text, std::size_t column = 1) {
  const auto p = detail::PolyParser<S>(text, 0, 1, column).parse();
  return p.coefficient(Monomial(std::size_t{0}));
}

/// Element of C(X) as comma-separated values, e.g. "1,0,1".
template <Scalar S>
FiniteElement<S> parse_finite_element(std::string_view text, std::size_t size) {
  FiniteElement<S> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.values.push_back(parse_scalar<S>(piece, start + 1));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.values.size() != size) {
    throw DimensionError("element has " + std::to_string(out.values.size()) + " values, the finite set has " +
                         std::to_string(size) + " points");
  }
  return out;
}

}  // namespace frob::io
