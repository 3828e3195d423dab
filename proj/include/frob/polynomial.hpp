#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frob/errors.hpp"
#include "frob/scalar.hpp"

namespace frob {

/// Exponent vector u1^e1 ... um^em. Ordered by total degree, then lexicographically.
class Monomial {
 public:
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw DimensionError("variable index out of range");
    Monomial m(num_vars);
    m.exps_[index] = 1;
    return m;
  }

  std::size_t num_vars() const noexcept { return exps_.size(); }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }
  std::uint32_t operator[](std::size_t i) const { return exps_.at(i); }

  unsigned degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0u);
  }
  bool is_unit() const { return degree() == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.num_vars() != b.num_vars()) throw DimensionError("monomials in different rings");
    Monomial out = a;
    for (std::size_t i = 0; i < out.exps_.size(); ++i) out.exps_[i] += b.exps_[i];
    return out;
  }

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.exps_ <=> b.exps_;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// "1", "u1", "u1^2*u3".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "u" + std::to_string(i + 1);
      if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::vector<std::uint32_t> exps_;
};

/// All monomials in num_vars variables of total degree <= max_degree, in
/// Monomial order (graded).
inline std::vector<Monomial> monomials_up_to(std::size_t num_vars, unsigned max_degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> exps(num_vars, 0);
  auto fill = [&](auto& self, std::size_t var, unsigned remaining) -> void {
    if (var + 1 == num_vars) {
      for (unsigned e = 0; e <= remaining; ++e) {
        exps[var] = e;
        out.emplace_back(exps);
      }
      exps[var] = 0;
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      exps[var] = e;
      self(self, var + 1, remaining - e);
    }
    exps[var] = 0;
  };
  if (num_vars == 0) {
    out.emplace_back(exps);
  } else {
    fill(fill, 0, max_degree);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sparse polynomial in u1..um. Zero coefficients are never stored.
template <Scalar S>
class Polynomial {
 public:
  using Terms = std::map<Monomial, S>;

  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const S& c) {
    Polynomial p(num_vars);
    p.add_term(Monomial(num_vars), c);
    return p;
  }
  static Polynomial one(std::size_t num_vars) { return constant(num_vars, S(1)); }
  static Polynomial variable(std::size_t num_vars, std::size_t index) {
    Polynomial p(num_vars);
    p.add_term(Monomial::variable(num_vars, index), S(1));
    return p;
  }
  static Polynomial monomial(const Monomial& m, const S& c = S(1)) {
    Polynomial p(m.num_vars());
    p.add_term(m, c);
    return p;
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
  }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Monomial& m, const S& c) {
    if (m.num_vars() != num_vars_) throw DimensionError("monomial has the wrong number of variables");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const S& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [m, v] : a.terms_) v = -v;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const S& c) { return a *= c; }
  friend Polynomial operator*(const S& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_ring(b);
    Polynomial out(a.num_vars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = one(num_vars_);
    Polynomial base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }
  /// Structural order, used only for canonical sorting and memo keys.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars_ != b.num_vars_) return a.num_vars_ < b.num_vars_;
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& x, const auto& y) {
          if (x.first != y.first) return x.first < y.first;
          return x.second < y.second;
        });
  }

  /// Highest degree terms first, e.g. "u1^2 - 3*u1 + 2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string coeff = to_string(c);
      bool negative = false;
      const bool compound = coeff.find_first_of("+-", 1) != std::string::npos;
      if (!compound && coeff.front() == '-') {
        negative = true;
        coeff.erase(0, 1);
      }
      if (compound) coeff = "(" + coeff + ")";
      std::string term;
      if (m.is_unit()) {
        term = coeff;
      } else if (coeff == "1") {
        term = m.str();
      } else {
        term = coeff + "*" + m.str();
      }
      if (out.empty()) {
        out = negative ? "-" + term : term;
      } else {
        out += negative ? " - " : " + ";
        out += term;
      }
    }
    return out;
  }

 private:
  void check_same_ring(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw DimensionError("polynomials in different rings");
  }

  std::size_t num_vars_;
  Terms terms_;
};

template <Scalar S>
S monomial_eval(const Monomial& m, std::span<const S> x) {
  S value(1);
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    for (std::uint32_t e = 0; e < m[i]; ++e) value *= x[i];
  }
  return value;
}

/// Value of p at the point x.
template <Scalar S>
S poly_eval(const Polynomial<S>& p, std::span<const S> x) {
  if (x.size() != p.num_vars()) {
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                         std::to_string(p.num_vars()) + " variables");
  }
  S total(0);
  for (const auto& [m, c] : p.terms()) total += c * monomial_eval<S>(m, x);
  return total;
}

template <Scalar S>
S poly_eval(const Polynomial<S>& p, const std::vector<S>& x) {
  return poly_eval(p, std::span<const S>(x));
}

/// sum_k coeffs[k] * psi^k, with coeffs in ascending order.
template <Scalar S>
Polynomial<S> compose(std::span<const S> coeffs, const Polynomial<S>& psi) {
  Polynomial<S> out(psi.num_vars());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    out = out * psi;
    out += Polynomial<S>::constant(psi.num_vars(), *it);
  }
  return out;
}

template <Scalar To, Scalar From>
Polynomial<To> polynomial_cast(const Polynomial<From>& p) {
  Polynomial<To> out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, scalar_cast<To>(c));
  return out;
}

}  // namespace frob
