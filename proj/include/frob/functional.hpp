#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frob/errors.hpp"
#include "frob/polynomial.hpp"
#include "frob/scalar.hpp"

// The two concrete algebras: C(X) for a finite set X (value vectors with
// pointwise product) and the polynomial ring C[u1..um], together with linear
// functionals on them.

namespace frob {

/// Element of C(X): one value per point of X.
template <Scalar S>
struct FiniteElement {
  std::vector<S> values;

  static FiniteElement one(std::size_t size) { return {std::vector<S>(size, S(1))}; }
  /// e_r, the indicator of point r.
  static FiniteElement indicator(std::size_t size, std::size_t r) {
    FiniteElement e{std::vector<S>(size, S(0))};
    e.values.at(r) = S(1);
    return e;
  }

  std::size_t size() const noexcept { return values.size(); }

  friend FiniteElement operator*(const FiniteElement& a, const FiniteElement& b) {
    if (a.size() != b.size()) throw LabelMismatchError("finite elements over different sets");
    FiniteElement out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= b.values[i];
    return out;
  }
  friend FiniteElement operator+(const FiniteElement& a, const FiniteElement& b) {
    if (a.size() != b.size()) throw LabelMismatchError("finite elements over different sets");
    FiniteElement out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
  }
  friend FiniteElement operator*(const S& c, const FiniteElement& a) {
    FiniteElement out = a;
    for (auto& v : out.values) v *= c;
    return out;
  }
  friend bool operator==(const FiniteElement&, const FiniteElement&) = default;
  friend bool operator<(const FiniteElement& a, const FiniteElement& b) { return a.values < b.values; }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += to_string(values[i]);
    }
    return out + ")";
  }
};

/// Linear functional on C(X), stored as its values f(e_r) on the indicators.
template <Scalar S>
class FiniteFunctional {
 public:
  using scalar_type = S;
  using element_type = FiniteElement<S>;

  FiniteFunctional(std::vector<std::string> labels, std::vector<S> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.empty()) throw InvalidArgumentError("finite set must be nonempty");
    if (labels_.size() != values_.size()) {
      throw LabelMismatchError("finite functional has " + std::to_string(labels_.size()) + " labels but " +
                               std::to_string(values_.size()) + " values");
    }
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgumentError("finite set labels must be distinct");
    }
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<S>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return labels_.size(); }

  S operator()(const element_type& a) const {
    check_element(a);
    S total(0);
    for (std::size_t i = 0; i < values_.size(); ++i) total += values_[i] * a.values[i];
    return total;
  }

  element_type unit() const { return element_type::one(size()); }
  element_type multiply(const element_type& a, const element_type& b) const { return a * b; }

  void check_element(const element_type& a) const {
    if (a.size() != size()) {
      throw LabelMismatchError("element has " + std::to_string(a.size()) + " values, set has " +
                               std::to_string(size()) + " points");
    }
  }
  void check_arguments(std::span<const element_type> args) const {
    for (const auto& a : args) check_element(a);
  }

  friend FiniteFunctional operator+(const FiniteFunctional& f, const FiniteFunctional& g) {
    if (f.labels_ != g.labels_) throw LabelMismatchError("functionals on different finite sets");
    auto values = f.values_;
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += g.values_[i];
    return FiniteFunctional(f.labels_, std::move(values));
  }

 private:
  std::vector<std::string> labels_;
  std::vector<S> values_;
};

/// Linear functional on C[u1..um] known through its moments f(u^a) for every
/// monomial of total degree <= D. Evaluation above degree D is an error.
template <Scalar S>
class MomentFunctional {
 public:
  using scalar_type = S;
  using element_type = Polynomial<S>;

  MomentFunctional(std::size_t num_vars, unsigned degree_bound, std::map<Monomial, S> moments)
      : num_vars_(num_vars), degree_bound_(degree_bound), moments_(std::move(moments)) {
    if (num_vars_ == 0) throw InvalidArgumentError("moment functional needs at least one variable");
    for (const auto& [m, v] : moments_) {
      if (m.num_vars() != num_vars_) {
        throw DimensionError("moment " + m.str() + " has the wrong number of variables");
      }
      if (m.degree() > degree_bound_) {
        throw DegreeOverflowError("moment " + m.str() + " exceeds degree bound " + std::to_string(degree_bound_));
      }
    }
    for (const auto& m : monomials_up_to(num_vars_, degree_bound_)) {
      if (!moments_.contains(m)) {
        throw InvalidArgumentError("moment table is incomplete: missing " + m.str());
      }
    }
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree_bound() const noexcept { return degree_bound_; }
  const std::map<Monomial, S>& moments() const noexcept { return moments_; }

  const S& moment(const Monomial& m) const {
    if (m.num_vars() != num_vars_) throw DimensionError("monomial has the wrong number of variables");
    if (m.degree() > degree_bound_) {
      throw DegreeOverflowError("monomial " + m.str() + " has degree " + std::to_string(m.degree()) +
                                " above the moment bound " + std::to_string(degree_bound_));
    }
    return moments_.at(m);
  }

  S operator()(const element_type& p) const {
    check_element(p);
    S total(0);
    for (const auto& [m, c] : p.terms()) total += c * moments_.at(m);
    return total;
  }

  element_type unit() const { return element_type::one(num_vars_); }
  element_type multiply(const element_type& a, const element_type& b) const { return a * b; }

  void check_element(const element_type& p) const {
    if (p.num_vars() != num_vars_) {
      throw DimensionError("polynomial has " + std::to_string(p.num_vars()) + " variables, functional has " +
                           std::to_string(num_vars_));
    }
    if (p.degree() > static_cast<int>(degree_bound_)) {
      throw DegreeOverflowError("polynomial of degree " + std::to_string(p.degree()) +
                                " exceeds the moment bound " + std::to_string(degree_bound_));
    }
  }

  /// All products of sub-tuples must stay within the degree bound.
  void check_arguments(std::span<const element_type> args) const {
    long total = 0;
    for (const auto& a : args) {
      if (a.num_vars() != num_vars_) throw DimensionError("argument has the wrong number of variables");
      total += std::max(a.degree(), 0);
    }
    if (total > static_cast<long>(degree_bound_)) {
      throw DegreeOverflowError("product of arguments has degree " + std::to_string(total) +
                                " above the moment bound " + std::to_string(degree_bound_));
    }
  }

  friend MomentFunctional operator+(const MomentFunctional& f, const MomentFunctional& g) {
    if (f.num_vars_ != g.num_vars_ || f.degree_bound_ != g.degree_bound_) {
      throw DimensionError("moment tables of different shape");
    }
    auto moments = f.moments_;
    for (auto& [m, v] : moments) v += g.moments_.at(m);
    return MomentFunctional(f.num_vars_, f.degree_bound_, std::move(moments));
  }

  friend MomentFunctional operator*(const S& c, const MomentFunctional& f) {
    auto moments = f.moments_;
    for (auto& [m, v] : moments) v *= c;
    return MomentFunctional(f.num_vars_, f.degree_bound_, std::move(moments));
  }

  /// Same functional with a lower degree bound.
  MomentFunctional truncated(unsigned degree_bound) const {
    if (degree_bound > degree_bound_) throw DegreeOverflowError("cannot raise the degree bound of a moment table");
    std::map<Monomial, S> moments;
    for (const auto& [m, v] : moments_) {
      if (m.degree() <= degree_bound) moments.emplace(m, v);
    }
    return MomentFunctional(num_vars_, degree_bound, std::move(moments));
  }

 private:
  std::size_t num_vars_;
  unsigned degree_bound_;
  std::map<Monomial, S> moments_;
};

template <Scalar To, Scalar From>
MomentFunctional<To> functional_cast(const MomentFunctional<From>& f) {
  std::map<Monomial, To> moments;
  for (const auto& [m, v] : f.moments()) moments.emplace(m, scalar_cast<To>(v));
  return MomentFunctional<To>(f.num_vars(), f.degree_bound(), std::move(moments));
}

template <Scalar To, Scalar From>
FiniteFunctional<To> functional_cast(const FiniteFunctional<From>& f) {
  std::vector<To> values;
  for (const auto& v : f.values()) values.push_back(scalar_cast<To>(v));
  return FiniteFunctional<To>(f.labels(), std::move(values));
}

/// Anything Frobenius transformations can be computed for: a linear functional
/// together with the multiplication of its algebra.
template <class F>
concept AlgebraFunctional =
    Scalar<typename F::scalar_type> &&
    requires(const F& f, const typename F::element_type& a, std::span<const typename F::element_type> args) {
      { f(a) } -> std::same_as<typename F::scalar_type>;
      { f.unit() } -> std::same_as<typename F::element_type>;
      { f.multiply(a, a) } -> std::same_as<typename F::element_type>;
      f.check_arguments(args);
    };

/// Linear extension of the functional's defining data.
template <AlgebraFunctional F>
typename F::scalar_type functional_apply(const F& f, const typename F::element_type& a) {
  return f(a);
}

template <Scalar S>
struct PointEntry {
  std::vector<S> point;
  std::uint32_t multiplicity;

  friend bool operator==(const PointEntry&, const PointEntry&) = default;
};

/// Multiset [x1, ..., xn] of points of C^m, stored as distinct points with
/// positive multiplicities. Exactly equal points are merged on construction.
template <Scalar S>
class PointMultiset {
 public:
  explicit PointMultiset(std::size_t num_vars, std::vector<PointEntry<S>> entries = {}) : num_vars_(num_vars) {
    for (auto& e : entries) add(std::move(e.point), e.multiplicity);
  }

  void add(std::vector<S> point, std::uint32_t multiplicity = 1) {
    if (point.size() != num_vars_) {
      throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                           std::to_string(num_vars_));
    }
    if (multiplicity == 0) throw InvalidArgumentError("multiplicities must be positive");
    for (auto& e : entries_) {
      if (e.point == point) {
        e.multiplicity += multiplicity;
        return;
      }
    }
    entries_.push_back({std::move(point), multiplicity});
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<PointEntry<S>>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// n = sum of multiplicities.
  std::uint32_t degree() const {
    std::uint32_t n = 0;
    for (const auto& e : entries_) n += e.multiplicity;
    return n;
  }

  /// Entries sorted by point; two multisets are equal iff their canonical forms are.
  PointMultiset canonical() const {
    PointMultiset out = *this;
    std::sort(out.entries_.begin(), out.entries_.end(),
              [](const PointEntry<S>& a, const PointEntry<S>& b) {
                if (a.point != b.point) return a.point < b.point;
                return a.multiplicity < b.multiplicity;
              });
    return out;
  }

  friend bool operator==(const PointMultiset& a, const PointMultiset& b) {
    return a.num_vars_ == b.num_vars_ && a.canonical().entries_ == b.canonical().entries_;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += "(";
      for (std::size_t j = 0; j < entries_[i].point.size(); ++j) {
        if (j) out += ",";
        out += to_string(entries_[i].point[j]);
      }
      out += "):" + std::to_string(entries_[i].multiplicity);
    }
    return out + "}";
  }

 private:
  std::size_t num_vars_;
  std::vector<PointEntry<S>> entries_;
};

/// Moments of sum_j mult_j * ev_{x_j} for every monomial of degree <= D.
template <Scalar S>
MomentFunctional<S> evaluation_functional(const PointMultiset<S>& points, unsigned degree_bound) {
  const std::size_t m = points.num_vars();
  std::map<Monomial, S> moments;
  for (const auto& mono : monomials_up_to(m, degree_bound)) {
    S total(0);
    for (const auto& e : points.entries()) {
      total += S(static_cast<long long>(e.multiplicity)) * monomial_eval<S>(mono, std::span<const S>(e.point));
    }
    moments.emplace(mono, std::move(total));
  }
  return MomentFunctional<S>(m, degree_bound, std::move(moments));
}

/// Multiset of points of a finite set, as (label, multiplicity) pairs.
struct LabelMultiset {
  std::vector<std::pair<std::string, std::uint32_t>> entries;

  std::uint32_t degree() const {
    std::uint32_t n = 0;
    for (const auto& [label, mult] : entries) n += mult;
    return n;
  }
  friend bool operator==(const LabelMultiset& a, const LabelMultiset& b) {
    auto x = a.entries;
    auto y = b.entries;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }
};

/// sum over the multiset of evaluation at each point, as a functional on C(X).
template <Scalar S>
FiniteFunctional<S> finite_evaluation_functional(const std::vector<std::string>& labels,
                                                 const LabelMultiset& points) {
  std::vector<S> values(labels.size(), S(0));
  for (const auto& [label, mult] : points.entries) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw LabelMismatchError("unknown point label '" + label + "'");
    values[static_cast<std::size_t>(it - labels.begin())] += S(static_cast<long long>(mult));
  }
  return FiniteFunctional<S>(labels, std::move(values));
}

}  // namespace frob
