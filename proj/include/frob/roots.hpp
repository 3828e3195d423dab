#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frob/errors.hpp"
#include "frob/scalar.hpp"

// Roots with multiplicity of monic univariate polynomials. Coefficient lists
// are in ascending order: {c0, c1, ..., 1} is c0 + c1 t + ... + t^n.

namespace frob {

struct RootOptions {
  /// Float mode: roots closer than this (relative to max(1, |root|)) are one cluster.
  double cluster_tolerance = 1e-6;
  unsigned max_iterations = 2000;
  /// Working precision for the simultaneous iteration; 0 keeps the current default.
  unsigned precision_bits = 0;
};

template <Scalar S>
struct Root {
  S value;
  std::uint32_t multiplicity;

  friend bool operator==(const Root&, const Root&) = default;
};

namespace univariate {

template <Scalar S>
using Coeffs = std::vector<S>;

template <Scalar S>
void trim(Coeffs<S>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <Scalar S>
int degree(const Coeffs<S>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <Scalar S>
S eval(std::span<const S> p, const S& t) {
  S value(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) value = value * t + *it;
  return value;
}

template <Scalar S>
Coeffs<S> derivative(const Coeffs<S>& p) {
  Coeffs<S> out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * S(static_cast<long long>(k)));
  trim(out);
  return out;
}

template <Scalar S>
Coeffs<S> monic(Coeffs<S> p) {
  trim(p);
  if (p.empty()) return p;
  const S lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

/// Quotient and remainder of a / b over a field.
template <Scalar S>
std::pair<Coeffs<S>, Coeffs<S>> divmod(Coeffs<S> a, Coeffs<S> b) {
  trim(a);
  trim(b);
  if (b.empty()) throw InvalidArgumentError("polynomial division by zero");
  if (a.size() < b.size()) return {Coeffs<S>{}, a};
  Coeffs<S> q(a.size() - b.size() + 1, S(0));
  const S lead = b.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const S c = a[i + b.size() - 1] / lead;
    q[i] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

/// Monic gcd (exact arithmetic only).
template <Scalar S>
Coeffs<S> gcd(Coeffs<S> a, Coeffs<S> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

template <Scalar S>
Coeffs<S> exact_quotient(const Coeffs<S>& a, const Coeffs<S>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw InconsistencyError("polynomial division left a remainder");
  return q;
}

template <Scalar S>
Coeffs<S> subtract(Coeffs<S> a, const Coeffs<S>& b) {
  if (a.size() < b.size()) a.resize(b.size(), S(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Yun's square-free decomposition of a monic polynomial: factors a_i
/// (monic, square-free, pairwise coprime) with p = prod a_i^i.
template <Scalar S>
std::vector<std::pair<Coeffs<S>, std::uint32_t>> squarefree_decomposition(const Coeffs<S>& p) {
  static_assert(is_exact_v<S>, "square-free decomposition needs exact arithmetic");
  std::vector<std::pair<Coeffs<S>, std::uint32_t>> out;
  const Coeffs<S> f = monic(p);
  if (degree(f) < 1) return out;
  const Coeffs<S> df = derivative(f);
  const Coeffs<S> b = gcd(f, df);
  Coeffs<S> c = exact_quotient(f, b);
  Coeffs<S> d = subtract(exact_quotient(df, b), derivative(c));
  for (std::uint32_t i = 1; degree(c) > 0; ++i) {
    Coeffs<S> a = gcd(c, d);
    c = exact_quotient(c, a);
    d = subtract(exact_quotient(d, a), derivative(c));
    if (degree(a) > 0) out.emplace_back(std::move(a), i);
  }
  return out;
}

}  // namespace univariate

namespace detail {

inline Real epsilon_for(unsigned bits) { return boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits)); }

/// sum |c_k| |z|^k, the scale of rounding errors in Horner evaluation.
inline Real absolute_eval(std::span<const ComplexFloat> p, const Real& r) {
  Real value = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) value = value * r + it->abs();
  return value;
}

}  // namespace detail

/// All n roots of a monic polynomial by Aberth-Ehrlich simultaneous iteration.
/// Each approximation stops once its backward error reaches rounding level.
inline std::vector<ComplexFloat> aberth_roots(std::span<const ComplexFloat> monic_coeffs,
                                              const RootOptions& options = {}) {
  std::optional<ScopedFloatPrecision> precision;
  if (options.precision_bits) precision.emplace(options.precision_bits);
  if (monic_coeffs.size() < 2) throw InvalidArgumentError("root finding needs degree >= 1");
  const std::size_t n = monic_coeffs.size() - 1;
  std::vector<ComplexFloat> p;
  for (const auto& c : monic_coeffs) p.emplace_back(c.real(), c.imag());
  if (!(p.back() == ComplexFloat(1))) throw InvalidArgumentError("polynomial must be monic");
  if (n == 1) return {-p[0]};

  std::vector<ComplexFloat> dp;
  for (std::size_t k = 1; k < p.size(); ++k) dp.push_back(p[k] * ComplexFloat(static_cast<long long>(k)));

  const unsigned bits = p.back().precision_bits();
  const Real eps = detail::epsilon_for(bits);

  // Fujiwara bound on root moduli.
  Real radius = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Real a = p[k].abs();
    if (a == 0) continue;
    radius = std::max(radius, Real(boost::multiprecision::pow(a, Real(1) / Real(static_cast<long long>(n - k)))));
  }
  radius = radius == 0 ? Real(1) : Real(2 * radius);

  std::vector<ComplexFloat> z(n);
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (std::size_t j = 0; j < n; ++j) {
    const Real angle = two_pi * Real(static_cast<long long>(j)) / Real(static_cast<long long>(n)) + Real(0.7);
    z[j] = ComplexFloat(Real(radius * boost::multiprecision::cos(angle)),
                        Real(radius * boost::multiprecision::sin(angle)));
  }

  std::vector<bool> done(n, false);
  const Real backward_factor = Real(32 * static_cast<long long>(n)) * eps;
  for (unsigned iter = 0; iter < options.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      const ComplexFloat value = univariate::eval<ComplexFloat>(p, z[j]);
      const Real zabs = z[j].abs();
      if (value.abs() <= backward_factor * detail::absolute_eval(p, zabs)) {
        done[j] = true;
        continue;
      }
      all_done = false;
      const ComplexFloat slope = univariate::eval<ComplexFloat>(dp, z[j]);
      ComplexFloat correction;
      if (slope.is_zero()) {
        correction = ComplexFloat(Real(eps * (1 + zabs)), Real(eps * (1 + zabs)));
      } else {
        const ComplexFloat ratio = value / slope;
        ComplexFloat repulsion(0);
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          const ComplexFloat diff = z[j] - z[l];
          if (!diff.is_zero()) repulsion += ComplexFloat(1) / diff;
        }
        const ComplexFloat denom = ComplexFloat(1) - ratio * repulsion;
        correction = denom.is_zero() ? ratio : ratio / denom;
      }
      z[j] -= correction;
      if (correction.abs() <= 4 * eps * (1 + zabs)) done[j] = true;
    }
    if (all_done) return z;
  }
  Real worst = 0;
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, univariate::eval<ComplexFloat>(p, z[j]).abs());
  throw NumericalError("root iteration did not converge after " + std::to_string(options.max_iterations) +
                       " iterations (degree " + std::to_string(n) + ", max |p(z)| = " + worst.str(6) + ")");
}

/// Groups approximations lying within the tolerance of each other (single
/// linkage) and reports cluster means with their sizes as multiplicities.
inline std::vector<Root<ComplexFloat>> cluster_roots(const std::vector<ComplexFloat>& approximations,
                                                     double tolerance) {
  const std::size_t n = approximations.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto close = [&](const ComplexFloat& a, const ComplexFloat& b, double factor) {
    const Real scale = std::max(Real(1), std::max(a.abs(), b.abs()));
    return (a - b).abs() <= Real(factor * tolerance) * scale;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (close(approximations[i], approximations[j], 1.0)) parent[find(i)] = find(j);
    }
  }
  std::vector<std::size_t> order;
  std::vector<Root<ComplexFloat>> roots;
  std::vector<std::size_t> root_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (root_of[r] == n) {
      root_of[r] = roots.size();
      roots.push_back({ComplexFloat(0), 0});
    }
    auto& root = roots[root_of[r]];
    root.value += approximations[i];
    ++root.multiplicity;
  }
  for (auto& root : roots) root.value /= ComplexFloat(static_cast<long long>(root.multiplicity));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (close(roots[i].value, roots[j].value, 3.0)) {
        throw AmbiguousClusteringError("root clusters " + roots[i].value.str(8) + " and " + roots[j].value.str(8) +
                                       " are closer than three times the cluster tolerance");
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return roots;
}

/// Newton on the (r-1)-th derivative, where an r-fold root is simple. The
/// result is kept only if it stays inside the cluster.
inline ComplexFloat polish_cluster_center(std::span<const ComplexFloat> monic_coeffs, const Root<ComplexFloat>& root,
                                          double tolerance) {
  univariate::Coeffs<ComplexFloat> q(monic_coeffs.begin(), monic_coeffs.end());
  for (std::uint32_t k = 1; k < root.multiplicity; ++k) q = univariate::derivative(q);
  const auto dq = univariate::derivative(q);
  const Real eps = detail::epsilon_for(root.value.precision_bits());
  ComplexFloat z = root.value;
  for (int iter = 0; iter < 64; ++iter) {
    const ComplexFloat slope = univariate::eval<ComplexFloat>(dq, z);
    if (slope.is_zero()) break;
    const ComplexFloat step = univariate::eval<ComplexFloat>(q, z) / slope;
    z -= step;
    if (step.abs() <= 4 * eps * (1 + z.abs())) break;
  }
  const Real scale = std::max(Real(1), root.value.abs());
  return (z - root.value).abs() <= Real(tolerance) * scale ? z : root.value;
}

/// Float mode: simultaneous iteration, clustering, then polishing of each
/// cluster center.
inline std::vector<Root<ComplexFloat>> roots_with_multiplicity(std::span<const ComplexFloat> monic_coeffs,
                                                               const RootOptions& options = {}) {
  std::optional<ScopedFloatPrecision> precision;
  if (options.precision_bits) precision.emplace(options.precision_bits);
  auto roots = cluster_roots(aberth_roots(monic_coeffs, options), options.cluster_tolerance);
  for (auto& root : roots) root.value = polish_cluster_center(monic_coeffs, root, options.cluster_tolerance);
  return roots;
}

/// Best rational approximation by continued fractions, accepted only when
/// closer than `tolerance` with a denominator below `max_denominator`.
inline std::optional<Rational> rationalize(const Real& x, const Real& tolerance, const Integer& max_denominator) {
  Real rest = x;
  Integer h_prev = 0, h = 1;
  Integer k_prev = 1, k = 0;
  for (int step = 0; step < 200; ++step) {
    const Real fl = boost::multiprecision::floor(rest);
    const Integer a = fl.convert_to<Integer>();
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
    if (k > max_denominator) return std::nullopt;
    const Rational candidate(h, k);
    if (boost::multiprecision::abs(x - to_real(candidate)) <= tolerance) return candidate;
    const Real frac = rest - fl;
    if (frac == 0) return candidate;
    rest = Real(1) / frac;
  }
  return std::nullopt;
}

struct ExactRoots {
  std::vector<Root<GaussianRational>> exact;
  /// Roots outside Q(i), only known numerically.
  std::vector<Root<ComplexFloat>> irrational;

  bool all_exact() const { return irrational.empty(); }
  std::uint32_t total_multiplicity() const {
    std::uint32_t n = 0;
    for (const auto& r : exact) n += r.multiplicity;
    for (const auto& r : irrational) n += r.multiplicity;
    return n;
  }
};

/// Exact mode: square-free split in Q(i)[t], then each square-free factor's
/// roots are located numerically, rounded to Gaussian rationals and accepted
/// only if they are exact zeros. Unconfirmed roots come back as floats.
inline ExactRoots roots_with_multiplicity(std::span<const GaussianRational> monic_coeffs,
                                          const RootOptions& options = {}) {
  using univariate::Coeffs;
  if (monic_coeffs.size() < 2) throw InvalidArgumentError("root finding needs degree >= 1");
  if (!(monic_coeffs.back() == GaussianRational(1))) throw InvalidArgumentError("polynomial must be monic");

  const unsigned bits = std::max<unsigned>(256, options.precision_bits);
  ScopedFloatPrecision precision(bits);
  const Real tolerance = boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits / 2));
  const Integer max_denominator = Integer(1) << (bits / 4);

  ExactRoots result;
  const Coeffs<GaussianRational> poly(monic_coeffs.begin(), monic_coeffs.end());
  for (const auto& [factor, multiplicity] : univariate::squarefree_decomposition(poly)) {
    if (factor.size() == 2) {
      result.exact.push_back({-factor[0], multiplicity});
      continue;
    }
    std::vector<ComplexFloat> approx_coeffs;
    for (const auto& c : factor) approx_coeffs.emplace_back(c);
    RootOptions inner = options;
    inner.precision_bits = 0;
    for (const auto& z : aberth_roots(approx_coeffs, inner)) {
      const Real scale = std::max(Real(1), z.abs());
      auto re = rationalize(z.real(), tolerance * scale, max_denominator);
      auto im = rationalize(z.imag(), tolerance * scale, max_denominator);
      if (re && im) {
        GaussianRational candidate(*re, *im);
        if (univariate::eval<GaussianRational>(factor, candidate).is_zero()) {
          result.exact.push_back({std::move(candidate), multiplicity});
          continue;
        }
      }
      result.irrational.push_back({z, multiplicity});
    }
  }
  std::sort(result.exact.begin(), result.exact.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return result;
}

}  // namespace frob
