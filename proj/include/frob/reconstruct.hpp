#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frob/errors.hpp"
#include "frob/functional.hpp"
#include "frob/polynomial.hpp"
#include "frob/roots.hpp"
#include "frob/scalar.hpp"

namespace frob {

/// psi = sum_i c_i u_i with small integer coefficients.
struct SeparatingForm {
  std::vector<long long> coefficients;
  std::uint64_t seed = 0;
  /// Which draw of the retry sequence produced this form.
  unsigned retry = 0;

  template <Scalar S>
  Polynomial<S> polynomial() const {
    Polynomial<S> psi(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      psi.add_term(Monomial::variable(coefficients.size(), i), S(coefficients[i]));
    }
    return psi;
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(coefficients[i]);
    }
    return out + ")";
  }

  friend bool operator==(const SeparatingForm& a, const SeparatingForm& b) {
    return a.coefficients == b.coefficients;
  }
};

/// Draw number t = previous.size() of the form sequence for `seed`. Coefficients
/// are uniform in [-(2t+3), 2t+3]; the zero form and earlier forms are skipped.
inline SeparatingForm select_separating_form(const std::vector<SeparatingForm>& previous, std::uint64_t seed,
                                             std::size_t num_vars) {
  if (num_vars == 0) throw InvalidArgumentError("separating form needs at least one variable");
  const auto t = static_cast<unsigned>(previous.size());
  const long long range = 2LL * t + 3;
  std::mt19937_64 rng(seed + t);
  SeparatingForm form{std::vector<long long>(num_vars, 0), seed, t};
  for (;;) {
    bool nonzero = false;
    for (auto& c : form.coefficients) {
      c = static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
      nonzero = nonzero || c != 0;
    }
    if (nonzero && std::find(previous.begin(), previous.end(), form) == previous.end()) return form;
  }
}

struct ReconstructOptions {
  std::uint64_t seed = 0;
  unsigned max_retries = 8;
  /// Float mode acceptance: residual <= tolerance * (1 + max |moment|).
  double tolerance = 1e-20;
  /// Float mode: distance from an integer below which a multiplicity is rounded.
  double multiplicity_tolerance = 1e-6;
  RootOptions roots;
};

template <Scalar S>
struct ReconstructionReport {
  PointMultiset<S> points;
  /// max over monomials of degree <= D of |rebuilt moment - input moment|.
  magnitude_t<S> residual;
  SeparatingForm form_used;
  /// Number of forms rejected before form_used.
  unsigned retries = 0;
  unsigned degree_bound = 0;
};

/// Newton's identities: e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i.
template <Scalar S>
std::vector<S> power_sums_to_elementary(std::span<const S> p) {
  std::vector<S> e{S(1)};
  for (std::size_t k = 1; k <= p.size(); ++k) {
    S total(0);
    for (std::size_t i = 1; i <= k; ++i) {
      const S term = e[k - i] * p[i - 1];
      if (i % 2 == 1) {
        total += term;
      } else {
        total -= term;
      }
    }
    e.push_back(total / S(static_cast<long long>(k)));
  }
  e.erase(e.begin());
  return e;
}

template <Scalar S>
std::vector<S> power_sums_to_elementary(const std::vector<S>& p) {
  return power_sums_to_elementary(std::span<const S>(p));
}

/// Multiplicities f(e_r) of a functional on C(X); they must be nonnegative
/// integers summing to n.
template <Scalar S>
LabelMultiset decompose_finite(const FiniteFunctional<S>& f, unsigned n,
                               double multiplicity_tolerance = ReconstructOptions{}.multiplicity_tolerance) {
  LabelMultiset out;
  Integer total = 0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    const S& value = f.values()[r];
    std::optional<Integer> count;
    if constexpr (is_exact_v<S>) {
      count = value.as_integer();
    } else {
      const Real re = boost::multiprecision::round(value.real());
      if (boost::multiprecision::abs(value.real() - re) <= multiplicity_tolerance &&
          boost::multiprecision::abs(value.imag()) <= multiplicity_tolerance) {
        count = re.template convert_to<Integer>();
      }
    }
    if (!count || *count < 0) {
      throw NotFrobeniusError("f(e_" + f.labels()[r] + ") = " + to_string(value) +
                              " is not a nonnegative integer");
    }
    total += *count;
    if (*count > 0) out.entries.emplace_back(f.labels()[r], count->template convert_to<std::uint32_t>());
  }
  if (total != n) {
    throw InconsistencyError("idempotent values sum to " + total.str() + ", expected n = " + std::to_string(n));
  }
  return out;
}

namespace detail {

template <Scalar S>
magnitude_t<S> max_moment(const MomentFunctional<S>& f) {
  magnitude_t<S> out(0);
  for (const auto& [m, v] : f.moments()) out = std::max(out, magnitude(v));
  return out;
}

template <Scalar S>
magnitude_t<S> moment_residual(const MomentFunctional<S>& f, const PointMultiset<S>& points) {
  const auto rebuilt = evaluation_functional(points, f.degree_bound());
  magnitude_t<S> out(0);
  for (const auto& [m, v] : f.moments()) out = std::max(out, magnitude(v - rebuilt.moments().at(m)));
  return out;
}

template <Scalar S>
bool residual_accepted(const magnitude_t<S>& residual, const magnitude_t<S>& scale, double tolerance) {
  if constexpr (is_exact_v<S>) {
    return residual == 0;
  } else {
    return residual <= Real(tolerance) * (1 + scale);
  }
}

template <Scalar S>
std::vector<Root<S>> psi_roots(const std::vector<S>& monic_coeffs, const RootOptions& options) {
  if constexpr (is_exact_v<S>) {
    auto roots = roots_with_multiplicity(std::span<const S>(monic_coeffs), options);
    if (!roots.all_exact()) {
      throw IrrationalRootsError("separating form takes the value " + roots.irrational.front().value.str(12) +
                                 ", which is not a Gaussian rational");
    }
    return roots.exact;
  } else {
    return roots_with_multiplicity(std::span<const S>(monic_coeffs), options);
  }
}

/// Ascending coefficients of prod_{i != j} (t - v_i) / (v_j - v_i).
template <Scalar S>
std::vector<S> lagrange_basis(const std::vector<Root<S>>& roots, std::size_t j) {
  std::vector<S> coeffs{S(1)};
  S denom(1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i == j) continue;
    std::vector<S> next(coeffs.size() + 1, S(0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= coeffs[k] * roots[i].value;
    }
    coeffs = std::move(next);
    denom *= roots[j].value - roots[i].value;
  }
  for (auto& c : coeffs) c /= denom;
  return coeffs;
}

template <Scalar S>
std::uint32_t recovered_multiplicity(const S& r, const Root<S>& root, double multiplicity_tolerance) {
  std::optional<Integer> count;
  if constexpr (is_exact_v<S>) {
    count = r.as_integer();
  } else {
    const Real re = boost::multiprecision::round(r.real());
    if (boost::multiprecision::abs(r.real() - re) <= multiplicity_tolerance &&
        boost::multiprecision::abs(r.imag()) <= multiplicity_tolerance) {
      count = re.template convert_to<Integer>();
    }
  }
  if (!count || *count <= 0) {
    throw NotFrobeniusError("recovered multiplicity " + to_string(r) + " is not a positive integer");
  }
  if (*count != root.multiplicity) {
    throw NotFrobeniusError("recovered multiplicity " + count->str() + " disagrees with root multiplicity " +
                            std::to_string(root.multiplicity));
  }
  return root.multiplicity;
}

/// One pass of the pipeline for a fixed separating form.
template <Scalar S>
PointMultiset<S> reconstruct_with_form(const MomentFunctional<S>& f, unsigned n, const SeparatingForm& form,
                                       const ReconstructOptions& options) {
  const std::size_t m = f.num_vars();
  const auto psi = form.polynomial<S>();
  std::vector<Polynomial<S>> psi_pow{Polynomial<S>::one(m)};
  for (unsigned k = 1; k <= n; ++k) psi_pow.push_back(psi_pow.back() * psi);

  std::vector<S> p;
  for (unsigned k = 1; k <= n; ++k) p.push_back(f(psi_pow[k]));
  const auto e = power_sums_to_elementary(p);
  std::vector<S> monic(n + 1, S(0));
  monic[n] = S(1);
  for (unsigned k = 1; k <= n; ++k) monic[n - k] = k % 2 ? -e[k - 1] : e[k - 1];

  const auto roots = psi_roots(monic, options.roots);
  PointMultiset<S> points(m);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const auto ell = lagrange_basis(roots, j);
    S r(0);
    for (std::size_t k = 0; k < ell.size(); ++k) r += ell[k] * f(psi_pow[k]);
    const auto mult = recovered_multiplicity(r, roots[j], options.multiplicity_tolerance);
    std::vector<S> x;
    for (std::size_t i = 0; i < m; ++i) {
      const auto ui = Polynomial<S>::variable(m, i);
      S value(0);
      for (std::size_t k = 0; k < ell.size(); ++k) value += ell[k] * f(ui * psi_pow[k]);
      x.push_back(value / S(static_cast<long long>(mult)));
    }
    points.add(std::move(x), mult);
  }
  return points.canonical();
}

}  // namespace detail

/// Points x_j and multiplicities with f = sum_j r_j ev_{x_j} on monomials of
/// degree <= D. Needs D >= n.
template <Scalar S>
ReconstructionReport<S> decompose_polynomial(const MomentFunctional<S>& f, unsigned n,
                                             const ReconstructOptions& options = {}) {
  const unsigned D = f.degree_bound();
  if (D < n) {
    throw ConfigurationError("degree bound " + std::to_string(D) + " is below n = " + std::to_string(n) +
                             "; reconstruction needs D >= n");
  }
  const std::size_t m = f.num_vars();
  const S unit_value = f(Polynomial<S>::one(m));
  if constexpr (is_exact_v<S>) {
    if (!(unit_value == S(static_cast<long long>(n)))) {
      throw NotFrobeniusError("f(1) = " + to_string(unit_value) + " but n = " + std::to_string(n));
    }
  } else {
    if ((unit_value - S(static_cast<long long>(n))).abs() > options.multiplicity_tolerance) {
      throw NotFrobeniusError("f(1) = " + to_string(unit_value) + " but n = " + std::to_string(n));
    }
  }

  const auto scale = detail::max_moment(f);
  if (n == 0) {
    PointMultiset<S> empty(m);
    auto residual = detail::moment_residual(f, empty);
    if (!detail::residual_accepted<S>(residual, scale, options.tolerance)) {
      throw NotFrobeniusError("f(1) = 0 but f is not the zero functional");
    }
    return {std::move(empty), std::move(residual), SeparatingForm{std::vector<long long>(m, 0), options.seed, 0}, 0,
            D};
  }

  std::vector<SeparatingForm> tried;
  std::optional<magnitude_t<S>> best;
  std::string last_failure;
  while (tried.size() < options.max_retries) {
    const auto form = select_separating_form(tried, options.seed, m);
    tried.push_back(form);
    std::optional<PointMultiset<S>> points;
    try {
      points = detail::reconstruct_with_form(f, n, form, options);
    } catch (const AmbiguousClusteringError& e) {
      last_failure = e.what();
      continue;
    }
    auto residual = detail::moment_residual(f, *points);
    if (detail::residual_accepted<S>(residual, scale, options.tolerance)) {
      return {std::move(*points), std::move(residual), form, static_cast<unsigned>(tried.size() - 1), D};
    }
    last_failure = "verification residual " + to_string(residual);
    if (!best || residual < *best) best = residual;
  }
  const std::string best_text = best ? to_string(*best) : std::string("none");
  throw ReconstructionError("no separating form verified after " + std::to_string(tried.size()) +
                                " attempts (last: " + last_failure + ")",
                            best_text);
}

/// Exact reconstruction, falling back to the float pipeline when the points
/// are not Gaussian rational.
using AnyReconstructionReport = std::variant<ReconstructionReport<GaussianRational>, ReconstructionReport<ComplexFloat>>;

inline AnyReconstructionReport decompose_polynomial_auto(const MomentFunctional<GaussianRational>& f, unsigned n,
                                                         const ReconstructOptions& options = {}) {
  try {
    return decompose_polynomial(f, n, options);
  } catch (const IrrationalRootsError&) {
    return decompose_polynomial(functional_cast<ComplexFloat>(f), n, options);
  }
}

namespace detail {

template <Scalar S>
bool negligible(const S& value, const magnitude_t<S>& scale, double tolerance) {
  if constexpr (is_exact_v<S>) {
    return value.is_zero();
  } else {
    return value.abs() <= Real(tolerance) * (1 + scale);
  }
}

template <Scalar S>
magnitude_t<S> absolute_value_scale(const Polynomial<S>& theta, const std::vector<S>& x) {
  magnitude_t<S> out(0);
  for (const auto& [mono, c] : theta.terms()) out += magnitude(c) * magnitude(monomial_eval<S>(mono, std::span<const S>(x)));
  return out;
}

}  // namespace detail

/// Checks that f kills the ideal generated by `generators` up to degree D,
/// reconstructs, and checks every recovered point lies on the variety.
template <Scalar S>
ReconstructionReport<S> decompose_quotient(const MomentFunctional<S>& f, const std::vector<Polynomial<S>>& generators,
                                           unsigned n, const ReconstructOptions& options = {}) {
  const std::size_t m = f.num_vars();
  const unsigned D = f.degree_bound();
  const auto scale = detail::max_moment(f);
  for (const auto& theta : generators) {
    if (theta.num_vars() != m) throw DimensionError("ideal generator " + theta.str() + " has the wrong number of variables");
    if (theta.is_zero()) continue;
    if (theta.degree() > static_cast<int>(D)) {
      throw DegreeOverflowError("ideal generator " + theta.str() + " has degree above the moment bound " +
                                std::to_string(D));
    }
    for (const auto& mu : monomials_up_to(m, D - static_cast<unsigned>(theta.degree()))) {
      const S value = f(theta * Polynomial<S>::monomial(mu));
      if (!detail::negligible(value, scale, options.tolerance)) {
        throw AnnihilationError("f(theta*mu) = " + to_string(value) + " for theta = " + theta.str() +
                                ", mu = " + mu.str());
      }
    }
  }
  auto report = decompose_polynomial(f, n, options);
  for (const auto& theta : generators) {
    for (const auto& entry : report.points.entries()) {
      const S value = poly_eval(theta, entry.point);
      if (!detail::negligible(value, detail::absolute_value_scale(theta, entry.point), options.tolerance)) {
        std::string where;
        for (const auto& c : entry.point) where += (where.empty() ? "" : ",") + to_string(c);
        throw InconsistencyError("recovered point (" + where + ") is off the variety: " + theta.str() + " = " +
                                 to_string(value));
      }
    }
  }
  return report;
}

}  // namespace frob
