#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "frob/errors.hpp"
#include "frob/functional.hpp"
#include "frob/partitions.hpp"
#include "frob/polynomial.hpp"
#include "frob/scalar.hpp"

// Frobenius transformations Phi_m(f) of a linear functional f on a commutative
// algebra, computed three independent ways, plus certification of Frobenius
// n-homomorphisms (Phi_{n+1}(f) == 0 and f(1) == n).

namespace frob {

struct PhiLimits {
  /// The permutation sum visits k! terms.
  std::size_t max_permutation_arity = 9;
  /// The partition sum visits Bell(k) terms.
  std::size_t max_partition_arity = 10;
};

enum class PhiMethod { permutation, partition, inductive };

inline std::string_view to_string(PhiMethod m) {
  switch (m) {
    case PhiMethod::permutation: return "perm";
    case PhiMethod::partition: return "part";
    case PhiMethod::inductive: return "ind";
  }
  return "?";
}

namespace detail {

/// f(a_{i1} ... a_{ir}) for every subset {i1..ir} of the arguments, computed lazily.
template <AlgebraFunctional F>
class SubsetValues {
 public:
  using S = typename F::scalar_type;
  using E = typename F::element_type;

  SubsetValues(const F& f, std::span<const E> args)
      : f_(f), args_(args.begin(), args.end()), products_(std::size_t{1} << args.size()),
        values_(std::size_t{1} << args.size()) {}

  const E& product(std::uint64_t mask) {
    if (std::has_single_bit(mask)) return args_[static_cast<std::size_t>(std::countr_zero(mask))];
    auto& slot = products_[mask];
    if (!slot) {
      const std::uint64_t low = mask & (~mask + 1);
      slot = f_.multiply(product(mask ^ low), args_[static_cast<std::size_t>(std::countr_zero(low))]);
    }
    return *slot;
  }

  const S& value(std::uint64_t mask) {
    auto& slot = values_[mask];
    if (!slot) slot = f_(product(mask));
    return *slot;
  }

  /// Sum of |f(...)| over all subset values computed so far.
  magnitude_t<S> scale() const {
    magnitude_t<S> total(0);
    for (const auto& v : values_) {
      if (v) total += magnitude(*v);
    }
    return total;
  }

 private:
  const F& f_;
  std::vector<E> args_;
  std::vector<std::optional<E>> products_;
  std::vector<std::optional<S>> values_;
};

struct ChiTerm {
  Integer coefficient;
  std::vector<std::uint64_t> masks;
};

/// chi(k) as (eps(pi) n(pi), block masks) pairs, cached per k.
inline const std::vector<ChiTerm>& chi_terms(std::size_t k) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<ChiTerm>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  partitions::Limits limits;
  limits.max_ground_size = std::max(limits.max_ground_size, k);
  std::vector<ChiTerm> terms;
  const auto chi = partitions::chi(k, limits);
  for (const auto& [pi, c] : chi.terms()) terms.push_back({c, pi.block_masks()});
  return cache.emplace(k, std::move(terms)).first->second;
}

inline void check_arity(std::size_t k, std::size_t limit, const char* method) {
  if (k == 0) throw InvalidArgumentError("Frobenius transformations need at least one argument");
  if (k > limit) {
    throw SizeLimitError(std::string(method) + " method limited to " + std::to_string(limit) + " arguments, got " +
                         std::to_string(k));
  }
}

template <AlgebraFunctional F>
typename F::scalar_type partition_sum(const std::vector<ChiTerm>& terms,
                                      SubsetValues<F>& values) {
  using S = typename F::scalar_type;
  S total(0);
  for (const auto& term : terms) {
    S product(term.coefficient);
    for (std::uint64_t mask : term.masks) product *= values.value(mask);
    total += product;
  }
  return total;
}

template <Scalar S>
bool vanishes(const S& value, const magnitude_t<S>& scale, double tolerance) {
  if constexpr (is_exact_v<S>) {
    return value.is_zero();
  } else {
    return magnitude(value) <= Real(tolerance) * (Real(1) + scale);
  }
}

template <Scalar S>
bool equals_integer(const S& value, long long n, double tolerance) {
  if constexpr (is_exact_v<S>) {
    return value == S(n);
  } else {
    return magnitude(value - S(n)) <= Real(tolerance) * Real(1 + std::abs(n));
  }
}

}  // namespace detail

/// Sum over sigma in S_k of sign(sigma) times the product, over the cycles of
/// sigma, of f applied to the product of the arguments in the cycle.
template <AlgebraFunctional F>
typename F::scalar_type phi_permutation(const F& f, std::span<const typename F::element_type> args,
                                        const PhiLimits& limits = {}) {
  using S = typename F::scalar_type;
  const std::size_t k = args.size();
  detail::check_arity(k, limits.max_permutation_arity, "permutation");
  f.check_arguments(args);
  detail::SubsetValues<F> values(f, args);

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<bool> seen(k);
  S total(0);
  do {
    std::fill(seen.begin(), seen.end(), false);
    S term(1);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (seen[i]) continue;
      std::uint64_t mask = 0;
      for (std::size_t j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        mask |= std::uint64_t{1} << j;
      }
      term *= values.value(mask);
      ++cycles;
    }
    if ((k - cycles) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// f(chi(X)): signed, weighted sum over set partitions of the arguments.
template <AlgebraFunctional F>
typename F::scalar_type phi_partition(const F& f, std::span<const typename F::element_type> args,
                                      const PhiLimits& limits = {}) {
  detail::check_arity(args.size(), limits.max_partition_arity, "partition");
  f.check_arguments(args);
  detail::SubsetValues<F> values(f, args);
  return detail::partition_sum(detail::chi_terms(args.size()), values);
}

/// Phi_1 = f and
/// Phi_{n+1}(a1..) = f(a1) Phi_n(a2..) - sum_i Phi_n(a2, .., a1*ai, ..).
/// Subresults are memoized on the ordered tuple; above the permutation limit
/// the memo key is the sorted tuple, relying on symmetry of Phi_n.
template <AlgebraFunctional F>
typename F::scalar_type phi_inductive(const F& f, std::span<const typename F::element_type> args,
                                      const PhiLimits& limits = {}) {
  using S = typename F::scalar_type;
  using E = typename F::element_type;
  if (args.empty()) throw InvalidArgumentError("Frobenius transformations need at least one argument");
  f.check_arguments(args);
  const bool symmetric_key = args.size() > limits.max_permutation_arity;
  std::map<std::vector<E>, S> memo;

  auto recurse = [&](auto& self, std::vector<E> tuple) -> S {
    if (tuple.size() == 1) return f(tuple.front());
    if (symmetric_key) std::sort(tuple.begin(), tuple.end());
    if (auto it = memo.find(tuple); it != memo.end()) return it->second;

    const E& head = tuple.front();
    std::vector<E> rest(tuple.begin() + 1, tuple.end());
    S result = f(head) * self(self, rest);
    for (std::size_t i = 0; i < rest.size(); ++i) {
      std::vector<E> merged = rest;
      merged[i] = f.multiply(head, rest[i]);
      result -= self(self, std::move(merged));
    }
    memo.emplace(std::move(tuple), result);
    return result;
  };
  return recurse(recurse, std::vector<E>(args.begin(), args.end()));
}

template <AlgebraFunctional F>
typename F::scalar_type phi(const F& f, std::span<const typename F::element_type> args, PhiMethod method,
                            const PhiLimits& limits = {}) {
  switch (method) {
    case PhiMethod::permutation: return phi_permutation(f, args, limits);
    case PhiMethod::partition: return phi_partition(f, args, limits);
    case PhiMethod::inductive: return phi_inductive(f, args, limits);
  }
  throw InvalidArgumentError("unknown method");
}

namespace detail {

template <AlgebraFunctional F>
std::vector<typename F::scalar_type> diagonal_power_values(const F& f, const typename F::element_type& a,
                                                           unsigned N) {
  using S = typename F::scalar_type;
  using E = typename F::element_type;
  if (N > 0) {
    const std::vector<E> diag(N, a);
    f.check_arguments(diag);
  }
  std::vector<S> values(N + 1, S(0));
  values[0] = f(f.unit());
  E power = f.unit();
  for (unsigned k = 1; k <= N; ++k) {
    power = f.multiply(power, a);
    values[k] = f(power);
  }
  return values;
}

}  // namespace detail

/// [Phi_0, Phi_1(a), Phi_2(a,a), ..., Phi_N(a,...,a)] via the recursion on
/// the length of the cycle through the last element:
/// Phi_n = (n-1)! sum_k (-1)^(k+1) f(a^k) Phi_{n-k} / (n-k)!.
template <AlgebraFunctional F>
std::vector<typename F::scalar_type> phi_diagonal_series(const F& f, const typename F::element_type& a,
                                                         unsigned N) {
  using S = typename F::scalar_type;
  const auto power_values = detail::diagonal_power_values(f, a, N);
  std::vector<S> series(N + 1, S(0));
  series[0] = S(1);
  for (unsigned n = 1; n <= N; ++n) {
    S sum(0);
    for (unsigned k = 1; k <= n; ++k) {
      S term = power_values[k] * series[n - k] / S(factorial(n - k));
      if (k % 2 == 1) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    series[n] = S(factorial(n - 1)) * sum;
  }
  return series;
}

/// n! times the t^n coefficient of exp(sum_k (-1)^(k+1) f(a^k) t^k / k),
/// with the exponential expanded as a truncated Taylor series.
template <AlgebraFunctional F>
std::vector<typename F::scalar_type> egf_coefficients(const F& f, const typename F::element_type& a, unsigned N) {
  using S = typename F::scalar_type;
  const auto power_values = detail::diagonal_power_values(f, a, N);
  std::vector<S> log_series(N + 1, S(0));
  for (unsigned k = 1; k <= N; ++k) {
    log_series[k] = power_values[k] / S(static_cast<long long>(k));
    if (k % 2 == 0) log_series[k] = -log_series[k];
  }

  auto truncated_product = [N](const std::vector<S>& x, const std::vector<S>& y) {
    std::vector<S> out(N + 1, S(0));
    for (unsigned i = 0; i <= N; ++i) {
      if (x[i].is_zero()) continue;
      for (unsigned j = 0; i + j <= N; ++j) out[i + j] += x[i] * y[j];
    }
    return out;
  };

  std::vector<S> exp_series(N + 1, S(0));
  exp_series[0] = S(1);
  std::vector<S> power(N + 1, S(0));
  power[0] = S(1);
  // log_series has no constant term, so its j-th power starts at t^j.
  for (unsigned j = 1; j <= N; ++j) {
    power = truncated_product(power, log_series);
    const S inv_factorial = S(1) / S(factorial(j));
    for (unsigned n = j; n <= N; ++n) exp_series[n] += power[n] * inv_factorial;
  }
  for (unsigned n = 0; n <= N; ++n) exp_series[n] *= S(factorial(n));
  return exp_series;
}

/// Closed form Phi_n(a, 1, ..., 1) = f(a) (f(1)-1) (f(1)-2) ... (f(1)-(n-1)).
template <AlgebraFunctional F>
typename F::scalar_type phi_one_padding(const F& f, const typename F::element_type& a, unsigned n) {
  using S = typename F::scalar_type;
  if (n == 0) throw InvalidArgumentError("padding formula needs n >= 1");
  f.check_arguments(std::span<const typename F::element_type>(&a, 1));
  const S unit_value = f(f.unit());
  S value = f(a);
  for (unsigned j = 1; j < n; ++j) value *= unit_value - S(static_cast<long long>(j));
  return value;
}

/// Phi_n(f)(a1..an) / n!, the value of the induced map on the symmetric
/// tensor obtained by symmetrizing a1 x ... x an (divided by n!).
template <AlgebraFunctional F>
typename F::scalar_type symmetric_tensor_apply(const F& f, unsigned n,
                                               std::span<const typename F::element_type> tensor,
                                               const PhiLimits& limits = {}) {
  using S = typename F::scalar_type;
  if (tensor.size() != n) {
    throw InvalidArgumentError("symmetric tensor needs exactly " + std::to_string(n) + " factors");
  }
  return phi_partition(f, tensor, limits) / S(factorial(n));
}

/// Phi_n(f)/n! evaluated on sym(a) * sym(b), where sym(a) is the sum of all
/// permuted tensors a_s(1) x ... x a_s(n). Equals sum over phi in S_n of
/// Phi_n(a1 b_phi(1), ..., an b_phi(n)). For a Frobenius n-homomorphism this
/// is Phi_n(a) * Phi_n(b).
template <AlgebraFunctional F>
typename F::scalar_type symmetric_product_apply(const F& f, std::span<const typename F::element_type> a,
                                                std::span<const typename F::element_type> b,
                                                const PhiLimits& limits = {}) {
  using S = typename F::scalar_type;
  using E = typename F::element_type;
  if (a.size() != b.size() || a.empty()) throw InvalidArgumentError("symmetric factors need equal nonzero length");
  const std::size_t n = a.size();
  detail::check_arity(n, limits.max_permutation_arity, "permutation");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  S total(0);
  do {
    std::vector<E> args;
    args.reserve(n);
    for (std::size_t i = 0; i < n; ++i) args.push_back(f.multiply(a[i], b[perm[i]]));
    total += phi_partition(f, std::span<const E>(args), limits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

enum class CertificateMethod { exhaustive_basis, monomials_to_degree };
enum class CertificateFailure { none, phi_nonzero, unit_value };

inline std::string_view to_string(CertificateMethod m) {
  return m == CertificateMethod::exhaustive_basis ? "exhaustive-basis" : "monomials-to-degree";
}
inline std::string_view to_string(CertificateFailure f) {
  switch (f) {
    case CertificateFailure::none: return "none";
    case CertificateFailure::phi_nonzero: return "phi-nonzero";
    case CertificateFailure::unit_value: return "unit-value";
  }
  return "?";
}

/// Outcome of checking Phi_{n+1}(f) == 0 and f(1) == n.
///
/// A passing certificate means every enumerated tuple vanished and f(1) == n.
/// For finite sets the enumeration is complete; for moment tables it covers
/// tuples whose product has degree <= degree_bound. A failing certificate
/// carries a witness tuple with Phi_{n+1} != 0 whenever one exists among the
/// checked tuples or (1, ..., 1) is one; when f(1) = k < n and f is a Frobenius
/// k-homomorphism there is no such tuple and only the unit value is reported.
template <AlgebraFunctional F>
struct FrobeniusCertificate {
  using S = typename F::scalar_type;
  using E = typename F::element_type;

  unsigned degree = 0;
  S f1_value;
  CertificateMethod method = CertificateMethod::exhaustive_basis;
  unsigned degree_bound = 0;  // monomials-to-degree only
  bool holds = false;
  CertificateFailure failure = CertificateFailure::none;
  std::optional<std::vector<E>> witness;
  std::optional<S> witness_value;
  std::size_t tuples_checked = 0;

  std::string scope() const {
    if (method == CertificateMethod::exhaustive_basis) return "exhaustive over the indicator basis";
    return "certified up to degree " + std::to_string(degree_bound);
  }
};

struct CertifyOptions {
  /// Float mode only: |Phi| <= tolerance * (1 + sum of |f| values used).
  double tolerance = 1e-20;
  unsigned threads = 1;
  PhiLimits limits;
};

namespace detail {

/// Multisets of size `count` drawn from `items` (as index sequences), in
/// lexicographic order, keeping only those accepted by `budget`.
template <class Budget>
std::vector<std::vector<std::size_t>> index_multisets(std::size_t item_count, std::size_t count, Budget budget) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  auto recurse = [&](auto& self, std::size_t start) -> void {
    if (current.size() == count) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < item_count; ++i) {
      current.push_back(i);
      if (budget(current)) {
        self(self, i);
      } else {
        current.pop_back();
        // Items are sorted by cost, so later ones cannot fit either.
        break;
      }
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

template <AlgebraFunctional F>
FrobeniusCertificate<F> certify_tuples(const F& f, unsigned n,
                                       const std::vector<std::vector<typename F::element_type>>& tuples,
                                       CertificateMethod method, unsigned degree_bound,
                                       const CertifyOptions& options) {
  using S = typename F::scalar_type;
  using E = typename F::element_type;
  const std::size_t arity = n + 1;
  check_arity(arity, options.limits.max_partition_arity, "partition");
  const auto& terms = chi_terms(arity);

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first_failure{none};
  std::vector<std::optional<S>> failure_values(tuples.size());

  auto work = [&](std::size_t offset, std::size_t stride) {
    for (std::size_t i = offset; i < tuples.size(); i += stride) {
      if (i > first_failure.load()) return;
      SubsetValues<F> values(f, std::span<const E>(tuples[i]));
      S value = partition_sum(terms, values);
      const magnitude_t<S> scale = is_exact_v<S> ? magnitude_t<S>(0) : values.scale();
      if (!vanishes(value, scale, options.tolerance)) {
        failure_values[i] = std::move(value);
        std::size_t current = first_failure.load();
        while (i < current && !first_failure.compare_exchange_weak(current, i)) {
        }
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || tuples.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }

  FrobeniusCertificate<F> cert;
  cert.degree = n;
  cert.f1_value = f(f.unit());
  cert.method = method;
  cert.degree_bound = degree_bound;
  const std::size_t failed_at = first_failure.load();
  cert.tuples_checked = failed_at == none ? tuples.size() : failed_at + 1;
  const bool unit_ok = equals_integer(cert.f1_value, n, options.tolerance);

  if (failed_at != none) {
    cert.failure = CertificateFailure::phi_nonzero;
    cert.witness = tuples[failed_at];
    cert.witness_value = failure_values[failed_at];
  } else if (!unit_ok) {
    cert.failure = CertificateFailure::unit_value;
    // Phi_{n+1}(1, ..., 1) = f(1)(f(1)-1)...(f(1)-n).
    S padded = cert.f1_value;
    for (unsigned j = 1; j <= n; ++j) padded *= cert.f1_value - S(static_cast<long long>(j));
    if (!vanishes(padded, magnitude(cert.f1_value), options.tolerance)) {
      cert.witness = std::vector<E>(arity, f.unit());
      cert.witness_value = padded;
    }
  }
  cert.holds = cert.failure == CertificateFailure::none;
  return cert;
}

}  // namespace detail

/// Complete certificate on C(X): Phi_{n+1} is multilinear and symmetric and
/// products of indicators are indicators, so multisets of n+1 indicators suffice.
template <Scalar S>
FrobeniusCertificate<FiniteFunctional<S>> certify_frobenius(const FiniteFunctional<S>& f, unsigned n,
                                                            const CertifyOptions& options = {}) {
  using E = FiniteElement<S>;
  const std::size_t size = f.size();
  detail::check_arity(n + 1, options.limits.max_partition_arity, "partition");
  const auto index_tuples = detail::index_multisets(size, n + 1, [](const auto&) { return true; });
  std::vector<std::vector<E>> tuples;
  tuples.reserve(index_tuples.size());
  for (const auto& idx : index_tuples) {
    std::vector<E> tuple;
    for (std::size_t r : idx) tuple.push_back(E::indicator(size, r));
    tuples.push_back(std::move(tuple));
  }
  return detail::certify_tuples(f, n, tuples, CertificateMethod::exhaustive_basis, 0, options);
}

/// Certificate up to degree D on C[u1..um]: all multisets of n+1 nonconstant
/// monomials whose product has degree <= D. Tuples containing 1 reduce to
/// (f(1) - n) Phi_n(...) and are covered by the f(1) == n check.
template <Scalar S>
FrobeniusCertificate<MomentFunctional<S>> certify_frobenius(const MomentFunctional<S>& f, unsigned n,
                                                            std::optional<unsigned> degree_bound = std::nullopt,
                                                            const CertifyOptions& options = {}) {
  using E = Polynomial<S>;
  const unsigned D = degree_bound.value_or(f.degree_bound());
  if (D > f.degree_bound()) {
    throw ConfigurationError("requested degree bound " + std::to_string(D) + " exceeds the moment table bound " +
                             std::to_string(f.degree_bound()));
  }
  if (n + 1 > D) {
    throw ConfigurationError("degree bound " + std::to_string(D) + " is too small to test Phi_" +
                             std::to_string(n + 1) + " (need at least " + std::to_string(n + 1) + ")");
  }
  detail::check_arity(n + 1, options.limits.max_partition_arity, "partition");

  std::vector<Monomial> monomials;
  for (auto& m : monomials_up_to(f.num_vars(), D)) {
    if (!m.is_unit()) monomials.push_back(std::move(m));
  }
  const auto index_tuples = detail::index_multisets(monomials.size(), n + 1, [&](const auto& idx) {
    unsigned total = 0;
    for (std::size_t i : idx) total += monomials[i].degree();
    // Remaining slots take at least degree 1 each.
    return total + (n + 1 - idx.size()) <= D;
  });
  std::vector<std::vector<E>> tuples;
  tuples.reserve(index_tuples.size());
  for (const auto& idx : index_tuples) {
    std::vector<E> tuple;
    for (std::size_t i : idx) tuple.push_back(E::monomial(monomials[i]));
    tuples.push_back(std::move(tuple));
  }
  return detail::certify_tuples(f, n, tuples, CertificateMethod::monomials_to_degree, D, options);
}

template <AlgebraFunctional F>
struct DegreeResult {
  std::optional<unsigned> degree;
  /// Certificate of the candidate degree, when there was one to test.
  std::optional<FrobeniusCertificate<F>> certificate;
};

namespace detail {

/// f(1) as an integer in [0, max_n], if it is one.
template <Scalar S>
std::optional<unsigned> unit_value_candidate(const S& f1, unsigned max_n, double tolerance) {
  if constexpr (is_exact_v<S>) {
    auto k = f1.as_integer();
    if (!k || *k < 0 || *k > max_n) return std::nullopt;
    return static_cast<unsigned>(k->template convert_to<long>());
  } else {
    const Real nearest = boost::multiprecision::round(f1.real());
    if (nearest < 0 || nearest > max_n) return std::nullopt;
    const auto k = static_cast<unsigned>(nearest.template convert_to<long>());
    if (!equals_integer(f1, k, tolerance)) return std::nullopt;
    return k;
  }
}

template <AlgebraFunctional F, class Certify>
DegreeResult<F> degree_search(const F& f, unsigned max_n, double tolerance, Certify certify) {
  DegreeResult<F> result;
  // A certificate at n requires f(1) == n, and at the smallest degree with
  // vanishing Phi_{n+1} f(1) must equal n, so f(1) is the only candidate.
  const auto candidate = unit_value_candidate(f(f.unit()), max_n, tolerance);
  if (!candidate) return result;
  auto cert = certify(*candidate);
  if (cert.holds) result.degree = *candidate;
  result.certificate = std::move(cert);
  return result;
}

}  // namespace detail

/// Smallest n <= max_n for which f is a Frobenius n-homomorphism, if any.
template <Scalar S>
DegreeResult<FiniteFunctional<S>> frobenius_degree(const FiniteFunctional<S>& f, unsigned max_n,
                                                   const CertifyOptions& options = {}) {
  return detail::degree_search(f, max_n, options.tolerance,
                               [&](unsigned n) { return certify_frobenius(f, n, options); });
}

template <Scalar S>
DegreeResult<MomentFunctional<S>> frobenius_degree(const MomentFunctional<S>& f, unsigned max_n,
                                                   std::optional<unsigned> degree_bound = std::nullopt,
                                                   const CertifyOptions& options = {}) {
  return detail::degree_search(f, max_n, options.tolerance,
                               [&](unsigned n) { return certify_frobenius(f, n, degree_bound, options); });
}

}  // namespace frob
