#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frob/errors.hpp"
#include "frob/frobenius.hpp"
#include "frob/functional.hpp"
#include "frob/partitions.hpp"
#include "frob/polynomial.hpp"
#include "frob/reconstruct.hpp"
#include "frob/scalar.hpp"

// Release gate: each criterion runs a fixed, seeded workload and reports
// whether it held within its time budget.

namespace frob::acceptance {

using G = GaussianRational;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool ok = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;

  bool passed() const { return ok && seconds < budget_seconds; }

  std::string line() const {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "criterion " << id << " [" << (passed() ? "PASS" : "FAIL") << "] " << title << ": " << detail << " ("
        << seconds << " s, budget " << budget_seconds << " s)";
    return out.str();
  }
};

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational rational(long long range = 5, long long max_den = 4) {
    return Rational(integer(-range, range), integer(1, max_den));
  }
  G gaussian(double imaginary_probability = 0.3, long long range = 5, long long max_den = 4) {
    return coin(imaginary_probability) ? G(rational(range, max_den), rational(range, max_den))
                                       : G(rational(range, max_den));
  }
  G nonzero_gaussian(double imaginary_probability = 0.3) {
    for (;;) {
      auto z = gaussian(imaginary_probability);
      if (!z.is_zero()) return z;
    }
  }

  Polynomial<G> sparse_polynomial(std::size_t num_vars, unsigned max_degree, std::size_t max_terms = 3) {
    const auto monomials = monomials_up_to(num_vars, max_degree);
    Polynomial<G> p(num_vars);
    const auto terms = integer(1, static_cast<long long>(max_terms));
    for (long long t = 0; t < terms; ++t) {
      const auto& m = monomials[static_cast<std::size_t>(integer(0, static_cast<long long>(monomials.size()) - 1))];
      p.add_term(m, nonzero_gaussian());
    }
    return p;
  }

  MomentFunctional<G> moment_table(std::size_t num_vars, unsigned degree_bound) {
    std::map<Monomial, G> moments;
    for (const auto& m : monomials_up_to(num_vars, degree_bound)) moments.emplace(m, gaussian());
    return MomentFunctional<G>(num_vars, degree_bound, std::move(moments));
  }

  FiniteFunctional<G> finite_functional(std::size_t size) {
    std::vector<std::string> labels;
    std::vector<G> values;
    for (std::size_t i = 0; i < size; ++i) {
      labels.push_back("x" + std::to_string(i));
      values.push_back(gaussian());
    }
    return FiniteFunctional<G>(std::move(labels), std::move(values));
  }

  FiniteElement<G> finite_element(std::size_t size) {
    FiniteElement<G> a;
    for (std::size_t i = 0; i < size; ++i) a.values.push_back(gaussian());
    return a;
  }

  PointMultiset<G> points(std::size_t num_vars, unsigned n, double imaginary_probability = 0.2) {
    PointMultiset<G> out(num_vars);
    unsigned left = n;
    while (left > 0) {
      std::vector<G> x;
      for (std::size_t i = 0; i < num_vars; ++i) x.push_back(gaussian(imaginary_probability, 4, 3));
      const auto mult = static_cast<unsigned>(integer(1, left));
      out.add(std::move(x), mult);
      left -= mult;
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

inline CriterionResult timed(int id, std::string title, double budget, const std::function<bool(std::string&)>& body) {
  CriterionResult result;
  result.id = id;
  result.title = std::move(title);
  result.budget_seconds = budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    result.ok = body(result.detail);
  } catch (const std::exception& e) {
    result.ok = false;
    result.detail = std::string("unexpected error: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline std::string count_text(std::size_t ok, std::size_t total, const std::string& what) {
  return std::to_string(ok) + "/" + std::to_string(total) + " " + what;
}

}  // namespace detail

inline CriterionResult definitional_equivalence(std::uint64_t seed = 1) {
  return detail::timed(1, "definitional equivalence", 60, [seed](std::string& detail) {
    Random rnd(seed);
    std::size_t agree = 0;
    const std::size_t cases = 200;
    for (std::size_t c = 0; c < cases; ++c) {
      const auto k = static_cast<std::size_t>(rnd.integer(1, 6));
      const auto m = static_cast<std::size_t>(rnd.integer(1, 3));
      std::vector<Polynomial<G>> args;
      unsigned total = 0;
      for (std::size_t i = 0; i < k; ++i) {
        args.push_back(rnd.sparse_polynomial(m, 2));
        total += static_cast<unsigned>(std::max(args.back().degree(), 0));
      }
      const auto f = rnd.moment_table(m, total);
      const std::span<const Polynomial<G>> view(args);
      const auto a = phi_permutation(f, view);
      if (a == phi_partition(f, view) && a == phi_inductive(f, view)) ++agree;
    }
    detail = detail::count_text(agree, cases, "cases agree across all three definitions");
    return agree == cases;
  });
}

inline CriterionResult partition_identity() {
  return detail::timed(2, "partition identity over partial pairings", 120, [](std::string& detail) {
    std::size_t equal = 0, total = 0;
    for (std::size_t a = 1; a <= 4; ++a) {
      for (std::size_t b = 1; b <= 4; ++b) {
        ++total;
        if (partitions::verify_pairing_identity(a, b).equal) ++equal;
      }
    }
    detail = detail::count_text(equal, total, "size pairs (a,b) in [1,4]^2 equal, including (4,4)");
    return equal == total;
  });
}

inline CriterionResult hypergeometric_vanishing() {
  return detail::timed(3, "coefficient polynomial vanishes at 1", 1, [](std::string& detail) {
    std::size_t zero = 0;
    for (std::size_t m = 1; m <= 8; ++m) {
      for (std::size_t n = 1; n <= 8; ++n) {
        if (partitions::coefficient_polynomial_at_one(m, n) == 0) ++zero;
      }
    }
    detail = detail::count_text(zero, 64, "pairs (m,n) in [1,8]^2 give exactly 0");
    return zero == 64;
  });
}

inline CriterionResult egf_consistency(std::uint64_t seed = 4) {
  return detail::timed(4, "diagonal recursion matches exponential generating function", 30,
                       [seed](std::string& detail) {
                         Random rnd(seed);
                         std::size_t agree = 0;
                         const std::size_t cases = 100;
                         for (std::size_t c = 0; c < cases; ++c) {
                           const auto N = static_cast<unsigned>(rnd.integer(1, 8));
                           bool same = false;
                           if (c % 2 == 0) {
                             const auto size = static_cast<std::size_t>(rnd.integer(1, 5));
                             const auto f = rnd.finite_functional(size);
                             const auto a = rnd.finite_element(size);
                             same = phi_diagonal_series(f, a, N) == egf_coefficients(f, a, N);
                           } else {
                             const auto m = static_cast<std::size_t>(rnd.integer(1, 2));
                             const auto a = rnd.sparse_polynomial(m, 2);
                             const auto f = rnd.moment_table(m, static_cast<unsigned>(std::max(a.degree(), 0)) * N);
                             same = phi_diagonal_series(f, a, N) == egf_coefficients(f, a, N);
                           }
                           if (same) ++agree;
                         }
                         detail = detail::count_text(agree, cases, "cases agree for N <= 8");
                         return agree == cases;
                       });
}

inline CriterionResult additivity(std::uint64_t seed = 5) {
  return detail::timed(5, "sums of Frobenius homomorphisms", 60, [seed](std::string& detail) {
    Random rnd(seed);
    std::size_t good = 0, cases = 0;
    for (unsigned m = 1; m <= 3; ++m) {
      for (unsigned n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
          ++cases;
          // Distinct points so the sum genuinely has m+n of them.
          PointMultiset<G> all(2);
          while (all.entries().size() < m + n) {
            std::vector<G> x{rnd.gaussian(0.5, 4, 3), rnd.gaussian(0.5, 4, 3)};
            if (std::none_of(all.entries().begin(), all.entries().end(),
                             [&](const auto& e) { return e.point == x; })) {
              all.add(std::move(x));
            }
          }
          PointMultiset<G> first(2), second(2);
          for (std::size_t j = 0; j < all.entries().size(); ++j) {
            (j < m ? first : second).add(all.entries()[j].point);
          }
          const unsigned D = m + n + 1;
          const auto f = evaluation_functional(first, D);
          const auto g = evaluation_functional(second, D);
          const auto fg = f + g;
          const bool f_ok = certify_frobenius(f, m, D).holds && certify_frobenius(g, n, D).holds;
          const bool sum_ok = certify_frobenius(fg, m + n, D).holds;
          const bool below_fails = !certify_frobenius(fg, m + n - 1, D).holds;
          if (f_ok && sum_ok && below_fails) ++good;
        }
      }
    }
    detail = detail::count_text(good, cases, "sums certified at m+n and rejected at m+n-1");
    return good == cases;
  });
}

inline CriterionResult padding_formula(std::uint64_t seed = 6) {
  return detail::timed(6, "padding formula", 30, [seed](std::string& detail) {
    Random rnd(seed);
    std::size_t agree = 0;
    const std::size_t cases = 100;
    for (std::size_t c = 0; c < cases; ++c) {
      const auto n = static_cast<unsigned>(rnd.integer(1, 6));
      bool same = false;
      if (c % 2 == 0) {
        const auto size = static_cast<std::size_t>(rnd.integer(1, 5));
        const auto f = rnd.finite_functional(size);
        std::vector<FiniteElement<G>> args(n, f.unit());
        args[0] = rnd.finite_element(size);
        same = phi_one_padding(f, args[0], n) == phi_permutation(f, std::span<const FiniteElement<G>>(args));
      } else {
        const auto m = static_cast<std::size_t>(rnd.integer(1, 3));
        const auto a = rnd.sparse_polynomial(m, 2);
        const auto f = rnd.moment_table(m, 2);
        std::vector<Polynomial<G>> args(n, f.unit());
        args[0] = a;
        same = phi_one_padding(f, a, n) == phi_permutation(f, std::span<const Polynomial<G>>(args));
      }
      if (same) ++agree;
    }
    detail = detail::count_text(agree, cases, "cases agree for n <= 6");
    return agree == cases;
  });
}

/// All multisets of size n on a set of the given size, as multiplicity vectors.
inline std::vector<std::vector<unsigned>> multiplicity_vectors(std::size_t size, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current(size, 0);
  auto fill = [&](auto& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == size) {
      current[i] = left;
      out.push_back(current);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      current[i] = k;
      self(self, i + 1, left - k);
    }
  };
  fill(fill, 0, n);
  return out;
}

/// Criterion 7 and, folded into the same run, criterion 10: every certified
/// functional takes integer values in [0, n] on the indicators.
inline std::vector<CriterionResult> finite_round_trip() {
  std::size_t total = 0, certified = 0, integral = 0;
  auto round_trip = detail::timed(7, "finite round trip", 30, [&](std::string& detail) {
    std::size_t good = 0;
    for (std::size_t size = 1; size <= 5; ++size) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < size; ++i) labels.push_back("p" + std::to_string(i));
      for (unsigned n = 1; n <= 5; ++n) {
        for (const auto& mult : multiplicity_vectors(size, n)) {
          ++total;
          LabelMultiset expected;
          for (std::size_t i = 0; i < size; ++i) {
            if (mult[i]) expected.entries.emplace_back(labels[i], mult[i]);
          }
          const auto f = finite_evaluation_functional<G>(labels, expected);
          if (!certify_frobenius(f, n).holds) continue;
          ++certified;
          bool idempotents_ok = true;
          for (std::size_t r = 0; r < size; ++r) {
            const auto v = f(FiniteElement<G>::indicator(size, r)).as_integer();
            idempotents_ok = idempotents_ok && v && *v >= 0 && *v <= n;
          }
          if (idempotents_ok) ++integral;
          if (decompose_finite(f, n) == expected) ++good;
        }
      }
    }
    detail = detail::count_text(good, total, "multisets on sets of size <= 5 recovered exactly");
    return good == total;
  });
  CriterionResult integrality;
  integrality.id = 10;
  integrality.title = "idempotent integrality";
  integrality.budget_seconds = round_trip.budget_seconds;
  integrality.seconds = round_trip.seconds;
  integrality.ok = certified == total && integral == certified && total > 0;
  integrality.detail = detail::count_text(integral, certified, "certified functionals integral on idempotents") +
                       " (timed with criterion 7)";
  return {round_trip, integrality};
}

inline CriterionResult polynomial_round_trip(std::uint64_t seed = 8) {
  return detail::timed(8, "polynomial round trip", 120, [seed](std::string& detail) {
    Random rnd(seed);
    std::size_t good = 0;
    unsigned worst_retries = 0;
    const std::size_t cases = 100;
    for (std::size_t c = 0; c < cases; ++c) {
      const auto n = static_cast<unsigned>(rnd.integer(1, 5));
      const auto m = static_cast<std::size_t>(rnd.integer(1, 3));
      const auto points = rnd.points(m, n);
      ReconstructOptions options;
      options.seed = c;
      const auto report = decompose_polynomial(evaluation_functional(points, n), n, options);
      worst_retries = std::max(worst_retries, report.retries);
      if (report.points == points && report.residual == 0 && report.retries <= 8) ++good;
    }
    detail = detail::count_text(good, cases, "multisets recovered exactly with residual 0") +
             ", max retries " + std::to_string(worst_retries);
    return good == cases;
  });
}

inline CriterionResult quotient_check(std::uint64_t seed = 9) {
  return detail::timed(9, "quotient algebra check", 30, [seed](std::string& detail) {
    Random rnd(seed);
    const auto u1 = Polynomial<G>::variable(2, 0);
    const auto u2 = Polynomial<G>::variable(2, 1);
    const auto one = Polynomial<G>::one(2);
    const std::vector<Polynomial<G>> parabola{u1 * u1 - u2};
    const std::vector<Polynomial<G>> circle{u1 * u1 + u2 * u2 - one};

    auto parabola_point = [&]() {
      const G t = rnd.rational();
      return std::vector<G>{t, t * t};
    };
    auto circle_point = [&]() {
      const G t = rnd.rational();
      const G d = G(1) + t * t;
      return std::vector<G>{(G(1) - t * t) / d, G(2) * t / d};
    };

    std::size_t on_ok = 0, off_ok = 0;
    for (int c = 0; c < 20; ++c) {
      const bool use_circle = c % 2 == 1;
      const auto n = static_cast<unsigned>(rnd.integer(1, 3));
      PointMultiset<G> points(2);
      for (unsigned j = 0; j < n; ++j) points.add(use_circle ? circle_point() : parabola_point());
      const auto& ideal = use_circle ? circle : parabola;
      ReconstructOptions options;
      options.seed = static_cast<std::uint64_t>(c);
      const auto report = decompose_quotient(evaluation_functional(points, std::max(n, 2u)), ideal, n, options);
      bool on_variety = report.points == points;
      for (const auto& e : report.points.entries()) {
        on_variety = on_variety && poly_eval(ideal[0], e.point).is_zero();
      }
      if (on_variety) ++on_ok;
    }
    for (int c = 0; c < 5; ++c) {
      const bool use_circle = c % 2 == 1;
      // Real points strictly outside the curve make theta positive, so no cancellation.
      PointMultiset<G> points(2);
      const auto x = G(Rational(rnd.integer(-3, 3), rnd.integer(1, 3)));
      if (use_circle) {
        points.add({x, G(Rational(rnd.integer(5, 9), 4))});
      } else {
        points.add({x, x * x - G(Rational(rnd.integer(1, 5), rnd.integer(1, 3)))});
      }
      if (rnd.coin()) points.add(use_circle ? circle_point() : parabola_point());
      const auto& ideal = use_circle ? circle : parabola;
      const unsigned n = points.degree();
      try {
        decompose_quotient(evaluation_functional(points, std::max(n, 2u)), ideal, n);
      } catch (const AnnihilationError&) {
        ++off_ok;
      }
    }
    detail = detail::count_text(on_ok, 20, "on-variety cases recovered on the variety") + ", " +
             detail::count_text(off_ok, 5, "off-variety cases rejected");
    return on_ok == 20 && off_ok == 5;
  });
}

inline CriterionResult unit_tuple_factorial(std::uint64_t seed = 11) {
  return detail::timed(11, "Phi_n(1,...,1) = n! when f(1) = n", 5, [seed](std::string& detail) {
    Random rnd(seed);
    std::size_t good = 0, total = 0;
    for (unsigned n = 1; n <= 8; ++n) {
      const Integer expected = factorial(n);
      // Finite functional with arbitrary values summing to n.
      auto finite = rnd.finite_functional(static_cast<std::size_t>(rnd.integer(1, 4)));
      std::vector<G> values = finite.values();
      G sum(0);
      for (std::size_t i = 1; i < values.size(); ++i) sum += values[i];
      values[0] = G(static_cast<long long>(n)) - sum;
      const FiniteFunctional<G> f(finite.labels(), values);
      const std::vector<FiniteElement<G>> units(n, f.unit());
      ++total;
      const std::span<const FiniteElement<G>> uview(units);
      if (phi_permutation(f, uview) == G(expected) && phi_partition(f, uview) == G(expected) &&
          phi_inductive(f, uview) == G(expected)) {
        ++good;
      }
      // Moment table with f(1) = n.
      auto g = rnd.moment_table(2, 1);
      auto moments = g.moments();
      moments.at(Monomial(2)) = G(static_cast<long long>(n));
      const MomentFunctional<G> h(2, 1, moments);
      const std::vector<Polynomial<G>> ones(n, h.unit());
      ++total;
      const std::span<const Polynomial<G>> oview(ones);
      if (phi_partition(h, oview) == G(expected) && phi_inductive(h, oview) == G(expected)) ++good;
    }
    detail = detail::count_text(good, total, "functionals with f(1) = n <= 8 give n!");
    return good == total;
  });
}

inline std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out{definitional_equivalence(), partition_identity(), hypergeometric_vanishing(),
                                   egf_consistency(), additivity(), padding_formula()};
  auto finite = finite_round_trip();
  out.push_back(finite[0]);
  out.push_back(polynomial_round_trip());
  out.push_back(quotient_check());
  out.push_back(finite[1]);
  out.push_back(unit_tuple_factorial());
  return out;
}

}  // namespace frob::acceptance
