#include <gtest/gtest.h>

#include "frob/acceptance.hpp"
#include "frob/frobenius.hpp"
#include "oracle.hpp"

using namespace frob;
using G = GaussianRational;
using P = Polynomial<G>;
using E = FiniteElement<G>;

namespace {

MomentFunctional<G> one_two(unsigned D = 6) {
  PointMultiset<G> pts(1);
  pts.add({G(1)});
  pts.add({G(2)});
  return evaluation_functional(pts, D);
}

P u1() { return P::variable(1, 0); }

template <class F>
std::array<typename F::scalar_type, 3> all_methods(const F& f, const std::vector<typename F::element_type>& args) {
  using A = std::span<const typename F::element_type>;
  return {phi_permutation(f, A(args)), phi_partition(f, A(args)), phi_inductive(f, A(args))};
}

}  // namespace

TEST(Phi, ArityOneIsF) {
  const auto f = one_two();
  const std::vector<P> args{u1() * u1()};
  for (const auto& v : all_methods(f, args)) EXPECT_EQ(v, G(5));
}

TEST(Phi, ArityTwoDiagonal) {
  const auto f = one_two();
  for (const auto& v : all_methods(f, std::vector<P>{u1(), u1()})) EXPECT_EQ(v, G(4));
}

TEST(Phi, ArityThreeOnTwoPointsVanishes) {
  const auto f = one_two();
  for (const auto& v : all_methods(f, std::vector<P>{u1(), u1(), u1()})) EXPECT_EQ(v, G(0));
}

TEST(Phi, ArityThreeDiagonalFormula) {
  acceptance::Random rnd(201);
  for (int i = 0; i < 20; ++i) {
    const auto f = rnd.moment_table(2, 6);
    const auto a = rnd.sparse_polynomial(2, 2);
    const G fa = f(a), fa2 = f(a * a), fa3 = f(a * a * a);
    const G expected = fa * fa * fa - G(3) * fa * fa2 + G(2) * fa3;
    for (const auto& v : all_methods(f, std::vector<P>{a, a, a})) EXPECT_EQ(v, expected);
  }
}

TEST(Phi, InductiveUnitFirstArgument) {
  acceptance::Random rnd(202);
  for (int i = 0; i < 20; ++i) {
    const auto f = rnd.moment_table(1, 4);
    const auto a = rnd.sparse_polynomial(1, 2), b = rnd.sparse_polynomial(1, 2);
    const G f1 = f(P::one(1));
    const G phi2 = phi_permutation(f, std::span<const P>(std::vector<P>{a, b}));
    const std::vector<P> args{P::one(1), a, b};
    EXPECT_EQ(phi_inductive(f, std::span<const P>(args)), (f1 - G(2)) * phi2);
  }
}

TEST(Phi, MethodsAgreeOnRandomFiniteInputs) {
  acceptance::Random rnd(203);
  for (int i = 0; i < 40; ++i) {
    const auto size = static_cast<std::size_t>(rnd.integer(1, 4));
    const auto f = rnd.finite_functional(size);
    const auto k = static_cast<std::size_t>(rnd.integer(1, 6));
    std::vector<E> args;
    for (std::size_t j = 0; j < k; ++j) args.push_back(rnd.finite_element(size));
    const auto v = all_methods(f, args);
    EXPECT_EQ(v[0], v[1]);
    EXPECT_EQ(v[0], v[2]);
  }
}

TEST(Phi, SymmetricAndMultilinear) {
  acceptance::Random rnd(204);
  for (int i = 0; i < 20; ++i) {
    const auto f = rnd.finite_functional(3);
    std::vector<E> args{rnd.finite_element(3), rnd.finite_element(3), rnd.finite_element(3)};
    const G base = phi_partition(f, std::span<const E>(args));
    auto swapped = args;
    std::swap(swapped[0], swapped[2]);
    EXPECT_EQ(phi_partition(f, std::span<const E>(swapped)), base);

    const auto extra = rnd.finite_element(3);
    const G c = rnd.gaussian();
    auto combined = args;
    combined[1] = combined[1] + c * extra;
    auto only_extra = args;
    only_extra[1] = extra;
    EXPECT_EQ(phi_partition(f, std::span<const E>(combined)), base + c * phi_partition(f, std::span<const E>(only_extra)));
  }
}

TEST(Phi, AgreesWithInjectiveSumForEvaluations) {
  acceptance::Random rnd(205);
  for (int i = 0; i < 15; ++i) {
    const auto pts = rnd.points(2, static_cast<unsigned>(rnd.integer(1, 4)));
    const auto listed = oracle::expand(pts);
    const auto f = evaluation_functional(pts, 8);
    const auto k = static_cast<std::size_t>(rnd.integer(1, 4));
    std::vector<P> args;
    std::vector<std::vector<G>> values;
    for (std::size_t j = 0; j < k; ++j) {
      args.push_back(rnd.sparse_polynomial(2, 2));
      std::vector<G> row;
      for (const auto& x : listed) row.push_back(poly_eval(args.back(), x));
      values.push_back(row);
    }
    EXPECT_EQ(phi_partition(f, std::span<const P>(args)), oracle::injective_sum(values));
  }
}

TEST(Phi, Errors) {
  const auto f = one_two(3);
  EXPECT_THROW(phi_permutation(f, std::span<const P>(std::vector<P>{u1() * u1(), u1() * u1()})),
               DegreeOverflowError);
  EXPECT_THROW(phi_inductive(f, std::span<const P>(std::vector<P>{})), InvalidArgumentError);
  const FiniteFunctional<G> g({"a"}, {G(1)});
  const std::vector<E> ten(10, E::one(1));
  EXPECT_THROW(phi_permutation(g, std::span<const E>(ten)), SizeLimitError);
  const std::vector<E> eleven(11, E::one(1));
  EXPECT_THROW(phi_partition(g, std::span<const E>(eleven)), SizeLimitError);
}

TEST(DiagonalSeries, TwoPoints) {
  const auto f = one_two(6);
  const auto series = phi_diagonal_series(f, u1(), 4);
  ASSERT_EQ(series.size(), 5u);
  const G expected[] = {G(1), G(3), G(4), G(0), G(0)};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(series[k], expected[k]) << k;
  EXPECT_EQ(series[2] / G(2), G(2));
  EXPECT_EQ(egf_coefficients(f, u1(), 4), series);
}

TEST(DiagonalSeries, UnitGivesFallingFactorialTimesFactorial) {
  for (long long n = 0; n <= 5; ++n) {
    const FiniteFunctional<G> f({"a", "b", "c", "d", "e", "f"}, {G(n), G(0), G(0), G(0), G(0), G(0)});
    const auto series = phi_diagonal_series(f, E::one(6), 6);
    for (std::size_t k = 1; k <= 6; ++k) {
      Integer falling = 1;
      for (std::size_t j = 0; j < k; ++j) falling *= n - static_cast<long long>(j);
      EXPECT_EQ(series[k], G(falling)) << "n=" << n << " k=" << k;
    }
    if (n >= 1) EXPECT_EQ(series[static_cast<std::size_t>(n)], G(factorial(static_cast<unsigned>(n))));
  }
}

TEST(DiagonalSeries, MatchesPermutationSumAndEgf) {
  acceptance::Random rnd(206);
  for (int i = 0; i < 15; ++i) {
    const auto f = rnd.finite_functional(3);
    const auto a = rnd.finite_element(3);
    const auto series = phi_diagonal_series(f, a, 6);
    EXPECT_EQ(egf_coefficients(f, a, 6), series);
    for (std::size_t k = 1; k <= 6; ++k) {
      const std::vector<E> args(k, a);
      EXPECT_EQ(series[k], phi_permutation(f, std::span<const E>(args)));
    }
    EXPECT_EQ(egf_coefficients(f, a, 1), (std::vector<G>{G(1), f(a)}));
  }
}

TEST(DiagonalSeries, NewtonBridgeToElementarySymmetric) {
  acceptance::Random rnd(207);
  for (int i = 0; i < 15; ++i) {
    const auto pts = rnd.points(1, static_cast<unsigned>(rnd.integer(1, 5)));
    std::vector<G> xs;
    for (const auto& x : oracle::expand(pts)) xs.push_back(x[0]);
    const auto e = oracle::elementary_symmetric(xs);
    const auto series = phi_diagonal_series(evaluation_functional(pts, 7), u1(), 7);
    for (std::size_t k = 0; k <= 7; ++k) {
      const G ek = k < e.size() ? e[k] : G(0);
      EXPECT_EQ(series[k] / G(factorial(static_cast<unsigned>(k))), ek);
    }
  }
}

TEST(Egf, SumOfFunctionalsMultipliesSeries) {
  acceptance::Random rnd(208);
  for (int i = 0; i < 10; ++i) {
    const auto f = rnd.finite_functional(3), g = rnd.finite_functional(3);
    const auto a = rnd.finite_element(3);
    const unsigned N = 5;
    const auto ef = egf_coefficients(f, a, N), eg = egf_coefficients(g, a, N), efg = egf_coefficients(f + g, a, N);
    for (unsigned n = 0; n <= N; ++n) {
      G conv(0);
      for (unsigned r = 0; r <= n; ++r) {
        conv += ef[r] * eg[n - r] / G(factorial(r) * factorial(n - r));
      }
      EXPECT_EQ(efg[n] / G(factorial(n)), conv);
    }
  }
}

TEST(Padding, Examples) {
  acceptance::Random rnd(209);
  for (int i = 0; i < 20; ++i) {
    const auto f = rnd.finite_functional(3);
    const auto a = rnd.finite_element(3);
    EXPECT_EQ(phi_one_padding(f, a, 1), f(a));
    const G f1 = f(E::one(3));
    EXPECT_EQ(phi_one_padding(f, a, 3), f(a) * (f1 - G(1)) * (f1 - G(2)));
    for (unsigned n = 1; n <= 5; ++n) {
      std::vector<E> args(n, E::one(3));
      args[0] = a;
      EXPECT_EQ(phi_one_padding(f, a, n), phi_permutation(f, std::span<const E>(args)));
    }
  }
  const FiniteFunctional<G> two({"p", "q"}, {G(1), G(1)});
  const E a{{G(5), G(-2)}};
  EXPECT_EQ(phi_one_padding(two, a, 2), two(a));
  const FiniteFunctional<G> three({"p", "q"}, {G(2), G(1)});
  EXPECT_EQ(phi_one_padding(three, a, 3), G(2) * three(a));
}

TEST(SymmetricTensor, UnitTensorIsOne) {
  const std::vector<P> pair(2, P::one(1));
  EXPECT_EQ(symmetric_tensor_apply(one_two(), 2, std::span<const P>(pair)), G(1));
  PointMultiset<G> pts(1);
  pts.add({G(1)});
  pts.add({G(2)});
  pts.add({G(-3)});
  const auto g = evaluation_functional(pts, 4);
  const std::vector<P> ones(3, P::one(1));
  EXPECT_EQ(symmetric_tensor_apply(g, 3, std::span<const P>(ones)), G(1));
  EXPECT_THROW(symmetric_tensor_apply(g, 2, std::span<const P>(ones)), InvalidArgumentError);
}

TEST(SymmetricTensor, ProductIsMultiplicativeForFrobeniusForms) {
  acceptance::Random rnd(210);
  for (int i = 0; i < 10; ++i) {
    const auto pts = rnd.points(2, 2);
    const auto f = evaluation_functional(pts, 8);
    const std::vector<P> a{rnd.sparse_polynomial(2, 2), rnd.sparse_polynomial(2, 2)};
    const std::vector<P> b{rnd.sparse_polynomial(2, 2), rnd.sparse_polynomial(2, 2)};
    const G lhs = symmetric_product_apply(f, std::span<const P>(a), std::span<const P>(b));
    // Brute force: Phi_2 of evaluations is the injective sum over point pairs.
    const auto listed = oracle::expand(pts);
    G rhs(0);
    std::vector<std::size_t> perm{0, 1};
    do {
      std::vector<std::vector<G>> values;
      for (std::size_t j = 0; j < 2; ++j) {
        std::vector<G> row;
        for (const auto& x : listed) row.push_back(poly_eval(a[j] * b[perm[j]], x));
        values.push_back(row);
      }
      rhs += oracle::injective_sum(values);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(lhs, rhs);
    const G pa = phi_partition(f, std::span<const P>(a)), pb = phi_partition(f, std::span<const P>(b));
    EXPECT_EQ(lhs, pa * pb);
  }
}

TEST(Certify, SingleEvaluationIsDegreeOne) {
  PointMultiset<G> pts(2);
  pts.add({G(3), G(Rational(-1, 2))});
  const auto f = evaluation_functional(pts, 4);
  const auto cert = certify_frobenius(f, 1);
  EXPECT_TRUE(cert.holds);
  EXPECT_EQ(cert.method, CertificateMethod::monomials_to_degree);
  EXPECT_EQ(cert.scope(), "certified up to degree 4");
  const auto d = frobenius_degree(f, 8);
  ASSERT_TRUE(d.degree.has_value());
  EXPECT_EQ(*d.degree, 1u);
}

TEST(Certify, TwoPointsPassAtTwoFailAtOneWithWitness) {
  const auto f = one_two(6);
  EXPECT_TRUE(certify_frobenius(f, 2).holds);
  const auto fail = certify_frobenius(f, 1);
  EXPECT_FALSE(fail.holds);
  EXPECT_EQ(fail.failure, CertificateFailure::phi_nonzero);
  ASSERT_TRUE(fail.witness.has_value());
  EXPECT_EQ(*fail.witness, (std::vector<P>{u1(), u1()}));
  ASSERT_TRUE(fail.witness_value.has_value());
  EXPECT_EQ(*fail.witness_value, G(4));
}

TEST(Certify, NonIntegerUnitValueFails) {
  const FiniteFunctional<G> f({"p", "q"}, {G(Rational(3, 4)), G(Rational(3, 4))});
  for (unsigned n = 0; n <= 3; ++n) EXPECT_FALSE(certify_frobenius(f, n).holds);
  EXPECT_FALSE(frobenius_degree(f, 8).degree.has_value());
}

TEST(Certify, DegreeTooSmallIsConfigurationError) {
  const auto f = one_two(3);
  EXPECT_THROW(certify_frobenius(f, 3), ConfigurationError);
  EXPECT_THROW(certify_frobenius(f, 2, 7u), ConfigurationError);
  EXPECT_NO_THROW(certify_frobenius(f, 2));
}

TEST(Certify, FiniteMatchesBruteForceOverAllTuples) {
  acceptance::Random rnd(211);
  for (int i = 0; i < 15; ++i) {
    const auto size = static_cast<std::size_t>(rnd.integer(1, 3));
    std::vector<std::string> labels;
    std::vector<G> values;
    for (std::size_t r = 0; r < size; ++r) {
      labels.push_back("x" + std::to_string(r));
      values.push_back(rnd.coin(0.3) ? rnd.gaussian() : G(rnd.integer(0, 2)));
    }
    const FiniteFunctional<G> f(labels, values);
    for (unsigned n = 0; n <= 3; ++n) {
      // Oracle: Phi_{n+1} on random tuples plus f(1) == n.
      bool vanishes = true;
      for (int t = 0; t < 30 && vanishes; ++t) {
        std::vector<E> args;
        for (unsigned j = 0; j <= n; ++j) args.push_back(rnd.finite_element(size));
        vanishes = phi_permutation(f, std::span<const E>(args)).is_zero();
      }
      const bool expected = vanishes && f(E::one(size)) == G(static_cast<long long>(n));
      EXPECT_EQ(certify_frobenius(f, n).holds, expected) << "n=" << n;
    }
  }
}

TEST(Certify, ThreadsGiveSameCertificate) {
  const auto f = one_two(6);
  CertifyOptions opt;
  opt.threads = 4;
  const auto a = certify_frobenius(f, 1, std::nullopt, opt);
  const auto b = certify_frobenius(f, 1);
  EXPECT_EQ(a.holds, b.holds);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.tuples_checked, b.tuples_checked);
}

TEST(Degree, Examples) {
  PointMultiset<G> three(2);
  three.add({G(1), G(0)});
  three.add({G(0), G(1)});
  three.add({G(2), G(Rational(1, 3))});
  EXPECT_EQ(frobenius_degree(evaluation_functional(three, 5), 8).degree, 3u);

  const FiniteFunctional<G> zero({"a", "b"}, {G(0), G(0)});
  EXPECT_EQ(frobenius_degree(zero, 8).degree, 0u);

  PointMultiset<G> doubled(1);
  doubled.add({G(7)}, 2);
  EXPECT_EQ(frobenius_degree(evaluation_functional(doubled, 4), 8).degree, 2u);
}

TEST(Degree, SumOfEvaluationsOnFiniteSets) {
  acceptance::Random rnd(212);
  for (int i = 0; i < 20; ++i) {
    const auto size = static_cast<std::size_t>(rnd.integer(1, 4));
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < size; ++r) labels.push_back("x" + std::to_string(r));
    LabelMultiset pts;
    for (const auto& l : labels) {
      const auto m = static_cast<std::uint32_t>(rnd.integer(0, 2));
      if (m) pts.entries.emplace_back(l, m);
    }
    const auto f = finite_evaluation_functional<G>(labels, pts);
    EXPECT_EQ(frobenius_degree(f, 8).degree, pts.degree());
  }
}

TEST(Degree, FloatModeWithinTolerance) {
  const auto f = functional_cast<ComplexFloat>(one_two(6));
  const auto d = frobenius_degree(f, 8);
  ASSERT_TRUE(d.degree.has_value());
  EXPECT_EQ(*d.degree, 2u);
}
