#include <gtest/gtest.h>

#include "frob/io/json.hpp"
#include "frob/io/poly_parser.hpp"

using namespace frob;
using G = GaussianRational;
using P = Polynomial<G>;

namespace {

template <class Fn>
std::pair<std::size_t, std::size_t> parse_error_position(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no ParseError";
  return {0, 0};
}

}  // namespace

TEST(PolyParserTest, Grammar) {
  const auto u1 = P::variable(2, 0), u2 = P::variable(2, 1);
  EXPECT_EQ(io::parse_polynomial<G>("u1^2 - u2", 2), u1 * u1 - u2);
  EXPECT_EQ(io::parse_polynomial<G>("3/2*u1*u2 + 7", 2), G(Rational(3, 2)) * u1 * u2 + P::constant(2, G(7)));
  EXPECT_EQ(io::parse_polynomial<G>("-(u1 + 1)^2", 2), -((u1 + P::one(2)) * (u1 + P::one(2))));
  EXPECT_EQ(io::parse_polynomial<G>("2*i*u2", 2), G(0, 2) * u2);
  EXPECT_EQ(io::parse_polynomial<G>("u", 1), P::variable(1, 0));
  EXPECT_EQ(io::parse_polynomial<G>("1", 2), P::one(2));
}

TEST(PolyParserTest, ErrorPositions) {
  EXPECT_EQ(parse_error_position([] { io::parse_polynomial<G>("u1 + u3", 2); }), (std::pair<std::size_t, std::size_t>{1, 6}));
  EXPECT_EQ(parse_error_position([] { io::parse_polynomial<G>("u1 +", 2); }), (std::pair<std::size_t, std::size_t>{1, 5}));
  EXPECT_EQ(parse_error_position([] { io::parse_polynomial<G>("u1 $ 2", 2); }), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(parse_error_position([] { io::parse_polynomial<G>("(u1", 2); }), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(parse_error_position([] { io::parse_polynomial<G>("u1^", 2); }), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(parse_error_position([] { io::parse_polynomial<G>("1/0", 1); }), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_THROW(io::parse_polynomial<G>("", 1), ParseError);
}

TEST(PolyParserTest, FiniteElements) {
  const auto a = io::parse_finite_element<G>("1, 0,3/2", 3);
  EXPECT_EQ(a.values, (std::vector<G>{G(1), G(0), G(Rational(3, 2))}));
  EXPECT_THROW(io::parse_finite_element<G>("1,0", 3), DimensionError);
  EXPECT_EQ(parse_error_position([] { io::parse_finite_element<G>("1,u1,0", 3); }),
            (std::pair<std::size_t, std::size_t>{1, 3}));
}

TEST(JsonScalars, ExactRoundTrip) {
  const G z(Rational(3, 2), Rational(-1, 4));
  const auto j = io::to_json(z);
  EXPECT_EQ(j.dump(), R"({"re":"3/2","im":"-1/4"})");
  EXPECT_EQ(io::scalar_from_json<G>(j, "x"), z);
  EXPECT_EQ(io::scalar_from_json<G>(io::json(5), "x"), G(5));
  EXPECT_EQ(io::scalar_from_json<G>(io::json("-2/6"), "x"), G(Rational(-1, 3)));
  EXPECT_THROW(io::scalar_from_json<G>(io::json(1.5), "x"), InvalidArgumentError);
  EXPECT_THROW(io::scalar_from_json<G>(io::json::parse(R"({"re":"1","zz":"2"})"), "x"), InvalidArgumentError);
}

TEST(JsonScalars, FloatAcceptsDecimals) {
  const auto x = io::scalar_from_json<ComplexFloat>(io::json("0.125"), "x");
  EXPECT_EQ(x, ComplexFloat(G(Rational(1, 8))));
  const auto y = io::scalar_from_json<ComplexFloat>(io::json::parse(R"({"re":1.5,"im":"-1/4"})"), "x");
  EXPECT_EQ(y, ComplexFloat(G(Rational(3, 2), Rational(-1, 4))));
}

TEST(JsonDocuments, LoadSamples) {
  const auto doc = io::document_from_json<G>(io::parse_json_text(io::read_file(SAMPLES_DIR "/two_points.json")));
  const auto& f = std::get<MomentFunctional<G>>(doc);
  EXPECT_EQ(f.degree_bound(), 3u);
  EXPECT_EQ(f(P::variable(1, 0) * P::variable(1, 0)), G(5));
  EXPECT_EQ(io::document_from_json<G>(io::document_to_json(doc)).index(), doc.index());
  EXPECT_EQ(io::document_to_json(io::document_from_json<G>(io::document_to_json(doc))), io::document_to_json(doc));

  const auto fin = io::document_from_json<G>(io::parse_json_text(io::read_file(SAMPLES_DIR "/finite_210.json")));
  EXPECT_EQ(std::get<FiniteFunctional<G>>(fin).values(), (std::vector<G>{G(2), G(1), G(0)}));
}

TEST(JsonDocuments, ValidationErrors) {
  auto load = [](const std::string& text) { return io::document_from_json<G>(io::parse_json_text(text)); };
  EXPECT_THROW(load(R"({"kind":"moments","moments":{"num_vars":1,"degree_bound":1,"entries":[{"exponents":[0],"value":1}]}})"),
               InvalidArgumentError);
  EXPECT_THROW(load(R"({"kind":"moments","moments":{"num_vars":1,"degree_bound":0,"entries":[{"exponents":[0],"value":1},{"exponents":[0],"value":1}]}})"),
               InvalidArgumentError);
  EXPECT_THROW(load(R"({"kind":"moments","moments":{"num_vars":2,"degree_bound":0,"entries":[{"exponents":[0],"value":1}]}})"),
               DimensionError);
  EXPECT_THROW(load(R"({"kind":"finite","finite":{"labels":["a","b"],"values":[1]}})"), LabelMismatchError);
  EXPECT_THROW(load(R"({"kind":"other"})"), InvalidArgumentError);
  EXPECT_THROW(load(R"([1,2])"), InvalidArgumentError);
  EXPECT_THROW(io::read_file(SAMPLES_DIR "/missing.json"), InvalidArgumentError);
}

TEST(JsonDocuments, SyntaxErrorPosition) {
  const auto text = io::read_file(SAMPLES_DIR "/corrupted.json");
  const auto pos = parse_error_position([&] { io::parse_json_text(text); });
  EXPECT_EQ(pos.first, 4u);
  EXPECT_GT(pos.second, 1u);
}

TEST(JsonIdeal, Generators) {
  const auto gens = io::ideal_from_json<G>(io::parse_json_text(io::read_file(SAMPLES_DIR "/parabola_ideal.json")), 2);
  ASSERT_EQ(gens.size(), 1u);
  const auto u = P::variable(2, 0), v = P::variable(2, 1);
  EXPECT_EQ(gens[0], u * u - v);
  EXPECT_THROW(io::ideal_from_json<G>(io::json::parse(R"({"generators":[1]})"), 2), InvalidArgumentError);
  EXPECT_THROW(io::ideal_from_json<G>(io::json::parse(R"({})"), 2), InvalidArgumentError);
}

TEST(JsonResults, PointsAreCanonical) {
  PointMultiset<G> a(1), b(1);
  a.add({G(2)});
  a.add({G(1)});
  b.add({G(1)});
  b.add({G(2)});
  EXPECT_EQ(io::to_json(a).dump(), io::to_json(b).dump());
  LabelMultiset l{{{"q", 1}, {"p", 2}}};
  EXPECT_EQ(io::to_json(l).dump(),
            R"({"degree":3,"entries":[{"label":"p","multiplicity":2},{"label":"q","multiplicity":1}]})");
}
