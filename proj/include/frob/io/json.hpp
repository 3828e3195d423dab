#pragma once

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "frob/errors.hpp"
#include "frob/frobenius.hpp"
#include "frob/functional.hpp"
#include "frob/io/poly_parser.hpp"
#include "frob/partitions.hpp"
#include "frob/polynomial.hpp"
#include "frob/reconstruct.hpp"
#include "frob/scalar.hpp"

// JSON codecs.
//   exact scalar:  {"re":"3/2","im":"-1/4"}   (a bare "3/2" or 3 is also read)
//   float scalar:  {"re":1.5,"im":-0.25,"precision":128}
//   finite doc:    {"kind":"finite","finite":{"labels":[...],"values":[...]}}
//   moments doc:   {"kind":"moments","moments":{"num_vars":m,"degree_bound":D,
//                   "entries":[{"exponents":[...],"value":...}, ...]}}
//   ideal file:    {"generators":["u1^2 - u2", ...]}

namespace frob::io {

using json = nlohmann::ordered_json;

template <Scalar S>
using FunctionalDocument = std::variant<FiniteFunctional<S>, MomentFunctional<S>>;

inline json to_json(const GaussianRational& z) { return {{"re", z.real().str()}, {"im", z.imag().str()}}; }

inline json to_json(const ComplexFloat& z) {
  return {{"re", z.real().convert_to<double>()},
          {"im", z.imag().convert_to<double>()},
          {"precision", z.precision_bits()}};
}

inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(const Real& x) { return x.convert_to<double>(); }

namespace detail {

[[noreturn]] inline void bad_value(const std::string& where, const std::string& what) {
  throw InvalidArgumentError(where + ": " + what);
}

inline Rational rational_part(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      bad_value(where, e.what());
    }
  }
  if (v.is_number_float()) bad_value(where, "exact mode needs rational strings such as \"3/2\", not floats");
  bad_value(where, "expected a rational");
}

inline Real real_part(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Real(v.get<long long>());
  if (v.is_number_float()) return Real(v.get<double>());
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    static const std::regex decimal(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    if (std::regex_match(text, decimal)) return Real(text);
    try {
      return to_real(parse_rational(text));
    } catch (const Error& e) {
      bad_value(where, e.what());
    }
  }
  bad_value(where, "expected a number");
}

}  // namespace detail

template <Scalar S>
S scalar_from_json(const json& v, const std::string& where) {
  auto part = [&](const json& x, const std::string& name) {
    if constexpr (is_exact_v<S>) {
      return detail::rational_part(x, where + "." + name);
    } else {
      return detail::real_part(x, where + "." + name);
    }
  };
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (key != "re" && key != "im" && key != "precision") detail::bad_value(where, "unknown scalar field '" + key + "'");
    }
    if (!v.contains("re")) detail::bad_value(where, "scalar object needs \"re\"");
    const auto re = part(v.at("re"), "re");
    const auto im = v.contains("im") ? part(v.at("im"), "im") : decltype(re)(0);
    return S(re, im);
  }
  if (v.is_string() || v.is_number()) return S(part(v, "re"));
  detail::bad_value(where, "expected a scalar");
}

template <Scalar S>
json to_json(const std::vector<S>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

inline std::string element_string(const FiniteElement<GaussianRational>& a) { return a.str(); }
inline std::string element_string(const FiniteElement<ComplexFloat>& a) { return a.str(); }
template <Scalar S>
std::string element_string(const Polynomial<S>& p) {
  return p.str();
}

// Documents

template <Scalar S>
FunctionalDocument<S> document_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgumentError("document must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) throw InvalidArgumentError("document needs a \"kind\"");
  const auto kind = doc.at("kind").get<std::string>();
  try {
    if (kind == "finite") {
      if (!doc.contains("finite")) throw InvalidArgumentError("finite document needs a \"finite\" object");
      const auto& body = doc.at("finite");
      std::vector<std::string> labels = body.at("labels").get<std::vector<std::string>>();
      std::vector<S> values;
      const auto& raw = body.at("values");
      if (!raw.is_array()) throw InvalidArgumentError("finite.values must be an array");
      for (std::size_t i = 0; i < raw.size(); ++i) {
        values.push_back(scalar_from_json<S>(raw[i], "finite.values[" + std::to_string(i) + "]"));
      }
      return FiniteFunctional<S>(std::move(labels), std::move(values));
    }
    if (kind == "moments") {
      if (!doc.contains("moments")) throw InvalidArgumentError("moments document needs a \"moments\" object");
      const auto& body = doc.at("moments");
      const auto m = body.at("num_vars").get<std::size_t>();
      const auto D = body.at("degree_bound").get<unsigned>();
      std::map<Monomial, S> moments;
      const auto& entries = body.at("entries");
      if (!entries.is_array()) throw InvalidArgumentError("moments.entries must be an array");
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "moments.entries[" + std::to_string(i) + "]";
        Monomial mono(entries[i].at("exponents").get<std::vector<std::uint32_t>>());
        if (mono.num_vars() != m) {
          throw DimensionError(where + ": exponent vector has length " + std::to_string(mono.num_vars()) +
                               ", expected " + std::to_string(m));
        }
        auto value = scalar_from_json<S>(entries[i].at("value"), where + ".value");
        if (!moments.emplace(mono, std::move(value)).second) {
          throw InvalidArgumentError(where + ": duplicate moment " + mono.str());
        }
      }
      return MomentFunctional<S>(m, D, std::move(moments));
    }
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("malformed ") + kind + " document: " + e.what());
  }
  throw InvalidArgumentError("unknown document kind '" + kind + "'");
}

template <Scalar S>
json document_to_json(const FunctionalDocument<S>& doc) {
  if (const auto* f = std::get_if<FiniteFunctional<S>>(&doc)) {
    return {{"kind", "finite"}, {"finite", {{"labels", f->labels()}, {"values", to_json(f->values())}}}};
  }
  const auto& f = std::get<MomentFunctional<S>>(doc);
  json entries = json::array();
  for (const auto& [mono, value] : f.moments()) {
    entries.push_back({{"exponents", mono.exponents()}, {"value", to_json(value)}});
  }
  return {{"kind", "moments"},
          {"moments", {{"num_vars", f.num_vars()}, {"degree_bound", f.degree_bound()}, {"entries", entries}}}};
}

/// JSON text with syntax errors reported by line and column.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
    throw ParseError("invalid JSON: " + message, line, column);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgumentError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <Scalar S>
std::vector<Polynomial<S>> ideal_from_json(const json& doc, std::size_t num_vars) {
  if (!doc.is_object() || !doc.contains("generators") || !doc.at("generators").is_array()) {
    throw InvalidArgumentError("ideal file needs a \"generators\" array");
  }
  std::vector<Polynomial<S>> out;
  for (const auto& g : doc.at("generators")) {
    if (!g.is_string()) throw InvalidArgumentError("ideal generators must be polynomial strings");
    out.push_back(parse_polynomial<S>(g.get<std::string>(), num_vars));
  }
  return out;
}

// Results

template <Scalar S>
json to_json(const PointMultiset<S>& points) {
  json entries = json::array();
  const auto canonical = points.canonical();
  for (const auto& e : canonical.entries()) {
    entries.push_back({{"point", to_json(e.point)}, {"multiplicity", e.multiplicity}});
  }
  return {{"num_vars", points.num_vars()}, {"degree", points.degree()}, {"entries", entries}};
}

inline json to_json(const LabelMultiset& points) {
  auto entries = points.entries;
  std::sort(entries.begin(), entries.end());
  json out = json::array();
  for (const auto& [label, mult] : entries) out.push_back({{"label", label}, {"multiplicity", mult}});
  return {{"degree", points.degree()}, {"entries", out}};
}

inline json to_json(const SeparatingForm& form) {
  return {{"coefficients", form.coefficients}, {"seed", form.seed}, {"draw", form.retry}};
}

template <Scalar S>
json to_json(const ReconstructionReport<S>& report) {
  return {{"points", to_json(report.points)},
          {"residual", to_json(report.residual)},
          {"degree_bound", report.degree_bound},
          {"form_used", to_json(report.form_used)},
          {"retries", report.retries}};
}

template <AlgebraFunctional F>
json to_json(const FrobeniusCertificate<F>& cert) {
  json out = {{"degree", cert.degree},
              {"holds", cert.holds},
              {"method", std::string(to_string(cert.method))},
              {"scope", cert.scope()},
              {"f1", to_json(cert.f1_value)},
              {"failure", std::string(to_string(cert.failure))},
              {"tuples_checked", cert.tuples_checked}};
  if (cert.method == CertificateMethod::monomials_to_degree) out["degree_bound"] = cert.degree_bound;
  if (cert.witness) {
    json w = json::array();
    for (const auto& a : *cert.witness) w.push_back(element_string(a));
    out["witness"] = w;
    out["witness_value"] = cert.witness_value ? to_json(*cert.witness_value) : json(nullptr);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline json to_json(const partitions::IdentityReport& report) {
  json out = {{"left", report.left_size},
              {"right", report.right_size},
              {"equal", report.equal},
              {"pairings", report.pairings},
              {"partitions", report.rhs.terms().size()}};
  out["first_difference"] = report.first_difference ? json(report.first_difference->str()) : json(nullptr);
  return out;
}

}  // namespace frob::io
