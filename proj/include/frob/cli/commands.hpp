#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "frob/acceptance.hpp"
#include "frob/errors.hpp"
#include "frob/frobenius.hpp"
#include "frob/io/json.hpp"
#include "frob/io/poly_parser.hpp"
#include "frob/partitions.hpp"
#include "frob/reconstruct.hpp"
#include "frob/scalar.hpp"

namespace frob::cli {

using io::json;

struct Options {
  std::string command;
  std::string input;
  std::vector<std::string> args;
  std::string method = "all";
  std::optional<unsigned> n;
  unsigned max_n = 8;
  std::optional<unsigned> degree_bound;
  std::string ideal;
  std::uint64_t seed = 0;
  double tol = 1e-20;
  std::string mode = "exact";
  unsigned precision = kDefaultFloatPrecisionBits;
  unsigned threads = 1;
  std::size_t left = 1;
  std::size_t right = 1;
  bool pretty = false;
  bool timing = false;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return 2;
    case ErrorKind::numerical: return 3;
    case ErrorKind::not_frobenius: return 4;
  }
  return 1;
}

inline json error_object(const Error& e) {
  json body = {{"kind", e.kind() == ErrorKind::validation      ? "validation"
                        : e.kind() == ErrorKind::numerical     ? "numerical"
                                                               : "not_frobenius"},
               {"code", e.code()},
               {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    body["line"] = p->line();
    body["column"] = p->column();
  }
  if (const auto* r = dynamic_cast<const ReconstructionError*>(&e)) body["best_residual"] = r->best_residual();
  return {{"error", body}};
}

/// FNV-1a, 64 bit.
inline std::string digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

template <Scalar S>
io::FunctionalDocument<S> load(const Options& opt) {
  if (opt.input.empty()) throw ConfigurationError("--input FILE is required");
  return io::document_from_json<S>(io::parse_json_text(io::read_file(opt.input)));
}

template <Scalar S>
std::string input_digest(const Options& opt, const io::FunctionalDocument<S>& doc) {
  std::string data = io::document_to_json(doc).dump();
  for (const auto& a : opt.args) data += "\n" + a;
  if (!opt.ideal.empty()) data += "\n" + io::read_file(opt.ideal);
  return digest(data);
}

template <Scalar S>
bool close(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return (a - b).abs() <= Real(tol) * (1 + std::max(a.abs(), b.abs()));
  }
}

template <Scalar S>
std::optional<unsigned> default_n(const S& f1) {
  if constexpr (is_exact_v<S>) {
    auto k = f1.as_integer();
    if (k && *k >= 0 && *k <= 1000) return k->template convert_to<unsigned>();
  } else {
    const Real r = boost::multiprecision::round(f1.real());
    if (r >= 0 && r <= 1000 && (f1 - ComplexFloat(r)).abs() <= Real(1e-6)) return r.template convert_to<unsigned>();
  }
  return std::nullopt;
}

template <AlgebraFunctional F>
json phi_result(const F& f, const std::vector<typename F::element_type>& args, const Options& opt) {
  using S = typename F::scalar_type;
  std::vector<PhiMethod> methods;
  if (opt.method == "all") {
    methods = {PhiMethod::permutation, PhiMethod::partition, PhiMethod::inductive};
  } else if (opt.method == "perm") {
    methods = {PhiMethod::permutation};
  } else if (opt.method == "part") {
    methods = {PhiMethod::partition};
  } else if (opt.method == "ind") {
    methods = {PhiMethod::inductive};
  } else {
    throw ConfigurationError("unknown method '" + opt.method + "' (perm, part, ind or all)");
  }
  const std::span<const typename F::element_type> view(args);
  json values = json::object();
  std::vector<S> computed;
  for (auto m : methods) {
    computed.push_back(phi(f, view, m));
    values[std::string(to_string(m))] = io::to_json(computed.back());
  }
  json out = {{"k", args.size()}, {"args", json::array()}, {"values", values}};
  for (const auto& a : args) out["args"].push_back(io::element_string(a));
  if (methods.size() > 1) {
    bool agree = true;
    for (const auto& v : computed) agree = agree && close(v, computed.front(), opt.tol);
    out["methods_agree"] = agree;
  }
  return out;
}

template <Scalar S>
json cmd_phi(const Options& opt, const io::FunctionalDocument<S>& doc) {
  if (opt.args.empty()) throw ConfigurationError("phi needs at least one --arg");
  if (const auto* f = std::get_if<FiniteFunctional<S>>(&doc)) {
    std::vector<FiniteElement<S>> args;
    for (const auto& a : opt.args) args.push_back(io::parse_finite_element<S>(a, f->size()));
    return phi_result(*f, args, opt);
  }
  const auto& f = std::get<MomentFunctional<S>>(doc);
  std::vector<Polynomial<S>> args;
  for (const auto& a : opt.args) args.push_back(io::parse_polynomial<S>(a, f.num_vars()));
  return phi_result(f, args, opt);
}

template <AlgebraFunctional F>
json degree_result(const DegreeResult<F>& result, unsigned max_n) {
  json out;
  out["max_n"] = max_n;
  out["degree"] = result.degree ? json(*result.degree) : json(nullptr);
  if (result.degree) {
    out["statement"] = "Frobenius " + std::to_string(*result.degree) + "-homomorphism, " + result.certificate->scope();
  } else {
    out["statement"] = "not Frobenius for any n <= " + std::to_string(max_n);
  }
  out["certificate"] = result.certificate ? io::to_json(*result.certificate) : json(nullptr);
  return out;
}

template <Scalar S>
json cmd_degree(const Options& opt, const io::FunctionalDocument<S>& doc) {
  CertifyOptions copt;
  copt.tolerance = opt.tol;
  copt.threads = opt.threads;
  if (const auto* f = std::get_if<FiniteFunctional<S>>(&doc)) {
    return degree_result(frobenius_degree(*f, opt.max_n, copt), opt.max_n);
  }
  const auto& f = std::get<MomentFunctional<S>>(doc);
  return degree_result(frobenius_degree(f, opt.max_n, opt.degree_bound, copt), opt.max_n);
}

template <Scalar S>
ReconstructionReport<S> run_polynomial(const Options& opt, const MomentFunctional<S>& f, unsigned n,
                                       const ReconstructOptions& ropt) {
  const auto table = opt.degree_bound ? f.truncated(*opt.degree_bound) : f;
  if (opt.ideal.empty()) return decompose_polynomial(table, n, ropt);
  const auto generators = io::ideal_from_json<S>(io::parse_json_text(io::read_file(opt.ideal)), f.num_vars());
  return decompose_quotient(table, generators, n, ropt);
}

template <Scalar S>
json cmd_decompose(const Options& opt, const io::FunctionalDocument<S>& doc) {
  ReconstructOptions ropt;
  ropt.seed = opt.seed;
  if constexpr (!is_exact_v<S>) ropt.tolerance = opt.tol;
  ropt.roots.precision_bits = is_exact_v<S> ? 0 : opt.precision;

  if (const auto* f = std::get_if<FiniteFunctional<S>>(&doc)) {
    if (!opt.ideal.empty()) throw ConfigurationError("--ideal applies to moment documents only");
    const auto n = opt.n ? opt.n : default_n((*f)(f->unit()));
    if (!n) throw NotFrobeniusError("f(1) = " + to_string((*f)(f->unit())) + " is not a nonnegative integer");
    return {{"n", *n}, {"points", io::to_json(decompose_finite(*f, *n))}};
  }
  const auto& f = std::get<MomentFunctional<S>>(doc);
  const auto n = opt.n ? opt.n : default_n(f(f.unit()));
  if (!n) throw NotFrobeniusError("f(1) = " + to_string(f(f.unit())) + " is not a nonnegative integer");
  json out = {{"n", *n}};
  if constexpr (is_exact_v<S>) {
    try {
      json report = io::to_json(run_polynomial(opt, f, *n, ropt));
      out.update(report);
      out["scalars"] = "exact";
    } catch (const IrrationalRootsError&) {
      ScopedFloatPrecision precision(opt.precision);
      ropt.roots.precision_bits = opt.precision;
      json report = io::to_json(run_polynomial(opt, functional_cast<ComplexFloat>(f), *n, ropt));
      out.update(report);
      out["scalars"] = "float";
    }
  } else {
    out.update(io::to_json(run_polynomial(opt, f, *n, ropt)));
    out["scalars"] = "float";
  }
  return out;
}

inline json float_round_trip_check(double tol) {
  acceptance::Random rnd(12);
  double worst = 0;
  for (int c = 0; c < 10; ++c) {
    const auto n = static_cast<unsigned>(rnd.integer(1, 4));
    const auto m = static_cast<std::size_t>(rnd.integer(1, 2));
    const auto points = rnd.points(m, n);
    ReconstructOptions ropt;
    ropt.seed = static_cast<std::uint64_t>(c);
    ropt.tolerance = tol;
    const auto f = functional_cast<ComplexFloat>(evaluation_functional(points, n));
    const auto report = decompose_polynomial(f, n, ropt);
    worst = std::max(worst, report.residual.convert_to<double>());
  }
  return {{"cases", 10}, {"tolerance", tol}, {"max_residual", worst}, {"passed", worst <= tol}};
}

}  // namespace detail

/// Runs one command and returns its report; throws frob::Error on failure.
inline json execute(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  json report = {{"command", opt.command}};
  if (opt.mode != "exact" && opt.mode != "float") {
    throw ConfigurationError("--mode must be exact or float, got '" + opt.mode + "'");
  }
  const bool exact = opt.mode == "exact";
  std::optional<ScopedFloatPrecision> precision;
  if (!exact) precision.emplace(opt.precision);

  auto with_document = [&](auto&& body) {
    if (exact) {
      const auto doc = detail::load<GaussianRational>(opt);
      report["input_digest"] = detail::input_digest(opt, doc);
      report["result"] = body(doc);
    } else {
      const auto doc = detail::load<ComplexFloat>(opt);
      report["input_digest"] = detail::input_digest(opt, doc);
      report["result"] = body(doc);
    }
  };

  if (opt.command == "phi") {
    with_document([&](const auto& doc) { return detail::cmd_phi(opt, doc); });
  } else if (opt.command == "degree") {
    with_document([&](const auto& doc) { return detail::cmd_degree(opt, doc); });
  } else if (opt.command == "decompose") {
    with_document([&](const auto& doc) { return detail::cmd_decompose(opt, doc); });
  } else if (opt.command == "verify-identity") {
    report["input_digest"] = digest(std::to_string(opt.left) + "," + std::to_string(opt.right));
    report["result"] = io::to_json(partitions::verify_pairing_identity(opt.left, opt.right));
  } else if (opt.command == "selfcheck") {
    if (!opt.input.empty()) {
      if (exact) {
        report["input_digest"] = detail::input_digest(opt, detail::load<GaussianRational>(opt));
      } else {
        report["input_digest"] = detail::input_digest(opt, detail::load<ComplexFloat>(opt));
      }
    }
    json criteria = json::array();
    bool all = true;
    for (const auto& r : acceptance::run_all()) {
      criteria.push_back({{"id", r.id},
                          {"title", r.title},
                          {"passed", r.passed()},
                          {"seconds", r.seconds},
                          {"budget_seconds", r.budget_seconds},
                          {"detail", r.detail}});
      all = all && r.passed();
    }
    json result = {{"criteria", criteria}};
    if (!exact) {
      result["float_check"] = detail::float_round_trip_check(opt.tol);
      all = all && result["float_check"]["passed"].get<bool>();
    }
    result["all_passed"] = all;
    report["result"] = result;
  } else {
    throw ConfigurationError("unknown command '" + opt.command + "'");
  }

  report["mode"] = opt.mode;
  if (!exact) report["precision"] = opt.precision;
  report["tolerances"] = {{"tol", opt.tol}, {"cluster", RootOptions{}.cluster_tolerance}};
  if (opt.command == "decompose") report["seed"] = opt.seed;
  if (opt.timing) {
    report["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

inline std::unique_ptr<CLI::App> make_app(Options& opt) {
  auto app = std::make_unique<CLI::App>("Frobenius n-homomorphisms: transformations, certificates, reconstruction",
                                        "frobctl");
  app->require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--mode", opt.mode, "Scalar mode: exact or float")->capture_default_str();
    sub->add_option("--precision", opt.precision, "Float mode precision in bits")->capture_default_str();
    sub->add_option("--tol", opt.tol, "Float tolerance")->capture_default_str();
    sub->add_option("--threads", opt.threads, "Worker threads for certification")->capture_default_str();
    sub->add_flag("--pretty", opt.pretty, "Indented output");
    sub->add_flag("--timing", opt.timing, "Include wall-clock time in the report");
  };

  auto* phi = app->add_subcommand("phi", "Evaluate Phi_k(f) on arguments");
  phi->add_option("--input", opt.input, "Functional document (JSON)")->required();
  phi->add_option("--arg", opt.args, "Argument: polynomial in u1..um, or comma-separated values")->required();
  phi->add_option("--method", opt.method, "perm, part, ind or all")->capture_default_str();
  common(phi);

  auto* degree = app->add_subcommand("degree", "Smallest n for which f is a Frobenius n-homomorphism");
  degree->add_option("--input", opt.input, "Functional document (JSON)")->required();
  degree->add_option("--max-n", opt.max_n, "Largest n considered")->capture_default_str();
  degree->add_option("--degree-bound", opt.degree_bound, "Certify with monomials up to this degree");
  common(degree);

  auto* decompose = app->add_subcommand("decompose", "Recover the point multiset of a Frobenius n-homomorphism");
  decompose->add_option("--input", opt.input, "Functional document (JSON)")->required();
  decompose->add_option("--n", opt.n, "n (defaults to f(1))");
  decompose->add_option("--ideal", opt.ideal, "Ideal generators (JSON)");
  decompose->add_option("--degree-bound", opt.degree_bound, "Use moments up to this degree only");
  decompose->add_option("--seed", opt.seed, "Seed for separating forms")->capture_default_str();
  common(decompose);

  auto* identity = app->add_subcommand("verify-identity", "Check the partial-pairing identity for |X|, |Y|");
  identity->add_option("--left", opt.left, "|X|")->capture_default_str();
  identity->add_option("--right", opt.right, "|Y|")->capture_default_str();
  common(identity);

  auto* selfcheck = app->add_subcommand("selfcheck", "Run the acceptance suite");
  selfcheck->add_option("--input", opt.input, "Optional document to validate first");
  common(selfcheck);

  for (auto* sub : {phi, degree, decompose, identity, selfcheck}) {
    sub->callback([&opt, sub] { opt.command = sub->get_name(); });
  }
  return app;
}

/// Parses argv, runs the command and writes the JSON report (or error object)
/// to `out`. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  auto app = make_app(opt);
  try {
    app->parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << json{{"error", {{"kind", "validation"}, {"code", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  const int indent = opt.pretty ? 2 : -1;
  try {
    const auto report = execute(opt);
    out << report.dump(indent) << "\n";
    if (opt.command == "selfcheck") {
      for (const auto& c : report["result"]["criteria"]) {
        err << "criterion " << c["id"].get<int>() << ": " << (c["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
      return report["result"]["all_passed"].get<bool>() ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    out << error_object(e).dump(indent) << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    out << json{{"error", {{"kind", "internal"}, {"code", "internal"}, {"message", e.what()}}}}.dump(indent) << "\n";
    return 1;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"frobctl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace frob::cli
