#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "frob/errors.hpp"

namespace frob {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
/// Variable precision MPFR float. Precision of fresh values comes from the
/// process-wide default, see ScopedFloatPrecision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultFloatPrecisionBits = 128;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

/// Sets the working precision of float-mode scalars for the lifetime of the
/// guard. The MPFR default precision is process-global; concurrent float work
/// must agree on one precision.
class ScopedFloatPrecision {
 public:
  explicit ScopedFloatPrecision(unsigned bits = kDefaultFloatPrecisionBits)
      : saved_(Real::default_precision()) {
    if (bits < 16) throw ConfigurationError("float precision must be at least 16 bits");
    Real::default_precision(bits_to_digits10(bits));
  }
  ~ScopedFloatPrecision() { Real::default_precision(saved_); }
  ScopedFloatPrecision(const ScopedFloatPrecision&) = delete;
  ScopedFloatPrecision& operator=(const ScopedFloatPrecision&) = delete;

 private:
  unsigned saved_;
};

namespace detail {

inline const bool default_precision_applied = [] {
  Real::default_precision(bits_to_digits10(kDefaultFloatPrecisionBits));
  return true;
}();

inline bool is_digit_run(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!is_digit_run(digits)) {
    throw InvalidArgumentError("malformed integer '" + std::string(text) + "'");
  }
  Integer value{std::string(digits)};
  return negative ? Integer(-value) : value;
}

}  // namespace detail

/// Parses "p", "-p" or "p/q" with q != 0. No decimal points.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(text));
  const Integer num = detail::parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!detail::is_digit_run(den_text)) {
    throw InvalidArgumentError("malformed rational '" + std::string(text) + "'");
  }
  const Integer den{std::string(den_text)};
  if (den == 0) throw InvalidArgumentError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline Real to_real(const Rational& r) {
  return Real(Real(numerator(r)) / Real(denominator(r)));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Complex number with arbitrary precision rational real and imaginary parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I value) : re_(static_cast<long long>(value)) {}  // NOLINT(implicit)
  GaussianRational(const Integer& value) : re_(value) {}             // NOLINT(implicit)
  GaussianRational(Rational re) : re_(std::move(re)) {}              // NOLINT(implicit)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

  const Rational& real() const noexcept { return re_; }
  const Rational& imag() const noexcept { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2
  Rational norm() const { return re_ * re_ + im_ * im_; }

  /// The value as an integer, if it is one.
  std::optional<Integer> as_integer() const {
    if (im_ != 0 || !frob::is_integer(re_)) return std::nullopt;
    return numerator(re_);
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (im_ == 0 && o.im_ == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw InvalidArgumentError("division by zero");
    if (im_ == 0 && o.im_ == 0) {
      re_ /= o.re_;
      return *this;
    }
    const Rational n = o.norm();
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    Rational im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (re, im). Not a field order; used for canonical sorting.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// "3/2", "-1/4i", "3/2-1/4i".
  std::string str() const {
    if (im_ == 0) return re_.str();
    std::string out;
    if (re_ != 0) out = re_.str();
    if (im_ > 0 && !out.empty()) out += "+";
    out += im_.str() + "i";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Complex number over MPFR floats. Carries the precision of its parts.
class ComplexFloat {
 public:
  ComplexFloat() : re_(0), im_(0) {}
  template <std::integral I>
  ComplexFloat(I value) : re_(static_cast<long long>(value)), im_(0) {}  // NOLINT(implicit)
  ComplexFloat(const Integer& value) : re_(value), im_(0) {}             // NOLINT(implicit)
  ComplexFloat(const Rational& value) : re_(to_real(value)), im_(0) {}   // NOLINT(implicit)
  ComplexFloat(Real re) : re_(std::move(re)), im_(0) {}                  // NOLINT(implicit)
  ComplexFloat(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexFloat(const GaussianRational& z)
      : re_(to_real(z.real())), im_(to_real(z.imag())) {}

  const Real& real() const noexcept { return re_; }
  const Real& imag() const noexcept { return im_; }

  unsigned precision_bits() const {
    return static_cast<unsigned>(mpfr_get_prec(re_.backend().data()));
  }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  ComplexFloat conj() const { return {re_, -im_}; }
  Real norm() const { return re_ * re_ + im_ * im_; }
  Real abs() const { return boost::multiprecision::sqrt(norm()); }

  ComplexFloat& operator+=(const ComplexFloat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ComplexFloat& operator-=(const ComplexFloat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ComplexFloat& operator*=(const ComplexFloat& o) {
    Real re = re_ * o.re_ - im_ * o.im_;
    Real im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  ComplexFloat& operator/=(const ComplexFloat& o) {
    if (o.is_zero()) throw InvalidArgumentError("division by zero");
    const Real n = o.norm();
    Real re = (re_ * o.re_ + im_ * o.im_) / n;
    Real im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend ComplexFloat operator+(ComplexFloat a, const ComplexFloat& b) { return a += b; }
  friend ComplexFloat operator-(ComplexFloat a, const ComplexFloat& b) { return a -= b; }
  friend ComplexFloat operator*(ComplexFloat a, const ComplexFloat& b) { return a *= b; }
  friend ComplexFloat operator/(ComplexFloat a, const ComplexFloat& b) { return a /= b; }
  friend ComplexFloat operator-(const ComplexFloat& a) { return {-a.re_, -a.im_}; }

  /// Bitwise equality of the parts. Numerical code compares with a tolerance instead.
  friend bool operator==(const ComplexFloat& a, const ComplexFloat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator<(const ComplexFloat& a, const ComplexFloat& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::string str(int digits = 20) const {
    std::string out = re_.str(digits);
    if (im_ != 0) {
      const std::string im = im_.str(digits);
      out += (im.front() == '-' ? "" : "+") + im + "i";
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexFloat& z) { return os << z.str(); }

 private:
  Real re_;
  Real im_;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode_name = "exact";
  /// Exact magnitudes use the max-norm so that they stay rational.
  using magnitude_type = Rational;
};

template <>
struct scalar_traits<ComplexFloat> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode_name = "float";
  using magnitude_type = Real;
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
  { scalar_traits<S>::exact } -> std::convertible_to<bool>;
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a / b } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
  { a == b } -> std::convertible_to<bool>;
  { a < b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  S(Integer(1));
  S(Rational(1));
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
using magnitude_t = typename scalar_traits<S>::magnitude_type;

inline Rational magnitude(const GaussianRational& z) {
  return std::max(boost::multiprecision::abs(z.real()), boost::multiprecision::abs(z.imag()));
}
inline Real magnitude(const ComplexFloat& z) { return z.abs(); }

inline std::string to_string(const GaussianRational& z) { return z.str(); }
inline std::string to_string(const ComplexFloat& z) { return z.str(); }
inline std::string to_string(const Real& x) { return x.str(20); }

/// Converts between scalar modes. Exact targets require exactly representable input.
template <Scalar To, Scalar From>
To scalar_cast(const From& value) {
  if constexpr (std::is_same_v<To, From>) {
    return value;
  } else if constexpr (std::is_same_v<To, ComplexFloat>) {
    return ComplexFloat(value);
  } else {
    static_assert(std::is_same_v<From, ComplexFloat>);
    // MPFR values are dyadic rationals, so this is exact.
    auto to_rational = [](const Real& x) {
      mpq_t q;
      mpq_init(q);
      mpfr_get_q(q, x.backend().data());
      Rational r(q);
      mpq_clear(q);
      return r;
    };
    return GaussianRational(to_rational(value.real()), to_rational(value.imag()));
  }
}

inline Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

}  // namespace frob
