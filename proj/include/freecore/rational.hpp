#pragma once

/**
 * Exact scalars.
 *
 * Rational is an arbitrary-precision fraction kept in lowest terms with a
 * positive denominator. Extended adds the two non-finite values the engine
 * needs for free-group parameters and free dimensions: +infinity and an
 * unresolved symbolic value (a parameter known to exist but not computed).
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "freecore/error.hpp"

namespace freecore {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(const BigInt& n, const BigInt& d) {
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator");
    v_ = d < 0 ? boost::multiprecision::cpp_rational(-n, -d) : boost::multiprecision::cpp_rational(n, d);
  }

  // Accepts "p", "p/q", "-p/q" (surrounding whitespace not allowed).
  static Rational parse(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view s, bool allow_sign) {
      if (s.empty()) throw bad();
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) throw bad();
      for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw bad();
      return BigInt(std::string(s.substr(s[0] == '+' ? 1 : 0)));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text, true), BigInt(1));
    BigInt n = parse_int(text.substr(0, slash), true);
    BigInt d = parse_int(text.substr(slash + 1), false);
    if (d == 0) throw bad();
    return Rational(n, d);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  int sign() const { return v_.sign(); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_positive() const { return sign() > 0; }
  bool is_integer() const { return denominator() == 1; }

  Rational inverse() const {
    if (is_zero()) throw Error(ErrorKind::NonPositiveRatio, "inverse of zero");
    return Rational(denominator(), numerator());
  }

  Rational pow(long long e) const {
    Rational base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Rational out(1);
    while (n) {
      if (n & 1ULL) out *= base;
      base *= base;
      n >>= 1;
    }
    return out;
  }

  double to_double() const { return v_.convert_to<double>(); }

  std::string to_string() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::NonPositiveRatio, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = a.v_.compare(b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  boost::multiprecision::cpp_rational v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// A nonnegative rational, +infinity, or an unresolved symbolic value.
class Extended {
 public:
  enum class Kind { Finite, Infinite, Unknown };

  Extended() = default;
  Extended(const Rational& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT(google-explicit-constructor)
  Extended(long long v) : kind_(Kind::Finite), value_(v) {}        // NOLINT(google-explicit-constructor)

  static Extended infinity() { Extended e; e.kind_ = Kind::Infinite; return e; }
  static Extended unknown() { Extended e; e.kind_ = Kind::Unknown; return e; }

  static Extended parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "∞") return infinity();
    return Extended(Rational::parse(text));
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }

  const Rational& value() const {
    if (!is_finite()) throw Error(ErrorKind::UnsupportedStructure, "value() of a non-finite quantity");
    return value_;
  }

  // Machine form: "p/q", "inf", or "r" for the unresolved parameter.
  std::string to_string() const {
    switch (kind_) {
      case Kind::Finite: return value_.to_string();
      case Kind::Infinite: return "inf";
      case Kind::Unknown: return "r";
    }
    return "?";
  }

  // Display form for structure expressions.
  std::string display() const {
    switch (kind_) {
      case Kind::Finite: return value_.to_string();
      case Kind::Infinite: return "∞";
      case Kind::Unknown: return "r";
    }
    return "?";
  }

  // Infinity absorbs everything; unknown absorbs finite values.
  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    if (a.is_unknown() || b.is_unknown()) return unknown();
    return Extended(a.value_ + b.value_);
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.display(); }

 private:
  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

}  // namespace freecore

template <>
struct std::hash<freecore::Rational> {
  std::size_t operator()(const freecore::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
