#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "rootcert/error.hpp"

namespace rootcert {

/// Exact rational with 64-bit numerator and denominator, always reduced and
/// with a positive denominator. Intermediate products are formed in 128 bits;
/// a result that does not fit back into 64 bits throws ArithmeticOverflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational abs() const {
    Rational r = *this;
    if (r.num_ < 0) r.num_ = negate_checked(r.num_);
    return r;
  }

  /// Largest integer not exceeding the value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) --q;
    return q;
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  /// The representative of this value modulo 1 in [0, 1).
  Rational mod1() const { return *this - Rational(floor()); }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = negate_checked(num_);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using W = __int128;
    return from_wide(W(a.num_) * b.den_ + W(b.num_) * a.den_, W(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    using W = __int128;
    return from_wide(W(a.num_) * b.den_ - W(b.num_) * a.den_, W(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    using W = __int128;
    return from_wide(W(a.num_) * b.num_, W(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    using W = __int128;
    if (b.num_ == 0) throw ArithmeticOverflow("rational division by zero");
    return from_wide(W(a.num_) * b.den_, W(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    using W = __int128;
    const W lhs = W(a.num_) * b.den_;
    const W rhs = W(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  /// Accepts "p" or "p/q" with optional sign.
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static std::int64_t negate_checked(std::int64_t v) {
    if (v == INT64_MIN) throw ArithmeticOverflow("rational negation overflow");
    return -v;
  }
  void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace rootcert

template <>
struct std::hash<rootcert::Rational> {
  std::size_t operator()(const rootcert::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
