#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace flowclust {

using Int128 = __int128;

std::string to_string(Int128 value);

// Exact fraction with a positive denominator, always stored in lowest terms.
// Arithmetic throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Int128 num, Int128 den = 1);
  Rational(int num) : Rational(Int128{num}) {}
  Rational(long num) : Rational(Int128{num}) {}
  Rational(long long num) : Rational(Int128{num}) {}

  // Best rational approximation with denominator <= max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den);
  // Parses "12", "-0.25", "3/7" or "1e-3" exactly.
  static Rational parse(const std::string& text);

  Int128 num() const { return num_; }
  Int128 den() const { return den_; }
  double to_double() const;
  std::string str() const;

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Int128 num_ = 0;
  Int128 den_ = 1;
};

Int128 checked_mul(Int128 a, Int128 b);
Int128 checked_add(Int128 a, Int128 b);

}  // namespace flowclust
