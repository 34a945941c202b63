#include "flowclust/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowclust {
namespace {

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Int128 floor_div(Int128 a, Int128 b) {
  Int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Compares a/b with c/d for b, d > 0 without forming cross products.
std::strong_ordering compare_fractions(Int128 a, Int128 b, Int128 c, Int128 d) {
  bool flipped = false;
  while (true) {
    Int128 qa = floor_div(a, b);
    Int128 qc = floor_div(c, d);
    if (qa != qc) {
      bool less = qa < qc;
      if (flipped) less = !less;
      return less ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    Int128 ra = a - qa * b;
    Int128 rc = c - qc * d;
    if (ra == 0 || rc == 0) {
      if (ra == rc) return std::strong_ordering::equal;
      // the one with zero remainder is the smaller fraction
      bool less = (ra == 0);
      if (flipped) less = !less;
      return less ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    // a/b = q + ra/b, compare ra/b vs rc/d  <=>  compare d/rc vs b/ra reversed
    a = b;
    b = ra;
    c = d;
    d = rc;
    flipped = !flipped;
  }
}

}  // namespace

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::string to_string(Int128 value) {
  if (value == 0) return "0";
  bool neg = value < 0;
  std::string digits;
  while (value != 0) {
    int d = static_cast<int>(value % 10);
    digits.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    value /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Rational::Rational(Int128 num, Int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::domain_error("cannot approximate non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  // convergents h/k
  Int128 h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a_d = std::floor(rest);
    if (a_d > 9.0e18) break;
    Int128 a = static_cast<Int128>(a_d);
    Int128 h2 = a * h1 + h0;
    Int128 k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = rest - a_d;
    if (frac < 1e-300) break;
    if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - v) <= 0.0) break;
    rest = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  return Rational(neg ? -h1 : h1, k1);
}

Rational Rational::parse(const std::string& text) {
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a number: '" + text + "'"); };
  if (text.empty()) return fail();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational n = parse(text.substr(0, slash));
    Rational d = parse(text.substr(slash + 1));
    if (d.is_zero()) return fail();
    return n / d;
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  Int128 num = 0, den = 1;
  bool any = false, dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      num = checked_add(checked_mul(num, 10), c - '0');
      if (dot) den = checked_mul(den, 10);
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      return fail();
    }
  }
  if (!any) return fail();
  if (i < text.size()) {
    std::string exp_text = text.substr(i + 1);
    if (exp_text.empty()) return fail();
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size() || e > 30 || e < -30) return fail();
    for (; e > 0; --e) num = checked_mul(num, 10);
    for (; e < 0; ++e) den = checked_mul(den, 10);
  }
  return Rational(neg ? -num : num, den);
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  Int128 g = gcd128(a.den_, b.den_);
  Int128 lhs = checked_mul(a.num_, b.den_ / g);
  Int128 rhs = checked_mul(b.num_, a.den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(a.den_, b.den_ / g));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Int128 g1 = gcd128(a.num_, b.den_);
  Int128 g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return compare_fractions(a.num_, a.den_, b.num_, b.den_);
}

}  // namespace flowclust
