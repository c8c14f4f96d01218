#include "fppweb/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fppweb {
namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw std::overflow_error("rational overflow");
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

std::int64_t Rational::floor() const { return narrow(floor_div(num_, den_)); }

std::int64_t Rational::ceil() const { return narrow(-floor_div(-static_cast<i128>(num_), den_)); }

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return Rational(v);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    std::size_t used_b = 0;
    const std::int64_t num = std::stoll(a, &used);
    const std::int64_t den = std::stoll(b, &used_b);
    if (used != a.size() || used_b != b.size()) throw std::invalid_argument("trailing characters");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

std::int64_t ceil_time_index(const Rational& s, std::int64_t n) {
  return (s * Rational(n)).ceil();
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  const std::int64_t r = isqrt(n);
  return r * r == n;
}

std::int64_t ceil_space_index(const Rational& x, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (is_perfect_square(n)) return (x * Rational(isqrt(n))).ceil();
  // Smallest integer m with m * den >= num * sqrt(n); compare squares exactly.
  const i128 p = x.num();
  const i128 q = x.den();
  auto ge = [&](i128 m) {
    const i128 lhs = m * q;
    if (p >= 0) {
      if (lhs < 0) return false;
      return lhs * lhs >= p * p * n;
    }
    if (lhs >= 0) return true;
    return lhs * lhs <= p * p * n;
  };
  auto m = static_cast<i128>(std::ceil(x.to_double() * std::sqrt(static_cast<double>(n))));
  while (!ge(m)) ++m;
  while (ge(m - 1)) --m;
  return narrow(m);
}

}  // namespace fppweb
