#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fppweb {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (den > 0, gcd(num, den) = 1). Intermediate products use __int128 and
/// throw std::overflow_error if the normalized result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Smallest integer >= value.
  std::int64_t ceil() const;
  std::int64_t floor() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" when q = 1.
  std::string str() const;
  /// Accepts "p", "p/q" and "-p/q".
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Ceiling on the time grid (1/n)Z: returns the lattice index ceil(n s),
/// so the grid time is that index divided by n.
std::int64_t ceil_time_index(const Rational& s, std::int64_t n);

/// Ceiling on the space grid (1/sqrt n)Z: returns the lattice index
/// ceil(sqrt(n) x). Exact for every n >= 1, square or not.
std::int64_t ceil_space_index(const Rational& x, std::int64_t n);

bool is_perfect_square(std::int64_t n);
/// Integer square root, floor.
std::int64_t isqrt(std::int64_t n);

}  // namespace fppweb
