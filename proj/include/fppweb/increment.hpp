#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fppweb/rational.hpp"

namespace fppweb {

struct SupportPoint {
  std::int64_t value;
  Rational probability;
};

/// Law of the increment variable: finite integer support with exact rational
/// weights. Construction enforces positive weights summing to one, zero mean
/// and positive variance.
class IncrementSpec {
 public:
  static constexpr std::size_t kMaxSupport = 32;

  IncrementSpec(std::string name, std::vector<SupportPoint> support);

  const std::string& name() const { return name_; }
  std::span<const SupportPoint> support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  std::int64_t value(std::size_t index) const { return support_[index].value; }

  Rational mean() const;
  Rational variance() const;
  double sigma() const;
  std::int64_t max_abs_step() const;

  /// Cumulative thresholds on the 64-bit uniform draw: outcome index is the
  /// number of thresholds <= draw. size() - 1 entries, non-decreasing.
  std::span<const std::uint64_t> thresholds() const { return thresholds_; }

 private:
  std::string name_;
  std::vector<SupportPoint> support_;
  std::vector<std::uint64_t> thresholds_;
};

/// True iff the walk is aperiodic: gcd of pairwise support differences is 1.
bool check_aperiodicity(const IncrementSpec& spec);

namespace presets {
/// {-1, +1} each 1/2 (period 2).
IncrementSpec simple();
/// {-1: 1/4, 0: 1/2, +1: 1/4}.
IncrementSpec lazy();
/// {-2, -1, 1, 2} uniform.
IncrementSpec pm12();
std::optional<IncrementSpec> by_name(const std::string& name);
}  // namespace presets

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kTimeStride = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kSpaceStride = 0xd1b54a32d192ed03ULL;

/// The i.i.d. field {zeta_{i,j}} over all of Z^2, evaluated lazily. The draw at
/// (i, j) is mix64(row_key(j) + i * kSpaceStride); no state is mutated.
class IncrementField {
 public:
  IncrementField(std::uint64_t seed, IncrementSpec spec);

  std::uint64_t seed() const { return seed_; }
  const IncrementSpec& spec() const { return *spec_; }

  std::uint64_t row_key(std::int64_t j) const {
    return mix64(key_ + static_cast<std::uint64_t>(j) * kTimeStride);
  }
  std::uint64_t draw(std::int64_t i, std::int64_t j) const {
    return mix64(row_key(j) + static_cast<std::uint64_t>(i) * kSpaceStride);
  }
  std::size_t index_of(std::uint64_t u) const;
  std::size_t sample_index(std::int64_t i, std::int64_t j) const { return index_of(draw(i, j)); }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::shared_ptr<const IncrementSpec> spec_;
};

std::int64_t sample_increment(const IncrementField& field, std::int64_t i, std::int64_t j);

}  // namespace fppweb
