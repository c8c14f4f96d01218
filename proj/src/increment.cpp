#include "fppweb/increment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fppweb {

IncrementSpec::IncrementSpec(std::string name, std::vector<SupportPoint> support)
    : name_(std::move(name)), support_(std::move(support)) {
  if (support_.empty()) throw std::invalid_argument("increment spec '" + name_ + "': empty support");
  if (support_.size() > kMaxSupport)
    throw std::invalid_argument("increment spec '" + name_ + "': support larger than 32 values");
  std::sort(support_.begin(), support_.end(),
            [](const SupportPoint& a, const SupportPoint& b) { return a.value < b.value; });
  Rational total(0);
  std::set<std::int64_t> seen;
  for (const auto& p : support_) {
    if (!seen.insert(p.value).second)
      throw std::invalid_argument("increment spec '" + name_ + "': duplicate value " +
                                  std::to_string(p.value));
    if (p.probability <= Rational(0))
      throw std::invalid_argument("increment spec '" + name_ + "': non-positive probability");
    total = total + p.probability;
  }
  if (total != Rational(1))
    throw std::invalid_argument("increment spec '" + name_ + "': probabilities sum to " +
                                total.str());
  if (mean() != Rational(0))
    throw std::invalid_argument("increment spec '" + name_ + "': mean is " + mean().str() +
                                ", must be 0");
  if (variance() <= Rational(0))
    throw std::invalid_argument("increment spec '" + name_ + "': zero variance");

  using u128 = unsigned __int128;
  Rational cum(0);
  for (std::size_t k = 0; k + 1 < support_.size(); ++k) {
    cum = cum + support_[k].probability;
    const u128 scaled = (static_cast<u128>(cum.num()) << 64) / static_cast<u128>(cum.den());
    thresholds_.push_back(static_cast<std::uint64_t>(scaled));
  }
}

Rational IncrementSpec::mean() const {
  Rational m(0);
  for (const auto& p : support_) m = m + Rational(p.value) * p.probability;
  return m;
}

Rational IncrementSpec::variance() const {
  const Rational m = mean();
  Rational v(0);
  for (const auto& p : support_) {
    const Rational d = Rational(p.value) - m;
    v = v + d * d * p.probability;
  }
  return v;
}

double IncrementSpec::sigma() const { return std::sqrt(variance().to_double()); }

std::int64_t IncrementSpec::max_abs_step() const {
  std::int64_t m = 0;
  for (const auto& p : support_) m = std::max(m, p.value < 0 ? -p.value : p.value);
  return m;
}

bool check_aperiodicity(const IncrementSpec& spec) {
  std::int64_t g = 0;
  const auto s = spec.support();
  for (const auto& p : s) g = std::gcd(g, p.value - s.front().value);
  return g == 1;
}

namespace presets {

IncrementSpec simple() {
  return IncrementSpec("simple", {{-1, Rational(1, 2)}, {1, Rational(1, 2)}});
}

IncrementSpec lazy() {
  return IncrementSpec("lazy", {{-1, Rational(1, 4)}, {0, Rational(1, 2)}, {1, Rational(1, 4)}});
}

IncrementSpec pm12() {
  return IncrementSpec("pm12", {{-2, Rational(1, 4)},
                                {-1, Rational(1, 4)},
                                {1, Rational(1, 4)},
                                {2, Rational(1, 4)}});
}

std::optional<IncrementSpec> by_name(const std::string& name) {
  if (name == "simple") return simple();
  if (name == "lazy") return lazy();
  if (name == "pm12") return pm12();
  return std::nullopt;
}

}  // namespace presets

IncrementField::IncrementField(std::uint64_t seed, IncrementSpec spec)
    : seed_(seed),
      key_(mix64(seed ^ 0x6a09e667f3bcc908ULL)),
      spec_(std::make_shared<const IncrementSpec>(std::move(spec))) {}

std::size_t IncrementField::index_of(std::uint64_t u) const {
  std::size_t idx = 0;
  for (const std::uint64_t thr : spec_->thresholds()) idx += (u >= thr) ? 1 : 0;
  return idx;
}

std::int64_t sample_increment(const IncrementField& field, std::int64_t i, std::int64_t j) {
  return field.spec().value(field.sample_index(i, j));
}

}  // namespace fppweb
