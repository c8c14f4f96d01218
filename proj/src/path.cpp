#include "fppweb/path.hpp"

#include <cmath>
#include <stdexcept>

#include "fppweb/rational.hpp"

namespace fppweb {

Path::Path(double start, double spacing, std::vector<double> v)
    : start_time(start), dt(spacing), values(std::move(v)) {
  if (values.empty()) throw std::invalid_argument("path needs at least one value");
  if (!(dt > 0.0)) throw std::invalid_argument("path grid spacing must be positive");
}

double Path::operator()(double t) const {
  if (std::isinf(t)) return t > 0 ? 0.0 : values.front();
  if (t <= start_time) return values.front();
  const double u = (t - start_time) / dt;
  const auto last = values.size() - 1;
  if (u >= static_cast<double>(last)) return values.back();
  const auto m = static_cast<std::size_t>(u);
  const double frac = u - static_cast<double>(m);
  if (frac == 0.0) return values[m];
  return (1.0 - frac) * values[m] + frac * values[m + 1];
}

Path to_path(const LatticePath& lp, std::int64_t n) {
  const double scale = is_perfect_square(n) ? static_cast<double>(isqrt(n))
                                            : std::sqrt(static_cast<double>(n));
  std::vector<double> v;
  v.reserve(lp.pos.size());
  for (const auto p : lp.pos) v.push_back(static_cast<double>(p) / scale);
  return Path(static_cast<double>(lp.t0) / static_cast<double>(n), 1.0 / static_cast<double>(n),
              std::move(v));
}

}  // namespace fppweb
