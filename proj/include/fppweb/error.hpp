#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fppweb {

/// A recorded distance came too close to the spatial edge of the window, so
/// sup/inf of the reachable set may have been cut off by the truncation.
class MarginViolation : public std::runtime_error {
 public:
  MarginViolation(std::int64_t position, std::int64_t time, std::int64_t x_min,
                  std::int64_t x_max, std::int64_t margin);

  std::int64_t position() const { return position_; }
  std::int64_t time() const { return time_; }
  /// Suggested half-width increase, in lattice units.
  std::int64_t suggested_growth() const { return margin_ * 4; }

 private:
  std::int64_t position_;
  std::int64_t time_;
  std::int64_t margin_;
};

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class KeyMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad configuration input. `where` is a "line N" or field path like
/// `plans[2].n_values`.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace fppweb
