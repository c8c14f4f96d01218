#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fppweb/fpp.hpp"
#include "fppweb/harness.hpp"
#include "fppweb/increment.hpp"
#include "fppweb/journeys.hpp"

namespace fppweb {

/// Parsed run configuration. JSON document of the form
///
///   {
///     "seed": 1, "output_dir": "out",
///     "increment_specs": [{"name": "lazy3", "support": [[-1,1,3],[0,1,3],[1,1,3]]}],
///     "jump_sets": [{"name": "wide", "offsets": [[-2,0],[2,0],[0,1]]}],
///     "windows": [{"name": "w", "x_min": -20, "x_max": 20, "t_min": 0, "t_max": 39}],
///     "itineraries": [{"name": "xi1", "x": [0,1], "s": [0,1], "sigma": [[1,2]], "eta": [1]}],
///     "plans": [{"name": "p", "seeds": [0, 100], "n_values": [1, 4], "spec": "lazy3",
///                "jumps": "fig5", "itinerary": "xi1", "horizon": [2,1]}]
///   }
///
/// Presets simple/lazy/pm12 and fig5/cross are always defined.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  std::map<std::string, IncrementSpec> specs;
  std::map<std::string, JumpSet> jump_sets;
  std::map<std::string, Window> windows;
  std::map<std::string, Itinerary> itineraries;
  std::vector<TrialPlan> plans;

  static RunConfig defaults();
  /// Throws ConfigError with a line number or field path.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& file);

  const IncrementSpec& spec(const std::string& name) const;
  const JumpSet& jumps(const std::string& name) const;
  const Window& window(const std::string& name) const;
  const Itinerary& itinerary(const std::string& name) const;
};

}  // namespace fppweb
