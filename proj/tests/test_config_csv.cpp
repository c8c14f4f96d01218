#include "doctest.h"

#include <limits>

#include "fppweb/config.hpp"
#include "fppweb/csv.hpp"
#include "fppweb/error.hpp"

using namespace fppweb;

namespace {

std::string where_of(const std::string& text) {
  try {
    RunConfig::parse(text);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "no error";
}

}  // namespace

TEST_CASE("config parses specs, windows, itineraries and plans") {
  const auto c = RunConfig::parse(R"({
    "seed": 9, "output_dir": "results",
    "increment_specs": [{"name": "lazy3", "support": [[-1,1,3],[0,1,3],[1,1,3]]}],
    "jump_sets": [{"name": "wide", "offsets": [[-2,0],[2,0],[0,1]]}],
    "windows": [{"name": "w", "x_min": -20, "x_max": 20, "t_min": 0, "t_max": 39}],
    "itineraries": [{"name": "xi1", "x": [1,3], "s": [-1,2], "sigma": [[0,1]], "eta": [1]}],
    "plans": [{"name": "p", "seeds": [0, 10], "n_values": [1, 4], "spec": "lazy3",
               "jumps": "wide", "itinerary": "xi1", "horizon": [2,1], "window": "w"}]
  })");
  CHECK(c.seed == 9);
  CHECK(c.output_dir == "results");
  CHECK(c.spec("lazy3").variance() == Rational(2, 3));
  CHECK(c.spec("simple").size() == 2);
  CHECK(c.jumps("wide").max_abs_dx() == 2);
  CHECK(c.itinerary("xi1").x == Rational(1, 3));
  REQUIRE(c.plans.size() == 1);
  CHECK(c.plans[0].window == Window(-20, 20, 0, 39));
  CHECK(c.plans[0].seeds.count == 10);
  CHECK_THROWS_AS(c.spec("nope"), ConfigError);
}

TEST_CASE("config errors name the line or field") {
  CHECK(where_of("{\n\"seed\": 1,\n\"plans\": [\n}") == "line 4");
  CHECK(where_of(R"({"bogus": 1})") == "bogus");
  CHECK(where_of(R"({"increment_specs": [{"name": "x", "support": [[1,1,1]]}]})") == "increment_specs[0]");
  CHECK(where_of(R"({"increment_specs": [{"name": "x", "support": [[1,1,0]]}]})") ==
        "increment_specs[0].support[0]");
  CHECK(where_of(R"({"itineraries": [{"name": "i", "x": 0, "s": [0,1], "sigma": [[0,1]], "eta": [1]}]})") ==
        "itineraries[0]");
  CHECK(where_of(R"({"plans": [{"name": "p", "seeds": [0,1], "n_values": [1], "spec": "simple",
                     "jumps": "fig5", "itinerary": "missing", "horizon": 1}]})") == "plans[0].itinerary");
  CHECK(where_of(R"({"plans": [{"name": "p", "seeds": [0,0], "n_values": [1], "spec": "simple",
                     "jumps": "fig5", "itinerary": "x", "horizon": 1}],
                     "itineraries": [{"name": "x", "x": 0, "s": 0, "sigma": [], "eta": []}]})") == "plans[0]");
  CHECK(where_of(R"({"seed": -1})") == "seed");
}

TEST_CASE("numbers format as shortest round trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-0.0) == "0");
  CHECK(parse_number("inf") == std::numeric_limits<double>::infinity());
  CHECK_THROWS(parse_number("1.5x"));
  for (const double v : {0.1, 1e-300, 123456.789, -2.5}) CHECK(parse_number(format_number(v)) == v);
}

TEST_CASE("path CSV round trip") {
  const Path p(-0.5, 0.0625, {0.25, -1, 3.5});
  CHECK(path_csv(p) == "start_time,dt\n-0.5,0.0625\nvalue\n0.25\n-1\n3.5\n");
  const auto q = parse_path_csv(path_csv(p));
  CHECK(q.start_time == p.start_time);
  CHECK(q.dt == p.dt);
  CHECK(q.values == p.values);
  CHECK_THROWS(parse_path_csv("nonsense\n"));
}

TEST_CASE("distance sample CSV round trip") {
  DistanceSample s{{{{0, 0}, {0.5, 1}, 2}, {{0, 0}, {1, 1}, std::nullopt}}};
  const auto text = distance_sample_csv(s);
  CHECK(text == "u1,u2,v1,v2,value\n0,0,0.5,1,2\n0,0,1,1,inf\n");
  const auto back = parse_distance_sample_csv(text);
  REQUIRE(back.points.size() == 2);
  CHECK(back.points[1].value == std::nullopt);
  CHECK(back.points[0].value == 2);
}

TEST_CASE("convergence CSV") {
  CHECK(convergence_csv({{25, 0.5, 0.25}}) == "n,journey_endpoint,epigraph\n25,0.5,0.25\n");
}
