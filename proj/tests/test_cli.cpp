#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "fppweb/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FPPWEB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fppweb_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("simulate --no-such-flag").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("distance --u 0,0 --v 1,1 --n 2").code == 2);
  CHECK(run("oracle --dt 0.01 --out-dir " + scratch("oracle").string()).code == 2);
}

TEST_CASE("config errors exit with 2") {
  const auto dir = scratch("config");
  fppweb::write_text(dir / "bad.json", "{\n  \"seed\": [1,\n");
  CHECK(run("--config " + (dir / "bad.json").string() + " simulate --walks 0").code == 2);
  CHECK(run("--config " + (dir / "missing.json").string() + " simulate --walks 0").code == 2);
}

TEST_CASE("simulate is deterministic") {
  const auto a = scratch("sim_a"), b = scratch("sim_b");
  REQUIRE(run("--seed 4 --out-dir " + a.string() + " simulate --walks 12 --steps 50").code == 0);
  REQUIRE(run("--seed 4 --out-dir " + b.string() + " simulate --walks 12 --steps 50").code == 0);
  for (int i = 0; i < 12; ++i) {
    const auto name = "walk_" + std::to_string(i) + ".csv";
    CHECK(fppweb::read_text(a / name) == fppweb::read_text(b / name));
  }
  const auto empty = scratch("sim_empty");
  CHECK(run("--out-dir " + empty.string() + " simulate --walks 0").code == 0);
  CHECK(fppweb::read_text(empty / "manifest.csv") == "file,x,t\n");
}

TEST_CASE("distance queries") {
  const auto dir = scratch("dist").string();
  CHECK(run("--out-dir " + dir + " distance --u 0,0 --v 0,0").out == "0\n");
  CHECK(run("--out-dir " + dir + " distance --u 0,1 --v 0,0").out == "inf\n");
  CHECK(run("--out-dir " + dir + " distance --n 4 --u 1/2,0 --v 0,1/2").code == 0);
  const auto r = run("--out-dir " + dir + " distance --u 0,0 --v 1,2 --frontier");
  CHECK(r.code == 0);
  CHECK(fs::exists(fs::path(dir) / "frontier.csv"));
}

TEST_CASE("journey, bundle and boundary outputs") {
  const auto dir = scratch("jb");
  const std::string common = "--seed 2 --out-dir " + dir.string();
  CHECK(run(common + " journey --n 16 --x 1/3 --s -1/2 --sigma 0 1/3 --eta 1 -1 --horizon 2").code == 0);
  const auto j = fppweb::parse_path_csv(fppweb::read_text(dir / "journey.csv"));
  CHECK(j.dt == 1.0 / 16);
  CHECK(run(common + " bundle --n 4 --s -1 --sigma 0 --eta 1 --horizon 1").code == 0);
  CHECK(fppweb::read_text(dir / "bundle.csv").rfind("t,G,S,R,Rext,I,E,base_walk\n", 0) == 0);
  CHECK(run(common + " bundle --n 4 --s -1 --horizon 1").code == 2);  // needs a jump
  CHECK(run(common + " boundary --n 4 --side left").code == 0);
  CHECK(run(common + " boundary --side up").code == 2);
}

TEST_CASE("verify and converge") {
  const auto dir = scratch("verify");
  CHECK(run("--out-dir " + dir.string() + " verify").code == 0);
  CHECK(fs::exists(dir / "report.json"));

  fppweb::write_text(dir / "conv.json", R"({
    "itineraries": [{"name": "xi", "x": 0, "s": [-1,1], "sigma": [0], "eta": [1]}],
    "plans": [{"name": "c", "seeds": [0, 5], "n_values": [1, 4], "spec": "lazy", "jumps": "fig5",
               "itinerary": "xi", "horizon": 1}]
  })");
  CHECK(run("--config " + (dir / "conv.json").string() + " --out-dir " + dir.string() +
            " converge --plan c --n-ref 9")
            .code == 0);
  const auto csv = fppweb::read_text(dir / "convergence.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(run("--config " + (dir / "conv.json").string() + " converge --plan nope").code == 2);
}
