#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "spectralforge/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "forge-cli-test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int forge(const std::string& args) {
  const std::string cmd = std::string(FORGE_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json report(const fs::path& dir) { return json::parse(sforge::read_file(dir / "report.json")); }

const char* kK4 = "spectralforge-graph v1 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

}  // namespace

TEST_CASE("spectrum of K4") {
  const auto dir = scratch("spectrum");
  sforge::write_file_atomic(dir / "k4.txt", kK4);
  REQUIRE(forge("spectrum --graph " + (dir / "k4.txt").string() + " --out " + dir.string()) == 0);
  const auto r = report(dir);
  const std::vector<double> want{3, -1, -1, -1};
  const auto got = r["results"]["eigenvalues"].get<std::vector<double>>();
  REQUIRE(got.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  CHECK(r["pass"] == true);
  for (const auto& c : r["certificates"]) {
    CHECK(c.contains("value"));
    CHECK(c.contains("bound"));
    CHECK(c.contains("pass"));
  }
}

TEST_CASE("secular with s = 0 echoes mu") {
  const auto dir = scratch("secular");
  REQUIRE(forge("secular --mu 2.9 --s 0 --out " + dir.string()) == 0);
  CHECK(report(dir)["results"]["lambda"] == 2.9);
  REQUIRE(forge("secular --mu 2.5 --s 0 --out " + dir.string()) == 0);
  CHECK(report(dir)["results"]["lambda"].is_null());
}

TEST_CASE("verify swap-drift over ten seeds") {
  const auto dir = scratch("verify");
  REQUIRE(forge("--seed 7 verify --suite swap-drift --seeds 10 --out " + dir.string()) == 0);
  const auto r = report(dir);
  CHECK(r["certificates"].size() == 10);
  for (const auto& c : r["certificates"]) CHECK(c["pass"] == true);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  CHECK(forge("") == 2);
  CHECK(forge("nosuch") == 2);
  CHECK(forge("gen --n 10 --bogus 1") == 2);
  CHECK(forge("spectrum --graph " + (dir / "missing.txt").string() + " --out " + dir.string()) == 1);
  CHECK(forge("gen --n 5 --d 3 --out " + dir.string()) == 1);
  CHECK(forge("gen --n 40 --d 3 --lambda2-ceiling 0.5 --max-retries 3 --out " + dir.string()) == 1);
}

TEST_CASE("config file with flag override, byte-identical reruns") {
  const auto dir = scratch("config");
  sforge::write_file_atomic(dir / "c.json",
                            R"({"command": "interp-l2", "n": 400, "seed": 3, "target": 2.9})");
  const std::string base = "--config " + (dir / "c.json").string() + " --n 160 --out ";
  REQUIRE(forge(base + (dir / "a").string()) == 0);
  REQUIRE(forge(base + (dir / "b").string()) == 0);
  const auto r = report(dir / "a");
  CHECK(r["config"]["n"] == 160);
  CHECK(r["config"]["seed"] == 3);
  CHECK(r["config"]["target"] == 2.9);
  for (const char* f : {"report.json", "trace.csv", "graph.txt"})
    CHECK(sforge::read_file(dir / "a" / f) == sforge::read_file(dir / "b" / f));
  const auto trace = sforge::read_file(dir / "a" / "trace.csv");
  CHECK(trace.rfind("step,surgery,eigenvalue,girth,counter\n", 0) == 0);
}
