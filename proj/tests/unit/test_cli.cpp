#include "doctest.h"

#include "torweight/cli.hpp"

#include "../support/fans.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace torweight;
using namespace torweight::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("torweight_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const Json& j) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << dump(j);
  return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

struct Outcome {
  int code;
  std::string text;
  Json json;
};

Outcome go(const cli::RunConfig& c) {
  std::ostringstream out, log;
  const int code = cli::run(c, out, log);
  return {code, out.str(), Json::parse(out.str())};
}

std::string fan_file(const std::string& name, const Fan& f) { return write(name, fan_to_json(f.raw())); }

Json constant_weight(const Fan& f, long c) {
  Weight w;
  for (const auto& cone : f.cones()) w.set(cone, c);
  return weight_to_json(w);
}

int shell(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kData = TORWEIGHT_DATA_DIR;
const std::string kBin = TORWEIGHT_BIN;

}  // namespace

TEST_CASE("check accepts the constant weight") {
  const Fan f = testfans::p2();
  cli::RunConfig c;
  c.subcommand = "check";
  c.fan = fan_file("p2.json", f);
  c.weight = write("one.json", constant_weight(f, 1));
  auto r = go(c);
  CHECK(r.code == 0);
  CHECK(r.json["is_weight"] == Json(true));
  CHECK(r.json["seed"] == Json(cli::kDefaultSeed));

  Weight bad;
  bad.set({0}, 1);
  c.weight = write("lone_ray.json", weight_to_json(bad));
  r = go(c);
  CHECK(r.code == 0);
  CHECK(r.json["is_weight"] == Json(false));
  CHECK(!r.json["violations"].empty());
}

TEST_CASE("rr-matrix output parses back") {
  const Fan f = testfans::p112();
  cli::RunConfig c;
  c.subcommand = "rr-matrix";
  c.fan = fan_file("p112.json", f);
  c.seed = 12;
  auto r = go(c);
  REQUIRE(r.code == 0);
  const RRMatrix m = rr_from_json(r.json, f);
  for (const auto& a : f.cones())
    for (const auto& b : f.cones()) {
      Rational s = 0;
      for (const auto& g : f.cones()) s += m.mu(a, g) * m.nu(g, b);
      CHECK(s == (a == b ? 1 : 0));
    }
  // the flag recorded in the output reproduces the matrix
  c.flag = write("flag.json", r.json["flag"]);
  c.seed = 13;
  auto again = go(c);
  CHECK(again.json["mu"] == r.json["mu"]);
  CHECK(again.json["seed"] == Json(13));
}

TEST_CASE("product with a given displacement") {
  const Fan f = testfans::example2d();
  cli::RunConfig c;
  c.subcommand = "product";
  c.fan = fan_file("ex.json", f);
  c.w1 = write("one.json", constant_weight(f, 1));
  c.w2 = write("two.json", constant_weight(f, 2));
  c.flag = write("f11.json", Json::parse(R"({"vectors": [["1", "1"]]})"));
  c.displacement = "5,1";
  auto r = go(c);
  REQUIRE(r.code == 0);
  CHECK(weight_from_json(r.json) == weight_from_json(constant_weight(f, 2)));
  CHECK(r.json["displacement"] == Json::parse(R"(["5", "1"])"));
}

TEST_CASE("forgetful and euler agree on line bundles") {
  const Fan f = testfans::p2();
  cli::RunConfig c;
  c.fan = fan_file("p2.json", f);
  c.subcommand = "euler";
  c.divisor = write("o1.json", divisor_to_json({{0, Rational(1)}}));
  auto e = go(c);
  REQUIRE(e.code == 0);
  CHECK(e.json["values"][""] == Json(3));
  CHECK(e.json["values"]["0"] == Json(2));
  CHECK(e.json["values"]["0,1"] == Json(1));

  c.subcommand = "forgetful";
  c.pexp = write("o1.pexp.json", pexp_to_json(exp_pl(f, {{0, Rational(-1)}}, 1).values));
  auto g = go(c);
  REQUIRE(g.code == 0);
  CHECK(g.json["values"] == e.json["values"]);
  CHECK(g.json["direction"].size() == 2);
}

TEST_CASE("oracle agrees with balancing") {
  const Fan f = testfans::p1xp1();
  cli::RunConfig c;
  c.subcommand = "oracle";
  c.fan = fan_file("p1p1.json", f);
  c.weight = write("one.json", constant_weight(f, 1));
  auto r = go(c);
  REQUIRE(r.code == 0);
  CHECK(r.json["balancing"] == Json(true));
  CHECK(r.json["agree"] == Json(true));
  CHECK(r.json["divisors"].size() == 5);
  Weight bad;
  bad.set({0}, 1);
  c.weight = write("ray.json", weight_to_json(bad));
  r = go(c);
  CHECK(r.json["balancing"] == Json(false));
  CHECK(r.json["agree"] == Json(true));
}

TEST_CASE("the M05 example pairs to three") {
  cli::RunConfig c;
  c.subcommand = "pair";
  c.fan = kData + "/m05/fan.json";
  c.wy = kData + "/m05/trop_weight.json";
  c.we = kData + "/m05/psi_weight.json";
  auto r = go(c);
  REQUIRE(r.code == 0);
  CHECK(r.json["chi"] == Json(3));
}

TEST_CASE("invalid input exits with 1 and an error object") {
  const Fan f = testfans::p2();
  cli::RunConfig c;
  c.subcommand = "check";
  c.fan = "/nonexistent.json";
  c.weight = write("one.json", constant_weight(f, 1));
  auto r = go(c);
  CHECK(r.code == 1);
  CHECK(r.json["error"]["code"] == Json("FileNotFound"));
  CHECK(r.json["seed"] == Json(cli::kDefaultSeed));

  c.fan = write_text("broken.json", "{\"dim\": 2,");
  CHECK(go(c).json["error"]["code"] == Json("ParseError"));

  c.fan = write("dup.json", Json::parse(R"({"dim": 1, "rays": [[1], [1]], "max_cones": [[0], [1]]})"));
  CHECK(go(c).json["error"]["code"] == Json("NotStronglyConvex"));

  c.fan = fan_file("p2.json", f);
  Weight w;
  w.set({5}, 1);
  c.weight = write("far.json", weight_to_json(w));
  r = go(c);
  CHECK(r.code == 1);
  CHECK(r.json["error"]["code"] == Json("UnknownCone"));

  c.subcommand = "product";
  c.w1 = c.w2 = write("one.json", constant_weight(f, 1));
  c.displacement = "1,1,1";
  CHECK(go(c).json["error"]["code"] == Json("DimensionMismatch"));
  c.displacement = "1,0";
  CHECK(go(c).json["error"]["code"] == Json("NonGenericVector"));

  c.subcommand = "nope";
  CHECK(go(c).json["error"]["code"] == Json("UnknownSubcommand"));

  CHECK(cli::exit_code(Error("PoleSurvives", "x", ErrorClass::internal)) == 2);
  CHECK(cli::exit_code(Error("ParseError", "x", ErrorClass::input)) == 1);
}

TEST_CASE("the binary is deterministic in the seed") {
  const Fan f = testfans::p1123();
  const std::string fan = fan_file("p1123.json", f);
  const std::string one = write("one1123.json", constant_weight(f, 1));
  const std::string a = (scratch_dir() / "a.json").string(), b = (scratch_dir() / "b.json").string(),
                    d = (scratch_dir() / "d.json").string();
  const std::string base = kBin + " product --fan " + fan + " --w1 " + one + " --w2 " + one;
  REQUIRE(shell(base + " --seed 5 --out " + a) == 0);
  REQUIRE(shell(base + " --seed 5 --out " + b) == 0);
  REQUIRE(shell(base + " --seed 6 --out " + d) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(d));
  CHECK(Json::parse(slurp(a))["seed"] == Json(5));
  CHECK(Json::parse(slurp(d))["seed"] == Json(6));

  CHECK(shell(kBin + " check --fan /nonexistent.json --weight " + one + " >/dev/null 2>&1") == 1);
  CHECK(shell(kBin + " >/dev/null 2>&1") == 1);
  CHECK(shell(kBin + " check --fan " + fan + " >/dev/null 2>&1") == 1);
}
