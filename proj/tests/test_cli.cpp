// End-to-end checks of the command line binary, driven through popen.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "nlbox/boxgen.hpp"
#include "nlbox/core.hpp"

using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(NLBOX_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
    output += buf.data();
  }
  const int status = pclose(pipe);
  return CommandResult{WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("generate --bell --n inf emits the PR box with CHSH 4") {
  const auto res = run_cli(
      "generate --bell --theta 0.7853981634 --theta-tilde 4.3196898987 --n inf");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.output);
  const auto box = nlbox::BehaviorBox::from_json(doc.at("box"));
  // The sequential path carries |1/sqrt(2)|^2 rounding, so compare cells
  // within float tolerance rather than bitwise.
  const auto pr = nlbox::pr_box();
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(box.cells()[i] - pr.cells()[i]) < 1e-12);
  }
  CHECK(std::abs(doc.at("analysis").at("chsh").at("value").get<double>() - 4.0) <
        1e-12);
  CHECK(doc.at("analysis").at("no_signaling").at("passed").get<bool>());
  CHECK(doc.at("n").get<std::string>() == "inf");
}

TEST_CASE("generate flags a signaling box") {
  const auto res = run_cli(
      "generate --alpha2 0.8 --theta 1.5707963268 --theta-tilde 4.7123889804 "
      "--n 4");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.output);
  CHECK_FALSE(doc.at("analysis").at("no_signaling").at("passed").get<bool>());
  CHECK(doc.at("analysis")
            .at("no_signaling")
            .at("max_violation_alice_to_bob")
            .get<double>() > 1e-4);
}

TEST_CASE("generate with aligned axes gives deterministic correlations") {
  const auto res = run_cli(
      "generate --bell --theta 0 --theta-tilde 3.1415926536 --n 2");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.output);
  const auto box = nlbox::BehaviorBox::from_json(doc.at("box"));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      CHECK(std::abs(box.p(0, 0, x, y) - 0.5) < 1e-9);
      CHECK(std::abs(box.p(1, 1, x, y) - 0.5) < 1e-9);
      CHECK(box.p(0, 1, x, y) < 1e-9);
      CHECK(box.p(1, 0, x, y) < 1e-9);
    }
  }
}

TEST_CASE("pi tokens parse to the same box as decimal radians") {
  const auto rtok = run_cli("generate --bell --theta pi/4 --theta-tilde 11pi/8 --n 6");
  const auto rdec = run_cli(
      "generate --bell --theta 0.78539816339744831 "
      "--theta-tilde 4.3196898986859651 --n 6");
  REQUIRE(rtok.exit_code == 0);
  REQUIRE(rdec.exit_code == 0);
  const auto btok =
      nlbox::BehaviorBox::from_json(json::parse(rtok.output).at("box"));
  const auto bdec =
      nlbox::BehaviorBox::from_json(json::parse(rdec.output).at("box"));
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(btok.cells()[i] - bdec.cells()[i]) < 1e-15);
  }
}

TEST_CASE("generate --csv prints the box table") {
  const auto res = run_cli(
      "generate --bell --theta pi/4 --theta-tilde 11pi/8 --n 4 --csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.rfind("x,y,a,b,p\n", 0) == 0);
  CHECK_NOTHROW(nlbox::BehaviorBox::from_csv(res.output));
}

TEST_CASE("sweep-n over the pinned observable grid") {
  const auto res = run_cli("sweep-n --mode chsh-observables --grid 2,10");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.rfind("n,chsh\n", 0) == 0);
  double n1 = 0, v1 = 0, n2 = 0, v2 = 0;
  REQUIRE(std::sscanf(res.output.c_str(), "n,chsh\n%lf,%lf\n%lf,%lf", &n1, &v1,
                      &n2, &v2) == 4);
  CHECK(n1 == 2.0);
  CHECK(std::abs(v1 - 2.0 * std::sqrt(2.0)) < 1e-12);
  CHECK(n2 == 10.0);
  CHECK(std::abs(v2 - 3.9988) < 1e-3);
}

TEST_CASE("sweep-n bell mode is monotone at the PR angles") {
  const auto res = run_cli(
      "sweep-n --mode bell --theta pi/4 --theta-tilde 11pi/8 "
      "--min 0 --max 30 --steps 31");
  REQUIRE(res.exit_code == 0);
  std::stringstream in(res.output);
  std::string line;
  REQUIRE(std::getline(in, line));
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    double n = 0, v = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &n, &v) == 2);
    CHECK(v >= prev);
    prev = v;
    ++rows;
  }
  CHECK(rows == 31);
}

TEST_CASE("sweep-n with an empty grid emits only the header") {
  const auto res = run_cli("sweep-n --mode chsh-observables --grid \"\"");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output == "n,chsh\n");
}

TEST_CASE("sweep-angle with a single point emits a single row") {
  const auto res = run_cli("sweep-angle --theta pi/4 --n 20 --grid 11pi/8");
  REQUIRE(res.exit_code == 0);
  std::stringstream in(res.output);
  std::string header, row, extra;
  REQUIRE(std::getline(in, header));
  CHECK(header == "theta_tilde,chsh");
  REQUIRE(std::getline(in, row));
  CHECK_FALSE(std::getline(in, extra));
  double tt = 0, v = 0;
  REQUIRE(std::sscanf(row.c_str(), "%lf,%lf", &tt, &v) == 2);
  CHECK(std::abs(tt - 11.0 * 3.14159265358979 / 8.0) < 1e-9);
  CHECK(v > 3.99);
}

TEST_CASE("--out writes the data to a file instead of stdout") {
  const std::string path = "/tmp/nlbox_cli_out_test.csv";
  std::remove(path.c_str());
  const auto res = run_cli(
      "generate --bell --theta pi/4 --theta-tilde 11pi/8 --n 4 --csv --out " + path);
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream content;
  content << in.rdbuf();
  CHECK_NOTHROW(nlbox::BehaviorBox::from_csv(content.str()));
  std::remove(path.c_str());
}

TEST_CASE("sweep output is byte-stable across runs") {
  const std::string args =
      "sweep-angle --theta 3pi/8 --n 20 --min 0.1 --max 6.2 --steps 50";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("solve") {
  SUBCASE("trivial-cc target lands on 2.601") {
    const auto res = run_cli("solve --target trivial-cc");
    REQUIRE(res.exit_code == 0);
    CHECK(std::abs(std::stod(res.output) - 2.601) <= 1e-3);
  }
  SUBCASE("Tsirelson target lands on 2") {
    const auto res = run_cli("solve --target 2.8284271247");
    REQUIRE(res.exit_code == 0);
    CHECK(std::abs(std::stod(res.output) - 2.0) < 1e-6);
  }
  SUBCASE("out-of-range target exits with code 2") {
    CHECK(run_cli("solve --target 5").exit_code == 2);
    CHECK(run_cli("solve --target 4").exit_code == 2);
    CHECK(run_cli("solve --target 0").exit_code == 2);
  }
}

TEST_CASE("verify") {
  SUBCASE("bell scenario passes") {
    const auto res = run_cli("verify --shots 20000 --seed 7", true);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("verify: PASS") != std::string::npos);
  }
  SUBCASE("signaling scenario still passes internal consistency") {
    const auto res =
        run_cli("verify --shots 20000 --seed 7 --scenario signaling", true);
    CHECK(res.exit_code == 0);
  }
  SUBCASE("zero shots is a usage error") {
    CHECK(run_cli("verify --shots 0").exit_code == 2);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("generate --theta nonsense --theta-tilde 0 --n 2").exit_code == 2);
  CHECK(run_cli("generate --bell --alpha2 0.5 --theta 0 --theta-tilde 0 --n 2")
            .exit_code == 2);
  CHECK(run_cli("generate --alpha2 1.5 --theta 0 --theta-tilde 0 --n 2")
            .exit_code == 2);
  CHECK(run_cli("generate --bell --theta 0 --theta-tilde 0 --n -3").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
}
