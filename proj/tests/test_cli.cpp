#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// golden-file and exit-code tests run against the built binary

namespace {

const std::string kCli = CONFLUENTIA_CLI_PATH;
const std::string kData = CONFLUENTIA_DATA_DIR;

int run(const std::string& args, const std::string& stdout_to = "/dev/null") {
  std::string cmd = kCli + " " + args + " > " + stdout_to + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_out_") + name;  // test working directory
}

}  // namespace

TEST_CASE("classify matches the golden reports") {
  for (const std::string stem :
       {"mathieu_algebraic", "oscillator_algebraic", "lame"}) {
    std::string out = tmp_path(stem + ".json");
    REQUIRE(run("classify --ode " + kData + "/" + stem + ".json --out " + out) == 0);
    CHECK(slurp(out) == slurp(kData + "/" + stem + ".report.json"));
  }
}

TEST_CASE("classify exit codes") {
  CHECK(run("classify --ode " + kData + "/malformed.json") == 2);
  CHECK(run("classify --ode " + kData + "/does_not_exist.json") == 2);
  CHECK(run("classify --ode " + kData + "/common_factor.json") == 3);
  SECTION("no partial output on parse failure") {
    std::string out = tmp_path("partial.json");
    std::remove(out.c_str());
    CHECK(run("classify --ode " + kData + "/malformed.json --out " + out) == 2);
    std::ifstream check(out);
    CHECK(!check.good());
  }
}

TEST_CASE("mathieu table") {
  std::string out = tmp_path("mathieu.csv");
  REQUIRE(run("mathieu --parity even --n 0..2 --q 0 --out " + out) == 0);
  std::string csv = slurp(out);
  CHECK(csv.find("parity,n,q,a,K,residual\n") == 0);
  CHECK(csv.find("even,0,0,0,") != std::string::npos);
  CHECK(csv.find("even,1,0,1,") != std::string::npos);
  CHECK(csv.find("even,2,0,4,") != std::string::npos);

  SECTION("se starts at n = 1") {
    CHECK(run("mathieu --parity odd --n 0 --q 1") == 2);
  }
  SECTION("truncation cap failure flags rows and exits 4") {
    std::string cmd = "CONFLUENTIA_MAX_TRUNCATION=32 " + kCli +
                      " mathieu --parity even --n 0 --q 1e6 --out " + tmp_path("cap.csv") +
                      " 2> /dev/null";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 4);
    CHECK(slurp(tmp_path("cap.csv")).find("nan") != std::string::npos);
  }
}

TEST_CASE("confluence sweep command") {
  SECTION("strictly decreasing errors for n_max 1 on a coarse list") {
    std::string out = tmp_path("sweep.csv");
    REQUIRE(run("confluence --n-max 1 --alphas 0.4,0.2 --grid 101 --out " + out) == 0);
    std::string csv = slurp(out);
    CHECK(csv.find("alpha,q,n,parity,sup_err,mu,mu_defect,predicted_defect\n") == 0);
    // companion gnuplot script
    CHECK(slurp(tmp_path("sweep.gp")).find("logscale") != std::string::npos);
  }
  SECTION("single alpha skips the monotonicity check") {
    CHECK(run("confluence --n-max 0 --alphas 0.4 --grid 51") == 0);
  }
  SECTION("non-decreasing alpha list is a usage error") {
    CHECK(run("confluence --alphas 0.2,0.4") == 2);
  }
}

TEST_CASE("mra checks") {
  std::string out = tmp_path("window.json");
  REQUIRE(run("mra --check window --out " + out) == 0);
  CHECK(slurp(out).find("\"partition\"") != std::string::npos);
  CHECK(run("mra --check ops") == 0);
  CHECK(run("mra --check nonsense") == 2);
}
