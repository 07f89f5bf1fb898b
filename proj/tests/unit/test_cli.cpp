#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "edgelaw/fredholm.hpp"
#include "edgelaw/rng.hpp"

using edgelaw::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Non-comment lines split on commas.
std::vector<std::vector<std::string>> table(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string comment_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string tag = "# " + key + " ";
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0) return line.substr(tag.size());
  return "";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("threshold grids") {
    using edgelaw::cli::parse_grid;
    CHECK(parse_grid("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_grid("1,2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(parse_grid("0.7") == std::vector<double>{0.7});
    CHECK_THROWS(parse_grid("1:0:0.1"));
    CHECK_THROWS(parse_grid("0:1"));
    CHECK_THROWS(parse_grid("1,x"));
  }

  TEST_CASE("cdf of the point-to-line law") {
    const Result r = call({"cdf", "--family", "piflat", "--beta", "1,1.5,2", "--a", "0:2:0.5"});
    REQUIRE(r.code == 0);
    const auto rows = table(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"threshold", "value", "resolution", "error_estimate"});
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double a = std::stod(rows[k][0]);
      CHECK(std::abs(std::stod(rows[k][1]) - edgelaw::det_ratio({1.0, 1.5, 2.0}, a)) < 1e-10);
    }
    CHECK(r.out.rfind("# edgelaw ", 0) == 0);
    CHECK(r.out.find("# args: cdf --family piflat") != std::string::npos);

    // one rate replicated by --n
    const Result one = call({"cdf", "--family", "piflat", "--beta", "0.5", "--n", "1", "--a", "0.5"});
    REQUIRE(one.code == 0);
    CHECK(table(one.out)[1][1] == "0.393469340287");
  }

  TEST_CASE("cdf of the LOE law") {
    const Result r = call({"cdf", "--family", "loe", "--n", "1", "--a", "1"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(table(r.out)[1][1]) - (1.0 - std::exp(-2.0))) < 1e-12);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(call({"cdf", "--family", "loe", "--a", "1"}).code == 2);
    CHECK(call({"cdf", "--family", "nope", "--a", "1"}).code == 2);
    CHECK(call({"cdf", "--family", "piflat", "--beta", "1,-1", "--a", "1"}).code == 2);
    CHECK(call({"cdf", "--family", "piflat", "--beta", "1,2", "--n", "3", "--a", "1"}).code == 2);
    CHECK(call({"cdf", "--family", "piflat", "--beta", "1"}).code == 2);
    CHECK(call({"simulate", "--family", "airy"}).code == 2);
    CHECK(call({"simulate", "--family", "loe", "--n", "2", "--samples", "0"}).code == 2);
    CHECK(call({"--threads", "-1", "cdf", "--family", "loe", "--n", "1", "--a", "1"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"--help"}).code == 0);
  }

  TEST_CASE("simulate is reproducible and independent of the worker count") {
    const std::vector<std::string> args{"simulate", "--family", "piflat", "--beta", "1,1", "--samples", "4000",
                                        "--seed", "17", "--raw"};
    const Result a = call(args);
    std::vector<std::string> more{"--threads", "3"};
    more.insert(more.end(), args.begin(), args.end());
    const Result b = call(more);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(table(a.out) == table(b.out));
    CHECK(comment_value(a.out, "seed") == "17");
    CHECK(table(a.out).size() == 4001);

    // two rates 1: an Exp(2) corner plus the larger of two Exp(2), mean 5/4
    const double mean = std::stod(comment_value(a.out, "mean"));
    const double se = std::stod(comment_value(a.out, "std_error"));
    CHECK(std::abs(mean - 1.25) < 3.0 * se);

    const Result q = call({"simulate", "--family", "loe", "--n", "1", "--samples", "2000"});
    REQUIRE(q.code == 0);
    CHECK(table(q.out).size() == 1001);
    CHECK(comment_value(q.out, "seed") == std::to_string(edgelaw::default_seed()));
  }

  TEST_CASE("compare verdicts") {
    const Result ok = call({"compare", "--experiment", "piflat-exponential"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("verdict,piflat-exponential,") != std::string::npos);
    CHECK(ok.out.find(",PASS\n") != std::string::npos);

    const Result unknown = call({"compare", "--experiment", "nope"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("burke-invariance") != std::string::npos);
    CHECK(call({"compare", "--experiment", "piflat-exponential", "--scale", "0"}).code == 2);
  }

  TEST_CASE("defaults table") {
    const Result r = call({"--show-defaults"});
    REQUIRE(r.code == 0);
    const auto rows = table(r.out);
    CHECK(rows[0] == std::vector<std::string>{"key", "value", "note"});
    CHECK(rows[1][0] == "seed");
    CHECK(rows[1][1] == "\"" + std::to_string(edgelaw::default_seed()) + "\"");
  }

  TEST_CASE("output matches the stored golden table") {
    const Result r = call({"cdf", "--family", "piflat", "--beta", "1,1.5,2", "--a", "0:2:0.5"});
    REQUIRE(r.code == 0);
    std::ifstream f(std::string(EDGELAW_GOLDEN_DIR) + "/cdf_piflat.csv");
    REQUIRE(f.good());
    std::stringstream golden;
    golden << f.rdbuf();
    const auto want = table(golden.str()), got = table(r.out);
    REQUIRE(want.size() == got.size());
    CHECK(want[0] == got[0]);
    for (std::size_t k = 1; k < want.size(); ++k) {
      CHECK(want[k][0] == got[k][0]);
      CHECK(std::abs(std::stod(want[k][1]) - std::stod(got[k][1])) < 1e-11);
      CHECK(want[k][2] == got[k][2]);
    }
  }
}
