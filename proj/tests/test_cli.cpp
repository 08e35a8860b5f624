#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lalg/cli.hpp"
#include "lalg/io.hpp"

using namespace lalg;
using nlohmann::json;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

const std::string data = LALG_TEST_DATA;

}  // namespace

TEST_CASE("check") {
  const auto r = call({"check", "--format", "json", data + "/four_ckl.txt"});
  REQUIRE(r.status == exit_ok);
  const auto j = json::parse(r.out);
  CHECK(j["is_ckl"] == true);
  CHECK(j["is_hilbert"] == false);
  CHECK(j["witnesses"].contains("hilbert"));
  CHECK(call({"check", data + "/not_l.txt"}).status == exit_ok);
}

TEST_CASE("malformed input exits 2") {
  CHECK(call({"check", data + "/malformed.txt"}).status == exit_malformed);
  CHECK(call({"check", data + "/missing.txt"}).status == exit_malformed);
  CHECK(call({"ideals", data + "/not_l.txt"}).status == exit_malformed);
  CHECK(call({"frobnicate"}).status == exit_malformed);
  CHECK(call({"enumerate", "--class", "magma"}).status == exit_malformed);
  CHECK(call({"symmetric", data + "/two_by_three.txt"}).status == exit_malformed);
}

TEST_CASE("help exits 0") {
  const auto r = call({"--help"});
  CHECK(r.status == exit_ok);
  CHECK(r.out.find("enumerate") != std::string::npos);
}

TEST_CASE("ideals and spectrum") {
  const auto i = call({"ideals", "--format", "json", data + "/four_ckl.txt"});
  REQUIRE(i.status == exit_ok);
  CHECK(json::parse(i.out)["ideals"] == json{{0}, {0, 2}, {0, 1, 3}, {0, 1, 2, 3}});
  const auto s = call({"spectrum", "--format", "json", data + "/seven_ckl.txt"});
  REQUIRE(s.status == exit_ok);
  CHECK(json::parse(s.out)["primes"].size() == 4);
}

TEST_CASE("semidirect") {
  const auto r = call({"semidirect", "--format", "json", data + "/two_by_three.txt"});
  REQUIRE(r.status == exit_ok);
  const auto j = json::parse(r.out);
  CHECK(j["ideals"].size() == 3);
  CHECK(j["ideal_counts"]["product"] == 3);
  const auto text = call({"semidirect", data + "/two_by_three.txt"});
  CHECK(parse_table(text.out).size() == 6);
}

TEST_CASE("enumerate streams tables") {
  const auto r = call({"enumerate", "--size", "4", "--class", "ckl"});
  REQUIRE(r.status == exit_ok);
  CHECK(parse_tables(r.out).size() == 10);
  const auto j = call({"enumerate", "--max-n", "4", "--format", "json"});
  REQUIRE(j.status == exit_ok);
  const auto sizes = json::parse(j.out)["sizes"];
  CHECK(sizes[3]["count"] == 44);
  CHECK(j.err.find("size 4") != std::string::npos);
}

TEST_CASE("spent budgets exit 3") {
  CHECK(call({"enumerate", "--size", "5", "--budget-nodes", "10"}).status == exit_resource_bound);
}

TEST_CASE("closure and conjecture") {
  const auto c = call({"closure", "--format", "json", data + "/a3.txt"});
  REQUIRE(c.status == exit_ok);
  CHECK(json::parse(c.out)["self_similar"] == false);
  const auto k = call({"conjecture", "--max-n", "4", "--format", "json"});
  REQUIRE(k.status == exit_ok);
  CHECK(json::parse(k.out)["counterexamples"].empty());
}
