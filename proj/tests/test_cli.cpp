#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace autorank;
using namespace autorank::testing;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "autorank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("rank2 command") {
  auto r = run({"rank2", "--fixture", "mod3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: Rank1") != std::string::npos);
  CHECK(r.out.find("period: 3") != std::string::npos);

  r = run({"rank2", "--fixture", "ternary-tm", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "RankTwo");
  CHECK(j["certificate"]["kind"] == "ExplicitPair");
  CHECK(run({"rank2", "--fixture", "ternary-tm", "--format", "json"}).out == r.out);

  r = run({"rank2", "--fixture", "ternary-tm", "--disable-fast-paths", "--budget-patterns", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: Inconclusive") != std::string::npos);
  CHECK(r.out.find("stage: Step5") != std::string::npos);
}

TEST_CASE("assume-D is marked unsound") {
  const auto r = run({"rank2", "--fixture", "ternary-tm", "--disable-fast-paths", "--assume-D",
                      "4", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["soundness_flags"]["unsound"] == true);
  CHECK(r.out.find("UNSOUND-FOR-PRODUCTION") != std::string::npos);
}

TEST_CASE("eval matches the direct generators") {
  auto r = run({"eval", "--fixture", "thue-morse", "--n", "0..2^12", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["values"].size() == 4096);
  for (std::uint64_t n = 0; n < 4096; ++n) CHECK(j["values"][n] == thue_morse(n));
  r = run({"eval", "--fixture", "mod3", "--n", "5"});
  CHECK(r.out == "5 2\n");
}

TEST_CASE("analysis commands") {
  CHECK(run({"max-exponent", "--fixture", "thue-morse", "--word", "0"}).out == "2\n");
  CHECK(run({"max-exponent", "--fixture", "pow2-char", "--word", "0"}).out == "unbounded\n");
  auto r = run({"periodic", "--fixture", "mod3"});
  CHECK(r.out.find("purely periodic: yes, period 3") != std::string::npos);
  r = run({"factors", "--fixture", "thue-morse", "--length", "3", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["count"] == 6);
  r = run({"analyze", "--fixture", "pow2-char", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["unbounded_primitive_factors"][0]["word"] == "0");
  CHECK(j["purely_periodic"].is_null());
}

TEST_CASE("decide command") {
  CHECK(run({"decide", "--fixture", "thue-morse", "--formula", "E i: x[i]=0 & x[i+1]=0"}).out ==
        "true\n");
  const auto r = run({"decide", "--fixture", "thue-morse", "--formula", "x[i]=0 & x[i+1]=0",
                      "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["witness"]["i"] == 5);
  const auto bad = run({"decide", "--fixture", "thue-morse", "--formula", "E i: x[i] ="});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("column") != std::string::npos);
}

TEST_CASE("oracle commands") {
  auto r = run({"oracle", "dp", "--fixture", "ternary-tm", "--u", "01", "--v", "20",
                "--prefix-len", "16384", "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["factorizes"] == true);
  CHECK(j["kind"] == "evidence");
  r = run({"oracle", "pairs", "--fixture", "thue-morse", "--prefix-len", "1024", "--max-total",
           "2"});
  CHECK(r.out.find("0 1\n") != std::string::npos);
  r = run({"oracle", "appearance", "--fixture", "thue-morse", "--n", "2"});
  CHECK(r.out.find("A(2) = 7") != std::string::npos);
  r = run({"oracle", "comb-search", "--max-uv", "4", "--max-w", "12"});
  CHECK(r.out.find("no counterexample") != std::string::npos);
  r = run({"oracle", "depsilon-search"});
  CHECK(r.out.find("no counterexample") != std::string::npos);
}

TEST_CASE("input errors") {
  auto r = run({"rank2", "--fixture", "fibonacci"});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown-fixture") != std::string::npos);
  r = run({"rank2"});
  CHECK(r.code == 1);
  r = run({"rank2", "--input", "/nonexistent/file.dfao"});
  CHECK(r.code == 1);
  r = run({"bogus"});
  CHECK(r.code != 0);
  r = run({"rank2", "--fixture", "mod3", "--format", "xml"});
  CHECK(r.code != 0);
}
