#include "autorank/error.hpp"
#include "autorank/fixtures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace autorank;
using namespace autorank::testing;

TEST_CASE("evaluation examples") {
  const Dfao tm = load_fixture("thue-morse");
  CHECK(tm(3) == 0);
  CHECK(tm(2) == 1);
  CHECK(tm(0) == 0);
  CHECK(eval_sequence(load_fixture("mod3"), 5) == 2);
}

TEST_CASE("fixtures match their direct generators") {
  const std::pair<const char*, Symbol (*)(std::uint64_t)> cases[] = {
      {"thue-morse", thue_morse}, {"mod3", mod3}, {"pow2-char", pow2_char},
      {"ternary-tm", ternary_tm}};
  for (const auto& [name, gen] : cases) {
    INFO(name);
    const Dfao m = load_fixture(name);
    CHECK(m.leading_zero_invariant());
    CHECK(m.prefix(1 << 12) == generate(gen, 1 << 12));
  }
}

TEST_CASE("leading zeros do not change the output") {
  for (const auto& name : fixture_names()) {
    const Dfao m = load_fixture(name);
    for (Natural n = 0; n <= (1 << 12); ++n) {
      std::vector<unsigned> digits;
      for (Natural t = n; t > 0; t /= m.base()) digits.insert(digits.begin(), t % m.base());
      const Symbol plain = m.output(m.run(digits));
      digits.insert(digits.begin(), 0u);
      if (m.output(m.run(digits)) != plain || plain != m(n)) {
        FAIL(name << " at " << n);
      }
    }
  }
}

TEST_CASE("text format round trip") {
  for (const auto& name : fixture_names()) {
    const Dfao m = load_fixture(name);
    CHECK(load_dfao(store_dfao(m)) == m);
    CHECK(store_dfao(load_dfao(store_dfao(m))) == store_dfao(m));
  }
}

TEST_CASE("malformed files report line and column") {
  const std::string bad = "k 2\nalphabet 0 1\nstates 2\ninitial 0\noutput 0 0\noutput 1 7\n";
  try {
    load_dfao(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  CHECK_THROWS_AS(load_dfao("k 2\nalphabet 0\nstates 1\ninitial 0\noutput 0 0\n"), Error);
  CHECK_THROWS_AS(load_dfao("k x\n"), Error);
}

TEST_CASE("leading-zero sensitive automata are rejected") {
  // Reading 0 from the initial state changes the output.
  const std::string text =
      "k 2\nalphabet 0 1\nstates 2\ninitial 0\noutput 0 0\noutput 1 1\n"
      "trans 0 0 1\ntrans 0 1 0\ntrans 1 0 1\ntrans 1 1 1\n";
  CHECK_THROWS_AS(load_dfao(text), Error);
}

TEST_CASE("unknown fixture names") {
  try {
    load_fixture("fibonacci");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "unknown-fixture");
    CHECK(std::string(e.what()).find("thue-morse") != std::string::npos);
  }
}

TEST_CASE("minimize_dfao merges equivalent states") {
  // Thue-Morse with a duplicated state pair.
  const std::string text =
      "k 2\nalphabet 0 1\nstates 4\ninitial 0\noutput 0 0\noutput 1 1\noutput 2 0\noutput 3 1\n"
      "trans 0 0 2\ntrans 0 1 1\ntrans 1 0 3\ntrans 1 1 2\n"
      "trans 2 0 0\ntrans 2 1 3\ntrans 3 0 1\ntrans 3 1 0\n";
  const Dfao big = load_dfao(text);
  const Dfao small = minimize_dfao(big);
  CHECK(small.num_states() == 2);
  CHECK(small.prefix(1024) == big.prefix(1024));
  CHECK(minimize_dfao(small) == small);
}
