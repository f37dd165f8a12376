#include "autorank/analysis.hpp"
#include "autorank/fixtures.hpp"
#include "autorank/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace autorank;
using namespace autorank::testing;

namespace {
// x = 1 0^omega
Dfao one_then_zeros() {
  return load_dfao(
      "k 2\nalphabet 0 1\nstates 2\ninitial 0\noutput 0 1\noutput 1 0\n"
      "trans 0 0 0\ntrans 0 1 1\ntrans 1 0 1\ntrans 1 1 1\n");
}
Dfao zeros() {
  return load_dfao("k 2\nalphabet 0\nstates 1\ninitial 0\noutput 0 0\ntrans 0 0 0\ntrans 0 1 0\n");
}
}  // namespace

TEST_CASE("appearance constant bounds the brute-force appearance function") {
  for (const auto& name : fixture_names()) {
    INFO(name);
    const Dfao m = load_fixture(name);
    const BigInt C = appearance_constant(m);
    const auto view = oracle::PrefixView::of(m, 1 << 16);
    for (std::size_t n = 1; n <= 128; ++n) {
      CHECK(BigInt(oracle::brute_appearance(view, n)) <= C * n);
    }
  }
  const auto view = oracle::PrefixView::of(zeros(), 64);
  CHECK(oracle::brute_appearance(view, 5) == 5);
}

TEST_CASE("appearance relation is the brute-force function on small n") {
  const Dfao tm = load_fixture("thue-morse");
  const Dfa rel = appearance_relation(tm);
  const auto view = oracle::PrefixView::of(tm, 1 << 14);
  for (Natural n = 1; n <= 16; ++n) {
    const Natural a = oracle::brute_appearance(view, n);
    CHECK(rel.accepts(std::vector<Natural>{n, a}));
    CHECK_FALSE(rel.accepts(std::vector<Natural>{n, a + 1}));
    CHECK_FALSE(rel.accepts(std::vector<Natural>{n, a - 1}));
  }
}

TEST_CASE("power bound") {
  for (const auto& name : fixture_names()) {
    const Dfao m = load_fixture(name);
    const PowerBound pb = power_bound(m);
    BigInt kr = 1;
    for (std::size_t t = 0; t < pb.r; ++t) kr *= m.base();
    CHECK(pb.B == kr * pb.C);
    const auto c = analysis_constants(m);
    CHECK(c.p == c.B);
    CHECK(c.kappa == c.C + 1);
    CHECK(c.B == pb.B);
  }
}

TEST_CASE("unbounded primitive factors") {
  CHECK(unbounded_primitive_factors(load_fixture("thue-morse")).empty());
  CHECK(unbounded_primitive_factors(load_fixture("mod3")).size() == 3);
  const auto p2 = unbounded_primitive_factors(load_fixture("pow2-char"));
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].word == Word{0});
  CHECK(p2[0].first_position == 0);
  const auto z = unbounded_primitive_factors(zeros());
  REQUIRE(z.size() == 1);
  CHECK(z[0].word == Word{0});
  for (const auto& name : fixture_names()) {
    const Dfao m = load_fixture(name);
    for (const auto& f : unbounded_primitive_factors(m)) {
      CHECK(is_primitive(f.word));
      CHECK(std::holds_alternative<Unbounded>(max_exponent(m, f.word)));
    }
  }
}

TEST_CASE("max exponent") {
  const Dfao tm = load_fixture("thue-morse");
  CHECK(max_exponent(tm, Word::digits("0")) == MaxExponent(Rational(2)));
  CHECK(max_exponent(tm, Word::digits("00")) == MaxExponent(Rational(1)));
  CHECK(std::holds_alternative<NotAFactor>(max_exponent(tm, Word::digits("000"))));
  CHECK(std::holds_alternative<Unbounded>(max_exponent(load_fixture("pow2-char"),
                                                      Word::digits("0"))));
}

TEST_CASE("max exponent agrees with brute force") {
  for (const char* name : {"thue-morse", "ternary-tm", "pow2-char", "mod3"}) {
    const Dfao m = load_fixture(name);
    const auto view = oracle::PrefixView::of(m, 1 << 16);
    for (std::size_t len = 1; len <= 4; ++len) {
      for (const Word& z : distinct_factors(m, len, 64)) {
        INFO(name << " " << z.to_string());
        const auto e = max_exponent(m, z);
        const auto b = oracle::brute_max_exponent(view, z);
        REQUIRE(b);
        if (const auto* r = std::get_if<Rational>(&e)) {
          CHECK(*r == *b);
        } else {
          CHECK(std::holds_alternative<Unbounded>(e));
          CHECK(*b >= Rational(64));
        }
      }
    }
  }
  const auto view = oracle::PrefixView::of(load_fixture("thue-morse"), 1 << 16);
  CHECK(oracle::brute_max_exponent(view, Word::digits("0")) == Rational(2));
  CHECK(max_exponent(load_fixture("thue-morse"), Word::digits("0110")) ==
        MaxExponent(*oracle::brute_max_exponent(view, Word::digits("0110"))));
}

TEST_CASE("periodicity") {
  CHECK(is_purely_periodic(load_fixture("mod3")) == std::optional<Natural>(3));
  CHECK_FALSE(is_purely_periodic(load_fixture("thue-morse")));
  CHECK_FALSE(is_ultimately_periodic(load_fixture("thue-morse")));
  CHECK(is_ultimately_periodic(one_then_zeros()) == std::optional(UltimatePeriod{1, 1}));
  CHECK_FALSE(is_purely_periodic(one_then_zeros()));
  const Word t = load_fixture("thue-morse").prefix(1 << 12);
  for (std::size_t p = 1; p <= 64; ++p) {
    CHECK(t.substr(2048, 1024) != t.substr(2048 + p, 1024));
  }
}

TEST_CASE("letters, shifts and stripping") {
  CHECK(occurring_letters(load_fixture("mod3")) == std::vector<Symbol>{0, 1, 2});
  CHECK(occurring_letters(load_fixture("thue-morse")) == std::vector<Symbol>{0, 1});
  const Dfao tm = load_fixture("thue-morse");
  CHECK(shift_sequence(tm, 1)(0) == 1);
  for (Natural s : {1u, 2u, 5u, 13u}) {
    const Dfao sh = shift_sequence(tm, s);
    CHECK(sh.prefix(1 << 12) == tm.prefix((1 << 12) + s).substr(s));
  }
  const Dfao tern = load_fixture("ternary-tm");
  const auto [imax, rest] = strip_max_power_prefix(tern, Word::digits("01"));
  CHECK(imax == 1);
  CHECK(rest.prefix(64) == tern.prefix(66).substr(2));
  try {
    strip_max_power_prefix(load_fixture("mod3"), Word::digits("012"));
    FAIL("expected periodic-under-u");
  } catch (const Error& e) {
    CHECK(e.code() == "periodic-under-u");
  }
}

TEST_CASE("distinct factors and power prefixes") {
  const Dfao tm = load_fixture("thue-morse");
  const auto f3 = distinct_factors(tm, 3, 100);
  CHECK(f3.size() == 6);
  CHECK(f3.front() == Word::digits("011"));
  CHECK(first_occurrence(tm, Word::digits("00")) == std::optional<Natural>(5));
  CHECK_FALSE(first_occurrence(tm, Word::digits("000")));
  // ternary-tm = 01 20 20 01 ...: longest prefix inside Fac((01)^omega) is "01".
  CHECK(longest_prefix_in_power_factors(load_fixture("ternary-tm"), Word::digits("01")) == 2);
  CHECK(longest_prefix_in_power_factors(tm, Word::digits("01")) == 2);
}
