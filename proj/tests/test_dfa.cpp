#include "autorank/compile.hpp"
#include "autorank/fixtures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace autorank;
using namespace autorank::testing;

namespace {
constexpr Natural kMax = 1 << 10;

bool accepts(const Dfa& a, std::initializer_list<Natural> v) {
  return a.accepts(std::vector<Natural>(v));
}
}  // namespace

TEST_CASE("relation builder examples") {
  CHECK(accepts(add_rel(2), {2, 3, 5}));
  CHECK_FALSE(accepts(add_rel(2), {2, 3, 6}));
  CHECK(accepts(const_mul_rel(2, 3), {4, 12}));
  CHECK(accepts(less_rel(2), {0, 1}));
  CHECK_FALSE(accepts(less_rel(2), {1, 1}));
  CHECK(num_states(eq_rel(2)) == 2);
  CHECK(num_states(constant_dfa(2, true)) == 1);
}

TEST_CASE("relation builders agree with arithmetic up to 2^10") {
  for (unsigned k : {2u, 3u}) {
    const Dfa eq = eq_rel(k), lt = less_rel(k), add = add_rel(k), mul = const_mul_rel(k, 3),
              c = const_rel(k, 37);
    for (Natural x = 0; x <= kMax; ++x) {
      REQUIRE(accepts(c, {x}) == (x == 37));
      for (Natural y = 0; y <= kMax; ++y) {
        if (accepts(eq, {x, y}) != (x == y) || accepts(lt, {x, y}) != (x < y) ||
            accepts(mul, {x, y}) != (y == 3 * x) || !accepts(add, {x, y, x + y}) ||
            accepts(add, {x, y, x + y + 1 + (x ^ y) % 5})) {
          FAIL("k=" << k << " x=" << x << " y=" << y);
        }
      }
    }
  }
}

TEST_CASE("linear constraints") {
  // 2x + 3 <= y
  LinearConstraint c;
  c.terms = {{"x", 2}, {"y", -1}};
  c.constant = 3;
  c.op = LinearConstraint::Op::Le;
  const Dfa a = linear_rel(2, c);
  for (Natural x = 0; x < 64; ++x) {
    for (Natural y = 0; y < 200; ++y) CHECK(accepts(a, {x, y}) == (2 * x + 3 <= y));
  }
}

TEST_CASE("combinator laws") {
  const Dfa a = add_rel(2);
  const Dfa b = less_rel(2, "x", "z");
  CHECK(equivalent(complement(complement(a)), a));
  CHECK(complement(complement(a)) == a);
  CHECK(equivalent(intersect(a, a), a));
  CHECK(equivalent(unite(a, a), a));
  const Dfa all_n = project(eq_rel(2, "i", "n"), "i");
  CHECK(all_n.tracks() == 1);
  CHECK(equivalent(all_n, extend_tracks(constant_dfa(2, true), {"n"})));

  const Dfa both = intersect(a, b);
  const Dfa either = unite(a, b);
  for (Natural x = 0; x < 20; ++x) {
    for (Natural y = 0; y < 20; ++y) {
      for (Natural z = 0; z < 40; ++z) {
        const bool in_a = x + y == z;
        const bool in_b = x < z;
        CHECK(both.accepts(std::vector<Natural>{x, y, z}) == (in_a && in_b));
        CHECK(either.accepts(std::vector<Natural>{x, y, z}) == (in_a || in_b));
      }
    }
  }
}

TEST_CASE("emptiness, witnesses and enumeration") {
  const Dfao tm = load_fixture("thue-morse");
  CHECK(is_empty(compile(ge(var("n"), 1) && le(var("n"), 0), tm)));
  const Dfa small = compile(lt(var("n"), 3), tm);
  const auto vals = enumerate_accepted(small, 10);
  CHECK(vals == std::vector<Tuple>{{0}, {1}, {2}});
  CHECK(is_finite(small));
  CHECK_FALSE(is_finite(compile(ge(var("n"), 3), tm)));
  try {
    enumerate_accepted(compile(ge(var("n"), 3), tm), 10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "possibly-infinite");
  }
  try {
    enumerate_accepted(compile(lt(var("n"), 30), tm), 10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "limit");
  }
  const auto first = first_accepted(compile(ge(var("n"), 3), tm), 4);
  CHECK(first == std::vector<Tuple>{{3}, {4}, {5}, {6}});
}

TEST_CASE("property: leading-zero closure of constructed automata") {
  Seeded s(21);
  INFO("seed " << s.seed);
  const Dfa rels[] = {add_rel(2), less_rel(3), const_mul_rel(2, 5), eq_rel(3),
                      complement(add_rel(3))};
  for (const Dfa& a : rels) {
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<Natural> v;
      for (std::size_t t = 0; t < a.tracks(); ++t) v.push_back(s.rng() % 500);
      const auto word = a.encode(v);
      const auto padded = a.encode(v, 1 + s.rng() % 3);
      CHECK(a.accepts_word(word) == a.accepts_word(padded));
      CHECK(a.decode(padded) == v);
    }
  }
}

TEST_CASE("property: minimize is idempotent and language preserving") {
  Seeded s(22);
  INFO("seed " << s.seed);
  // Random unminimized automata over one track, base 2.
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 2 + s.rng() % 12;
    std::vector<std::uint32_t> delta;
    std::vector<char> acc;
    for (std::uint32_t q = 0; q < n; ++q) {
      acc.push_back(static_cast<char>(s.rng() % 2));
      for (int a = 0; a < 2; ++a) delta.push_back(static_cast<std::uint32_t>(s.rng() % n));
    }
    const Dfa raw(2, {"n"}, 0, delta, acc);
    const Dfa m = minimize(raw);
    CHECK(minimize(m) == m);
    CHECK(m.num_states() <= raw.num_states());
    for (int w = 0; w < 200; ++w) {
      std::vector<std::uint32_t> word(s.rng() % 12);
      for (auto& c : word) c = static_cast<std::uint32_t>(s.rng() % 2);
      CHECK(raw.accepts_word(word) == m.accepts_word(word));
    }
  }
}

TEST_CASE("sequence automata") {
  const Dfao tm = load_fixture("thue-morse");
  const Symbol zero = 0;
  const Dfa zeros = sequence_dfa(tm, "n", std::span<const Symbol>(&zero, 1));
  const Dfa same = sequence_eq_dfa(tm, "a", "b");
  for (Natural n = 0; n < 512; ++n) {
    CHECK(zeros.accepts(std::vector<Natural>{n}) == (thue_morse(n) == 0));
    CHECK(same.accepts(std::vector<Natural>{n, n / 3}) == (thue_morse(n) == thue_morse(n / 3)));
  }
}
