#include "autorank/analysis.hpp"

#include <algorithm>
#include <map>

namespace autorank {

namespace {

BigInt big_pow(unsigned base, std::size_t e) {
  BigInt out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

Word factor_at(const Dfao& m, Natural i, Natural len) {
  std::vector<Symbol> out;
  out.reserve(len);
  for (Natural t = 0; t < len; ++t) out.push_back(m(i + t));
  return Word(std::move(out));
}

Natural max_single(const Dfa& a, const char* what) {
  const auto values = enumerate_accepted(a, 1u << 20);
  if (values.empty()) throw Error("internal", std::string(what) + ": empty relation");
  Natural best = 0;
  for (const auto& t : values) best = std::max(best, t[0]);
  return best;
}

}  // namespace

std::string to_string(const MaxExponent& e) {
  if (std::holds_alternative<NotAFactor>(e)) return "not-a-factor";
  if (std::holds_alternative<Unbounded>(e)) return "unbounded";
  const auto& r = std::get<Rational>(e);
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Dfa appearance_relation(const Dfao& m, const Limits& limits) {
  const Term n = var("n");
  const Term mm = var("m");
  const auto i = fresh_var("i");
  const auto j = fresh_var("j");
  const Formula works =
      forall(i, exists(j, le(var(j) + n, mm) && factoreq(var(i), var(j), n)));
  const Dfa w = compile(works, m, {"n", "m"}, limits);
  const auto prev = fresh_var("m");
  const Formula least =
      Formula::embed(w) &&
      (eq(mm, 0) || exists(prev, eq(var(prev) + Term(1), mm) &&
                                     !Formula::embed(rename(w, "m", prev))));
  return compile(least, m, {"n", "m"}, limits);
}

BigInt appearance_constant(const Dfao& m, const Limits& limits, std::size_t* r0) {
  const std::size_t r = num_states(appearance_relation(m, limits));
  if (r0) *r0 = r;
  return big_pow(m.base(), r + 1);
}

PowerBound power_bound(const Dfao& m, const Limits& limits) {
  PowerBound out;
  out.C = appearance_constant(m, limits);
  const Dfa phi = compile(unbounded_powers_formula(var("i"), var("n"), var("p")), m,
                          {"i", "p", "n"}, limits);
  out.r = num_states(phi);
  out.B = big_pow(m.base(), out.r) * out.C;
  return out;
}

AnalysisConstants analysis_constants(const Dfao& m, const Limits& limits) {
  AnalysisConstants out;
  out.C = appearance_constant(m, limits, &out.appearance_states);
  const Dfa phi = compile(unbounded_powers_formula(var("i"), var("n"), var("p")), m,
                          {"i", "p", "n"}, limits);
  out.power_states = num_states(phi);
  out.B = big_pow(m.base(), out.power_states) * out.C;
  out.p = out.B;
  out.kappa = out.C + 1;
  return out;
}

std::vector<UnboundedFactor> unbounded_primitive_factors(const Dfao& m,
                                                         const Limits& limits) {
  const Dfa a = compile(unbounded_primitive_formula(var("i"), var("p")), m, {"i", "p"}, limits);
  std::vector<Tuple> pairs;
  try {
    pairs = enumerate_accepted(a, 1u << 16);
  } catch (const Error& e) {
    if (e.code() == "possibly-infinite") {
      throw Error("internal", "infinitely many unbounded primitive factors reported");
    }
    throw;
  }
  std::vector<UnboundedFactor> out;
  for (const auto& t : pairs) {
    out.push_back({t[0], t[1], factor_at(m, t[0], t[1])});
  }
  std::sort(out.begin(), out.end(), [](const UnboundedFactor& a, const UnboundedFactor& b) {
    return a.length != b.length ? a.length < b.length : a.word < b.word;
  });
  return out;
}

std::optional<Natural> first_occurrence(const Dfao& m, const Word& w, const Limits& limits) {
  if (w.empty()) return 0;
  auto a = witness(word_at(var("i"), w), m, limits);
  if (!a) return std::nullopt;
  return a->at("i");
}

MaxExponent max_exponent(const Dfao& m, const Word& z, const Limits& limits) {
  if (z.empty()) throw Error("empty-word", "max_exponent: empty word");
  const auto first = first_occurrence(m, z, limits);
  if (!first) return NotAFactor{};
  const Term i(*first);
  const Term r(static_cast<Natural>(z.size()));
  if (decide(unbounded_exponent_formula(i, r), m, limits)) return Unbounded{};

  const Term mm = var("m");
  const auto j = fresh_var("j");
  const auto j2 = fresh_var("j");
  const Formula top = exists(j, match_f(i, var(j), mm, r)) &&
                      !exists(j2, match_f(i, var(j2), mm + Term(1), r));
  const auto values = enumerate_accepted(compile(top, m, {"m"}, limits), 16);
  if (values.size() != 1) throw Error("internal", "max_exponent: expected one maximal length");
  return Rational(static_cast<std::int64_t>(values[0][0]), static_cast<std::int64_t>(z.size()));
}

std::optional<Natural> is_purely_periodic(const Dfao& m, const Limits& limits) {
  const auto i = fresh_var("i");
  const Term p = var("p");
  auto w = witness(ge(p, 1) && forall(i, seq_eq(var(i), var(i) + p)), m, limits);
  if (!w) return std::nullopt;
  return w->at("p");
}

std::optional<UltimatePeriod> is_ultimately_periodic(const Dfao& m, const Limits& limits) {
  auto body = [](const Term& c, const Term& p) {
    const auto i = fresh_var("i");
    return ge(p, 1) && forall(i, implies(ge(var(i), c), seq_eq(var(i), var(i) + p)));
  };
  const auto p = fresh_var("p");
  auto wc = witness(exists(p, body(var("c"), var(p))), m, limits);
  if (!wc) return std::nullopt;
  const Natural c = wc->at("c");
  auto wp = witness(body(Term(c), var("p")), m, limits);
  if (!wp) throw Error("internal", "ultimate period vanished");
  return UltimatePeriod{c, wp->at("p")};
}

std::vector<Symbol> occurring_letters(const Dfao& m, const Limits& limits) {
  std::vector<Symbol> out;
  for (Symbol a : m.alphabet()) {
    const auto n = fresh_var("n");
    if (decide(exists(n, seq_at(var(n), a)), m, limits)) out.push_back(a);
  }
  return out;
}

Dfao shift_sequence(const Dfao& m, Natural s, const Limits& limits) {
  std::vector<Dfa> parts;
  for (Symbol a : m.alphabet()) {
    parts.push_back(compile(seq_at(var("n") + Term(s), a), m, {"n"}, limits));
  }
  const unsigned k = m.base();
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> states;
  std::vector<std::uint32_t> delta;
  std::vector<Symbol> out;
  auto intern = [&](std::vector<std::uint32_t> st) {
    auto [it, fresh] = index.emplace(st, static_cast<std::uint32_t>(states.size()));
    if (fresh) {
      std::optional<Symbol> sym;
      for (std::size_t a = 0; a < parts.size(); ++a) {
        if (parts[a].accepting(st[a])) sym = m.alphabet()[a];
      }
      if (!sym) throw Error("internal", "shifted sequence has no letter at some position");
      out.push_back(*sym);
      states.push_back(std::move(st));
      limits.check_states(states.size());
    }
    return it->second;
  };
  std::vector<std::uint32_t> init;
  for (const auto& d : parts) init.push_back(d.initial());
  intern(init);
  for (std::size_t q = 0; q < states.size(); ++q) {
    for (unsigned d = 0; d < k; ++d) {
      std::vector<std::uint32_t> nx;
      for (std::size_t a = 0; a < parts.size(); ++a) nx.push_back(parts[a].next(states[q][a], d));
      delta.push_back(intern(std::move(nx)));
    }
  }
  return minimize_dfao(Dfao(k, m.alphabet(), 0, std::move(delta), std::move(out)));
}

std::pair<Natural, Dfao> strip_max_power_prefix(const Dfao& m, const Word& u,
                                                const Limits& limits) {
  if (u.empty()) throw Error("empty-word", "strip_max_power_prefix: empty word");
  const Natural d = u.size();
  const Term n = var("n");
  const auto q = fresh_var("q");
  const Formula f = exists(q, eq(n, d * var(q))) && period_f(Term(0), n, Term(d)) &&
                    (eq(n, 0) || word_at(Term(0), u));
  const Dfa a = compile(f, m, {"n"}, limits);
  if (!is_finite(a)) {
    throw Error("periodic-under-u", "the sequence is " + u.to_string() + "^omega");
  }
  const Natural len = max_single(a, "strip_max_power_prefix");
  return {len / d, len == 0 ? m : shift_sequence(m, len, limits)};
}

std::vector<Word> distinct_factors(const Dfao& m, Natural n, std::size_t limit,
                                   const Limits& limits) {
  if (n == 0) return {Word{}};
  const Term i = var("i");
  const auto t = fresh_var("t");
  const Formula first = forall(t, implies(lt(var(t), i), !factoreq(var(t), i, Term(n))));
  const auto starts = enumerate_accepted(compile(first, m, {"i"}, limits), limit);
  std::vector<Word> out;
  for (const auto& s : starts) out.push_back(factor_at(m, s[0], n));
  return out;
}

Natural longest_prefix_in_power_factors(const Dfao& m, const Word& w, const Limits& limits) {
  const Dfa a = compile(factor_of_power_formula(w, Term(0), var("m")), m, {"m"}, limits);
  if (!is_finite(a)) {
    throw Error("periodic-under-u", "every prefix is a factor of " + w.to_string() + "^omega");
  }
  return max_single(a, "longest_prefix_in_power_factors");
}

}  // namespace autorank
