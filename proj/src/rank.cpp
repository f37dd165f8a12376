#include "autorank/rank.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "json.hpp"

namespace autorank {

namespace {

using Clock = std::chrono::steady_clock;

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    return boost::hash_range(v.begin(), v.end());
  }
};

// DFA for Pref({u,v}*) over the sequence alphabet; state 0 is the dead state.
struct PrefixAutomaton {
  std::vector<std::uint32_t> delta;  // state * alphabet + letter
  std::size_t states = 0;
};

PrefixAutomaton prefix_automaton(const Word& u, const Word& v,
                                 const std::vector<Symbol>& alphabet) {
  // NFA states: 0 = block boundary; then (block, offset) for inner offsets.
  const Word* blocks[2] = {&u, &v};
  std::vector<std::pair<int, std::size_t>> nfa = {{-1, 0}};
  std::map<std::pair<int, std::size_t>, std::uint32_t> id = {{{-1, 0}, 0}};
  for (int b = 0; b < 2; ++b) {
    for (std::size_t o = 1; o < blocks[b]->size(); ++o) {
      id[{b, o}] = static_cast<std::uint32_t>(nfa.size());
      nfa.emplace_back(b, o);
    }
  }
  auto step = [&](std::uint32_t q, Symbol a, std::vector<std::uint32_t>& out) {
    auto advance = [&](int b, std::size_t o) {
      if ((*blocks[b])[o] != a) return;
      out.push_back(o + 1 == blocks[b]->size() ? 0u : id.at({b, o + 1}));
    };
    if (nfa[q].first < 0) {
      advance(0, 0);
      advance(1, 0);
    } else {
      advance(nfa[q].first, nfa[q].second);
    }
  };

  const std::size_t sigma = alphabet.size();
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> index;
  std::vector<std::vector<std::uint32_t>> subsets = {{}, {0}};
  index[{}] = 0;
  index[{0}] = 1;
  PrefixAutomaton out;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t a = 0; a < sigma; ++a) {
      std::vector<std::uint32_t> next;
      for (auto q : subsets[i]) step(q, alphabet[a], next);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      auto [it, fresh] = index.emplace(next, static_cast<std::uint32_t>(subsets.size()));
      if (fresh) subsets.push_back(next);
      out.delta.push_back(it->second);
    }
  }
  out.states = subsets.size();
  return out;
}

std::string big_str(const BigInt& v) { return v.str(); }

bool fits_small(const BigInt& v, Natural cap) { return v <= cap; }

Limits make_limits(const Budget& b, Clock::time_point start, const std::string& stage) {
  Limits l;
  l.max_states = b.max_automaton_states;
  l.deadline = start + b.wall_time;
  l.stage = stage;
  return l;
}

std::vector<Word> factors_or_budget(const Dfao& m, Natural n, std::size_t limit,
                                    const Limits& lim) {
  try {
    return distinct_factors(m, n, limit, lim);
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == "limit") {
      throw BudgetExceeded(lim.stage, std::to_string(limit) + " enumerated factors");
    }
    throw;
  }
}

std::string evidence_of(const FixedPairReport& r) {
  return "exact block check: transformations repeat after " + std::to_string(r.levels) +
         " levels (" + std::to_string(r.prefix_states) + "-state prefix automaton)";
}

}  // namespace

std::string RankVerdict::name() const {
  switch (result.index()) {
    case 0: return "Rank1";
    case 1: return "RankTwo";
    case 2: return "RankAtLeastThree";
    default: return "Inconclusive";
  }
}

BigInt lemma_L_constant(const BigInt& kappa, const BigInt& p) { return (15 * p + 4) * kappa; }

BigInt lemma_D_constant(const BigInt& kappa, const BigInt& p) {
  return 10 * p * p * kappa + p + 1;
}

FixedPairReport decide_fixed_pair_report(const Dfao& m, const Word& u, const Word& v,
                                         std::size_t max_levels) {
  if (u.empty() || v.empty()) throw Error("empty-word", "decide_fixed_pair: empty word");
  const auto& alphabet = m.alphabet();
  const PrefixAutomaton t = prefix_automaton(u, v, alphabet);
  const std::size_t nt = t.states;
  const std::size_t nq = m.num_states();
  const unsigned k = m.base();
  auto letter = [&](Symbol s) {
    return static_cast<std::size_t>(std::lower_bound(alphabet.begin(), alphabet.end(), s) -
                                    alphabet.begin());
  };

  // g[q * nt + s]: prefix-automaton state after reading the length-k^L block
  // generated from DFAO state q, starting in s.
  std::vector<std::uint32_t> g(nq * nt);
  for (std::size_t q = 0; q < nq; ++q) {
    const std::size_t a = letter(m.output(static_cast<std::uint32_t>(q)));
    for (std::size_t s = 0; s < nt; ++s) g[q * nt + s] = t.delta[s * alphabet.size() + a];
  }
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecHash> seen;
  FixedPairReport out;
  out.prefix_states = nt;
  for (std::size_t level = 0;; ++level) {
    if (g[m.initial() * nt + 1] == 0) {
      out.member = false;
      out.levels = level;
      return out;
    }
    if (!seen.emplace(g, level).second) {
      out.member = true;
      out.levels = level;
      return out;
    }
    if (level >= max_levels) {
      throw BudgetExceeded("fixed-pair", std::to_string(max_levels) + " levels");
    }
    std::vector<std::uint32_t> next(nq * nt);
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t s = 0; s < nt; ++s) {
        std::uint32_t cur = static_cast<std::uint32_t>(s);
        for (unsigned d = 0; d < k && cur != 0; ++d) {
          cur = g[m.next(static_cast<std::uint32_t>(q), d) * nt + cur];
        }
        next[q * nt + s] = cur;
      }
    }
    g = std::move(next);
  }
}

bool decide_fixed_pair(const Dfao& m, const Word& u, const Word& v, std::size_t max_levels) {
  return decide_fixed_pair_report(m, u, v, max_levels).member;
}

std::optional<ExplicitPair> find_small_pair(const Dfao& m, std::size_t max_total,
                                            const DecideOptions& opts, const Limits& limits) {
  std::map<Natural, std::vector<Word>> factors;
  for (std::size_t total = 2; total <= max_total; ++total) {
    for (std::size_t a = 1; a < total; ++a) {
      limits.check_time();
      const Word u = m.prefix(a);
      const Natural b = total - a;
      if (!factors.count(b)) {
        factors[b] = factors_or_budget(m, b, opts.budget.max_enumeration, limits);
      }
      for (const Word& v : factors[b]) {
        if (v == u) continue;
        const auto r = decide_fixed_pair_report(m, u, v, opts.budget.max_chain);
        if (r.member) return ExplicitPair{u, v, evidence_of(r)};
      }
    }
  }
  return std::nullopt;
}

UnboundedSearch decide_with_unbounded(const Dfao& m, const UnboundedFactor& w,
                                      const std::vector<UnboundedFactor>& unbounded,
                                      const AnalysisConstants& consts,
                                      const DecideOptions& opts, const Limits& limits) {
  const bool member = std::any_of(unbounded.begin(), unbounded.end(),
                                  [&](const UnboundedFactor& f) { return f.word == w.word; });
  if (!member) throw Error("precondition", "word is not in the unbounded set");
  const Word& u = w.word;
  const Budget& budget = opts.budget;
  UnboundedSearch out;
  auto try_pair = [&](const Word& v) {
    if (v.empty() || v == u) return false;
    const auto r = decide_fixed_pair_report(m, u, v, budget.max_chain);
    if (r.member) out.pair = ExplicitPair{u, v, evidence_of(r)};
    return r.member;
  };

  // Partners that are themselves unbounded, or no longer than u.
  for (const auto& other : unbounded) {
    if (try_pair(other.word)) return out;
  }
  for (Natural len = 1; len <= u.size(); ++len) {
    for (const Word& v : factors_or_budget(m, len, budget.max_enumeration, limits)) {
      if (try_pair(v)) return out;
    }
  }

  // Remove the leading u^i so that u is not a prefix of what remains.
  Dfao rest = m;
  try {
    rest = strip_max_power_prefix(m, u, limits).second;
  } catch (const Error& e) {
    if (e.code() == "periodic-under-u") return out;
    throw;
  }

  // Partners inside Fac(u^omega) are prefixes of the rest of length <= ell.
  Natural ell = 0;
  bool all_in_power = false;
  try {
    ell = longest_prefix_in_power_factors(rest, u, limits);
  } catch (const Error& e) {
    if (e.code() != "periodic-under-u") throw;
    all_in_power = true;
    ell = budget.candidate_pair_len;
  }
  for (Natural r = 1; r <= std::min<Natural>(ell, budget.max_enumeration); ++r) {
    limits.check_time();
    if (try_pair(rest.prefix(r))) return out;
  }
  if (all_in_power) {
    out.gap = Inconclusive{limits.stage, "ultimately periodic remainder",
                           "the remainder lies in Fac(" + u.to_string() + "^omega)"};
    return out;
  }

  // Main case: v = rest[0..r) with r > ell, decided through setup_formula when
  // the block count L is small enough to compile.
  const BigInt L = lemma_L_constant(consts.kappa, consts.p);
  std::optional<Natural> use_L;
  if (opts.assume_L) {
    use_L = *opts.assume_L;
    out.used_assumed_L = true;
  } else if (fits_small(L, 6)) {
    use_L = static_cast<Natural>(L);
  }
  if (use_L) {
    const auto at = first_occurrence(rest, u, limits);
    if (!at) throw Error("internal", "unbounded factor missing after stripping");
    const Natural N = std::max<Natural>(u.size(), ell + 1);
    const Formula f = setup_formula(*at, u.size(), *use_L, N) &&
                      !unbounded_exponent_formula(Term(0), var("r")) &&
                      !factor_of_power_formula(u, Term(0), var("r"));
    const auto wit = witness(f, rest, limits);
    if (wit) {
      const Word v = rest.prefix(wit->at("r"));
      if (try_pair(v)) return out;
      out.gap = Inconclusive{limits.stage, "L=" + big_str(L) + " blocks",
                             "setup witness " + v.to_string() + " failed the exact check"};
      return out;
    }
    if (!out.used_assumed_L) return out;
    out.gap = Inconclusive{limits.stage, "L=" + big_str(L) + " blocks",
                           "setup formula unsatisfiable with an assumed L"};
    return out;
  }
  for (Natural r = ell + 1; r <= ell + budget.candidate_pair_len; ++r) {
    limits.check_time();
    if (try_pair(rest.prefix(r))) return out;
  }
  out.gap = Inconclusive{limits.stage, "L=" + big_str(L) + " blocks",
                         "partners of " + u.to_string() + " checked up to length " +
                             std::to_string(ell + budget.candidate_pair_len)};
  return out;
}

RankVerdict rank2_decide(const Dfao& m, const DecideOptions& opts) {
  const auto start = Clock::now();
  RankVerdict v;
  v.result = RankAtLeastThree{};
  Limits lim = make_limits(opts.budget, start, "Step0");
  auto finish = [&]() -> RankVerdict {
    v.budget_report.elapsed_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    v.budget_report.last_stage = lim.stage;
    return v;
  };
  auto checked = [&](const Word& a, const Word& b) {
    ++v.budget_report.fixed_pair_checks;
    return decide_fixed_pair_report(m, a, b, opts.budget.max_chain);
  };

  try {
    if (auto p = is_purely_periodic(m, lim)) {
      v.result = Rank1{*p, m.prefix(*p)};
      return finish();
    }
    if (!opts.disable_fast_paths) {
      const auto letters = occurring_letters(m, lim);
      if (letters.size() == 2) {
        const Word a{letters[0]};
        const Word b{letters[1]};
        v.result = RankTwo{ExplicitPair{a, b, evidence_of(checked(a, b))}};
        return finish();
      }
      if (auto up = is_ultimately_periodic(m, lim); up && up->preperiod > 0) {
        const Word a = m.prefix(up->preperiod);
        const Word full = m.prefix(up->preperiod + up->period);
        const Word b = full.substr(up->preperiod);
        v.result = RankTwo{ExplicitPair{a, b, evidence_of(checked(a, b))}};
        return finish();
      }
      if (auto pair = find_small_pair(m, opts.budget.candidate_pair_len, opts, lim)) {
        v.budget_report.fixed_pair_checks += 1;
        v.result = RankTwo{*pair};
        return finish();
      }
    }

    lim.stage = "Step1";
    const AnalysisConstants c = analysis_constants(m, lim);
    v.constants.C = c.C;
    v.constants.kappa = c.kappa;
    v.constants.B = c.B;
    v.constants.p = c.p;
    v.constants.L = lemma_L_constant(c.kappa, c.p);

    lim.stage = "Step2";
    const auto unbounded = unbounded_primitive_factors(m, lim);

    lim.stage = "Step3";
    std::optional<Inconclusive> step3_gap;
    for (const auto& w : unbounded) {
      auto res = decide_with_unbounded(m, w, unbounded, c, opts, lim);
      if (res.used_assumed_L) {
        v.soundness.unsound = true;
        v.soundness.notes.push_back("assume_L=" + std::to_string(*opts.assume_L) +
                                    " replaces the computed L");
      }
      if (res.pair) {
        v.result = RankTwo{*res.pair};
        return finish();
      }
      if (res.gap && !step3_gap) step3_gap = res.gap;
    }

    lim.stage = "Step4";
    BigInt D = lemma_D_constant(c.kappa, c.p);
    if (opts.assume_D) {
      if (*opts.assume_D < 2) throw Error("option", "assume_D must be at least 2");
      v.soundness.unsound = true;
      v.soundness.notes.push_back("assume_D=" + std::to_string(*opts.assume_D) +
                                  " replaces D=" + big_str(D));
      D = *opts.assume_D;
    }
    v.constants.D = D;

    lim.stage = "Step5";
    const bool fits = D <= 62 && (BigInt(1) << static_cast<unsigned>(D)) <= opts.budget.max_patterns;
    if (!fits) {
      v.result = Inconclusive{"Step5", "2^" + big_str(D) + " patterns",
                              "max_patterns=" + std::to_string(opts.budget.max_patterns)};
      return finish();
    }
    const auto d = static_cast<unsigned>(D);
    PowerFreeness pf;
    if (fits_small(c.p, 64)) pf.p = static_cast<Natural>(c.p);
    const std::vector<std::string> vars = {"i", "j", "r", "s"};
    const Dfa constraints = compile(setup2_constraints(pf), m, vars, lim);
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << d); ++n) {
      const std::uint64_t gray = n ^ (n >> 1);
      std::vector<std::uint8_t> bits(d);
      for (unsigned t = 0; t < d; ++t) bits[t] = static_cast<std::uint8_t>((gray >> t) & 1);
      const FactorizationPattern pattern(bits);
      ++v.budget_report.patterns_checked;
      const Dfa sat = compile(Formula::embed(constraints) && setup2_layout(pattern), m, vars, lim);
      const auto wit = shortest_accepted(sat);
      if (!wit) continue;
      const std::array<Natural, 4> ijrs = {(*wit)[0], (*wit)[1], (*wit)[2], (*wit)[3]};
      const Word u0 = m.prefix(ijrs[0] + ijrs[2]).substr(ijrs[0]);
      const Word u1 = m.prefix(ijrs[1] + ijrs[3]).substr(ijrs[1]);
      const auto r = checked(u0, u1);
      if (r.member) {
        v.result = RankTwo{ExplicitPair{u0, u1, "pattern " + pattern.to_string() + "; " +
                                                    evidence_of(r)}};
      } else {
        v.result = RankTwo{ExistenceByFormula{pattern, ijrs}};
      }
      return finish();
    }
    if (step3_gap) {
      v.result = *step3_gap;
    } else {
      v.result = RankAtLeastThree{};
    }
  } catch (const BudgetExceeded& e) {
    v.result = Inconclusive{e.stage(), e.cap(), e.what()};
  }
  return finish();
}

std::string verdict_to_json(const RankVerdict& v, int indent, bool include_timing) {
  using nlohmann::json;
  json j;
  j["verdict"] = v.name();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Rank1>) {
          j["period"] = r.period;
          j["root"] = r.root.to_string();
        } else if constexpr (std::is_same_v<T, RankTwo>) {
          if (const auto* p = std::get_if<ExplicitPair>(&r.certificate)) {
            j["certificate"] = {{"kind", "ExplicitPair"},
                                {"u", p->u.to_string()},
                                {"v", p->v.to_string()},
                                {"evidence", p->evidence}};
          } else {
            const auto& f = std::get<ExistenceByFormula>(r.certificate);
            json c = {{"kind", "ExistenceByFormula"}, {"pattern", f.pattern.to_string()}};
            if (f.witness) {
              c["witness"] = {{"i", (*f.witness)[0]}, {"j", (*f.witness)[1]},
                              {"r", (*f.witness)[2]}, {"s", (*f.witness)[3]}};
            }
            j["certificate"] = c;
          }
        } else if constexpr (std::is_same_v<T, Inconclusive>) {
          j["inconclusive"] = {{"stage", r.stage}, {"required", r.required}, {"detail", r.detail}};
        }
      },
      v.result);
  auto opt = [](const std::optional<BigInt>& b) -> json {
    return b ? json(big_str(*b)) : json(nullptr);
  };
  j["constants"] = {{"C", opt(v.constants.C)},     {"kappa", opt(v.constants.kappa)},
                    {"p", opt(v.constants.p)},     {"B", opt(v.constants.B)},
                    {"D", opt(v.constants.D)},     {"L", opt(v.constants.L)}};
  j["budget_report"] = {{"last_stage", v.budget_report.last_stage},
                        {"patterns_checked", v.budget_report.patterns_checked},
                        {"fixed_pair_checks", v.budget_report.fixed_pair_checks}};
  if (include_timing) j["budget_report"]["elapsed_seconds"] = v.budget_report.elapsed_seconds;
  j["soundness_flags"] = {{"unsound", v.soundness.unsound}, {"notes", v.soundness.notes}};
  if (v.soundness.unsound) j["soundness_flags"]["label"] = "UNSOUND-FOR-PRODUCTION";
  return j.dump(indent);
}

std::string verdict_to_text(const RankVerdict& v) {
  std::ostringstream out;
  out << "verdict: " << v.name() << '\n';
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Rank1>) {
          out << "period: " << r.period << " (root " << r.root.to_string() << ")\n";
        } else if constexpr (std::is_same_v<T, RankTwo>) {
          if (const auto* p = std::get_if<ExplicitPair>(&r.certificate)) {
            out << "certificate: pair u=" << p->u.to_string() << " v=" << p->v.to_string()
                << '\n'
                << "evidence: " << p->evidence << '\n';
          } else {
            out << "certificate: pattern "
                << std::get<ExistenceByFormula>(r.certificate).pattern.to_string()
                << " is realisable\n";
          }
        } else if constexpr (std::is_same_v<T, Inconclusive>) {
          out << "stage: " << r.stage << "\nrequired: " << r.required << "\ndetail: " << r.detail
              << '\n';
        }
      },
      v.result);
  auto show = [&](const char* name, const std::optional<BigInt>& b) {
    if (!b) return;
    std::string s = big_str(*b);
    if (s.size() > 60) s = s.substr(0, 20) + "...(" + std::to_string(s.size()) + " digits)";
    out << name << ": " << s << '\n';
  };
  show("C", v.constants.C);
  show("kappa", v.constants.kappa);
  show("p", v.constants.p);
  show("B", v.constants.B);
  show("L", v.constants.L);
  show("D", v.constants.D);
  if (v.soundness.unsound) {
    out << "soundness: UNSOUND-FOR-PRODUCTION";
    for (const auto& n : v.soundness.notes) out << "; " << n;
    out << '\n';
  }
  return out.str();
}

}  // namespace autorank
