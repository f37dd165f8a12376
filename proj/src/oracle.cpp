#include "autorank/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace autorank::oracle {

namespace {

bool match_at(const Word& w, std::size_t pos, const Word& b) {
  if (pos + b.size() > w.size()) return false;
  return std::equal(b.begin(), b.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

std::vector<Word> all_words(std::size_t length, unsigned alphabet) {
  std::vector<Word> out = {Word{}};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (Symbol a = 0; a < alphabet; ++a) {
        Word e = w;
        e.push_back(a);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Cyclic block automaton of {u,v}^omega: state o < |u| is offset o in u,
// state |u| + o is offset o in v. Offsets 0 are both block boundaries.
class BlockNfa {
 public:
  BlockNfa(const Word& u, const Word& v) : u_(u), v_(v) {}
  std::size_t size() const { return u_.size() + v_.size(); }

  std::vector<char> all() const { return std::vector<char>(size(), 1); }

  std::vector<char> step(const std::vector<char>& s, Symbol a) const {
    std::vector<char> out(size(), 0);
    for (std::size_t q = 0; q < size(); ++q) {
      if (!s[q]) continue;
      const bool in_u = q < u_.size();
      const Word& b = in_u ? u_ : v_;
      const std::size_t o = in_u ? q : q - u_.size();
      if (b[o] != a) continue;
      if (o + 1 < b.size()) {
        out[q + 1] = 1;
      } else {
        out[0] = 1;
        out[u_.size()] = 1;
      }
    }
    return out;
  }

  std::vector<char> run(std::vector<char> s, const Word& w) const {
    for (Symbol a : w) {
      s = step(s, a);
      if (std::none_of(s.begin(), s.end(), [](char c) { return c != 0; })) break;
    }
    return s;
  }

 private:
  Word u_, v_;
};

bool any(const std::vector<char>& s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return c != 0; });
}

Word substitute(const std::string& pattern, const Word& u, const Word& v) {
  Word out;
  for (char c : pattern) out += c == 'x' ? u : v;
  return out;
}

std::vector<std::string> patterns_up_to(std::size_t max_len) {
  std::vector<std::string> out;
  std::vector<std::string> level = {""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& p : level) {
      next.push_back(p + 'x');
      next.push_back(p + 'y');
    }
    level = std::move(next);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace

PrefixView PrefixView::of(const Dfao& m, std::size_t length) { return {m.prefix(length)}; }

std::optional<std::vector<std::size_t>> dp_factorize(const Word& w, const Word& u,
                                                     const Word& v) {
  if (u.empty() || v.empty()) throw Error("empty-word", "dp_factorize: empty word");
  const std::size_t n = w.size();
  std::vector<char> ok(n + 1, 0);
  ok[n] = 1;
  for (std::size_t i = n; i-- > 0;) {
    ok[i] = (match_at(w, i, u) && ok[i + u.size()]) || (match_at(w, i, v) && ok[i + v.size()]);
  }
  if (!ok[0]) return std::nullopt;
  std::vector<std::size_t> cuts = {0};
  std::size_t i = 0;
  while (i < n) {
    i += (match_at(w, i, u) && ok[i + u.size()]) ? u.size() : v.size();
    cuts.push_back(i);
  }
  return cuts;
}

std::size_t dp_reach(const Word& w, const Word& u, const Word& v) {
  std::vector<char> reach(w.size() + 1, 0);
  reach[0] = 1;
  std::size_t best = 0;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    if (!reach[i]) continue;
    best = i;
    if (match_at(w, i, u)) reach[i + u.size()] = 1;
    if (match_at(w, i, v)) reach[i + v.size()] = 1;
  }
  return best;
}

std::vector<CandidatePair> search_pairs(const PrefixView& prefix, std::size_t max_total) {
  const Word& x = prefix.symbols;
  std::vector<CandidatePair> out;
  std::map<std::size_t, std::set<Word>> factors;
  for (std::size_t total = 2; total <= max_total; ++total) {
    for (std::size_t a = 1; a < total && a <= x.size(); ++a) {
      const std::size_t b = total - a;
      if (b > x.size()) continue;
      if (!factors.count(b)) {
        auto& set = factors[b];
        for (std::size_t i = 0; i + b <= x.size(); ++i) set.insert(x.substr(i, b));
      }
      const Word u = x.substr(0, a);
      for (const Word& v : factors[b]) {
        if (v == u) continue;
        const std::size_t r = dp_reach(x, u, v);
        const Word rest = x.substr(r);
        if (rest.size() >= std::max(u.size(), v.size())) continue;
        if (u.starts_with(rest) || v.starts_with(rest)) out.push_back({u, v});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CandidatePair& p, const CandidatePair& q) {
    const auto tp = p.u.size() + p.v.size();
    const auto tq = q.u.size() + q.v.size();
    if (tp != tq) return tp < tq;
    if (p.u != q.u) return p.u < q.u;
    return p.v < q.v;
  });
  return out;
}

std::size_t brute_appearance(const PrefixView& prefix, std::size_t n) {
  const Word& x = prefix.symbols;
  if (n == 0) return 0;
  if (n > x.size()) throw Error("prefix-too-short", "brute_appearance: n exceeds the prefix");
  // Two polynomial hashes modulo 2^61 - 1.
  constexpr std::uint64_t mod = (std::uint64_t{1} << 61) - 1;
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(p & mod) + static_cast<std::uint64_t>(p >> 61);
    return r >= mod ? r - mod : r;
  };
  auto add = [](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t r = a + b;
    return r >= mod ? r - mod : r;
  };
  const std::uint64_t bases[2] = {1'000'003, 998'244'353};
  std::uint64_t top[2] = {1, 1};
  for (int h = 0; h < 2; ++h) {
    for (std::size_t i = 0; i + 1 < n; ++i) top[h] = mul(top[h], bases[h]);
  }
  std::uint64_t hv[2] = {0, 0};
  for (int h = 0; h < 2; ++h) {
    for (std::size_t i = 0; i < n; ++i) hv[h] = add(mul(hv[h], bases[h]), x[i] + 1);
  }
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
      return std::hash<std::uint64_t>{}(p.first * 31 + p.second);
    }
  };
  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> seen;
  std::size_t best = n;
  for (std::size_t i = 0;; ++i) {
    if (seen.emplace(hv[0], hv[1]).second) best = i + n;
    if (i + n >= x.size()) break;
    for (int h = 0; h < 2; ++h) {
      const std::uint64_t drop = mul(top[h], x[i] + 1);
      hv[h] = add(mul(add(hv[h], mod - drop), bases[h]), x[i + n] + 1);
    }
  }
  return best;
}

std::optional<Rational> brute_max_exponent(const PrefixView& prefix, const Word& z) {
  if (z.empty()) throw Error("empty-word", "brute_max_exponent: empty word");
  const Word& x = prefix.symbols;
  const std::size_t d = z.size();
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j + d <= x.size(); ++j) {
    if (!match_at(x, j, z)) continue;
    std::size_t len = d;
    while (j + len < x.size() && x[j + len] == x[j + len - d]) ++len;
    best = std::max(best.value_or(0), len);
  }
  if (!best) return std::nullopt;
  return Rational(static_cast<std::int64_t>(*best), static_cast<std::int64_t>(d));
}

std::vector<CandidatePair> minimal_pairs(std::size_t max_total, unsigned alphabet) {
  std::vector<CandidatePair> out;
  for (std::size_t total = 2; total <= max_total; ++total) {
    for (std::size_t a = 1; a < total; ++a) {
      const auto us = all_words(a, alphabet);
      const auto vs = all_words(total - a, alphabet);
      for (const auto& u : us) {
        for (const auto& v : vs) {
          const Reduction r = free_reduce(u, v);
          const auto* p = std::get_if<reduction::Pair>(&r);
          if (p && p->a.size() + p->b.size() == total) out.push_back({u, v});
        }
      }
    }
  }
  return out;
}

bool is_factor_of_omega(const Word& w, const Word& u, const Word& v) {
  if (u.empty() || v.empty()) throw Error("empty-word", "is_factor_of_omega: empty word");
  const BlockNfa nfa(u, v);
  return any(nfa.run(nfa.all(), w));
}

std::optional<CombCounterexample> search_comb_counterexample(std::size_t max_uv,
                                                             std::size_t max_w,
                                                             unsigned alphabet) {
  for (const auto& [u, v] : minimal_pairs(max_uv, alphabet)) {
    const BlockNfa nfa(u, v);
    std::vector<Word> tails;
    for (auto& z : all_words(std::max(u.size(), v.size()), alphabet)) {
      if (!z.starts_with(u) && !z.starts_with(v)) tails.push_back(std::move(z));
    }
    std::optional<CombCounterexample> found;
    // Depth-first over patterns; the state set after sigma(w) is shared by
    // every extension, and an empty set prunes the subtree.
    std::function<void(std::string&, const std::vector<char>&, std::size_t)> dfs =
        [&](std::string& w, const std::vector<char>& state, std::size_t xy) {
          if (found || !any(state)) return;
          if (xy >= 5) {
            for (const auto& z : tails) {
              if (any(nfa.run(state, z))) {
                found = CombCounterexample{u, v, w, z};
                return;
              }
            }
          }
          if (w.size() == max_w) return;
          for (char c : {'x', 'y'}) {
            const std::size_t add = (c == 'y' && !w.empty() && w.back() == 'x') ? 1 : 0;
            w.push_back(c);
            dfs(w, nfa.run(state, c == 'x' ? u : v), xy + add);
            w.pop_back();
          }
        };
    std::string w;
    dfs(w, nfa.all(), 0);
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<DepsilonCounterexample> search_depsilon_counterexample(std::size_t max_uv,
                                                                     std::size_t max_w,
                                                                     unsigned alphabet) {
  std::vector<std::string> ws;
  for (auto& p : patterns_up_to(max_w)) {
    if (p.front() == 'x' && p.find('y') != std::string::npos) ws.push_back(std::move(p));
  }
  for (const auto& [u, v] : minimal_pairs(max_uv, alphabet)) {
    std::vector<Word> images;
    for (const auto& p : ws) images.push_back(substitute(p, u, v));
    const std::size_t dmax = std::max(u.size(), v.size());
    for (std::size_t dl = 1; dl < dmax; ++dl) {
      for (const auto& d : all_words(dl, alphabet)) {
        if (d.ends_with(u)) continue;
        for (std::size_t a = 0; a < ws.size(); ++a) {
          const Word lhs = d + images[a];
          for (std::size_t b = 0; b < ws.size(); ++b) {
            if (lhs.starts_with(images[b])) {
              return DepsilonCounterexample{u, v, d, ws[a], ws[b]};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

using Env = std::map<std::string, Natural>;

class PrefixEvaluator {
 public:
  PrefixEvaluator(const Word& prefix, Natural cap) : x_(prefix), cap_(cap) {}

  bool eval(const Formula& f, Env& env) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True: return true;
      case K::False: return false;
      case K::Eq: return value(f.lhs(), env) == value(f.rhs(), env);
      case K::Le: return value(f.lhs(), env) <= value(f.rhs(), env);
      case K::Lt: return value(f.lhs(), env) < value(f.rhs(), env);
      case K::SeqAt: return at(value(f.lhs(), env)) == f.symbol();
      case K::SeqEq: return at(value(f.lhs(), env)) == at(value(f.rhs(), env));
      case K::Embedded: {
        const Dfa& a = f.embedded();
        std::vector<Natural> vals;
        for (const auto& v : a.vars()) vals.push_back(lookup(v, env));
        return a.accepts(vals);
      }
      case K::Not: return !eval(f.kids()[0], env);
      case K::And:
        return std::all_of(f.kids().begin(), f.kids().end(),
                           [&](const Formula& k) { return eval(k, env); });
      case K::Or:
        return std::any_of(f.kids().begin(), f.kids().end(),
                           [&](const Formula& k) { return eval(k, env); });
      case K::Implies: return !eval(f.kids()[0], env) || eval(f.kids()[1], env);
      case K::Exists:
      case K::Forall: return quantifier(f, env);
    }
    return false;
  }

 private:
  Natural lookup(const std::string& v, const Env& env) const {
    auto it = env.find(v);
    if (it == env.end()) throw Error("unbound", "free variable " + v + " has no value");
    return it->second;
  }
  Natural value(const Term& t, const Env& env) const {
    Natural out = t.constant();
    for (const auto& [v, c] : t.coeffs()) out += c * lookup(v, env);
    return out;
  }
  Symbol at(Natural i) const {
    if (i >= x_.size()) {
      throw Error("prefix-too-short", "index " + std::to_string(i) + " is past the prefix");
    }
    return x_[i];
  }

  // Conjuncts that must hold for the body of an existential to be true,
  // looking through nested existentials.
  static void conjuncts(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::And) {
      for (const auto& k : f.kids()) conjuncts(k, out);
    } else if (f.kind() == Formula::Kind::Exists) {
      conjuncts(f.kids()[0], out);
    } else {
      out.push_back(f);
    }
  }

  // Hypotheses under which the body of a universal can be false.
  static void hypotheses(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::Forall) {
      hypotheses(f.kids()[0], out);
    } else if (f.kind() == Formula::Kind::Implies) {
      conjuncts(f.kids()[0], out);
    }
  }

  // Exclusive upper bound on v implied by guards `c*v + ... (<, <=, =) e`.
  Natural range(const std::string& v, const std::vector<Formula>& guards, const Env& env) const {
    using K = Formula::Kind;
    Natural hi = cap_;
    for (const auto& g : guards) {
      if (g.kind() != K::Lt && g.kind() != K::Le && g.kind() != K::Eq) continue;
      if (!g.lhs().mentions(v) || g.rhs().mentions(v)) continue;
      const auto rhs = g.rhs().eval(env);
      if (!rhs) continue;
      const Natural c = g.lhs().coeff(v);
      Natural bound = *rhs / c + 1;
      if (g.kind() == K::Lt) bound = *rhs == 0 ? 0 : (*rhs - 1) / c + 1;
      hi = std::min(hi, bound);
    }
    return hi;
  }

  bool quantifier(const Formula& f, Env& env) const {
    const bool ex = f.kind() == Formula::Kind::Exists;
    const std::string& v = f.bound();
    const Formula& body = f.kids()[0];
    std::vector<Formula> guards;
    if (ex) {
      conjuncts(body, guards);
    } else {
      hypotheses(body, guards);
    }
    const Natural hi = range(v, guards, env);
    const auto saved = env.find(v) == env.end() ? std::nullopt : std::optional(env[v]);
    bool result = !ex;
    for (Natural n = 0; n < hi; ++n) {
      env[v] = n;
      if (eval(body, env) == ex) {
        result = ex;
        break;
      }
    }
    if (saved) {
      env[v] = *saved;
    } else {
      env.erase(v);
    }
    return result;
  }

  const Word& x_;
  Natural cap_;
};

}  // namespace

bool evaluate_on_prefix(const Formula& f, const Word& prefix, Natural cap, const Env& env) {
  Env e = env;
  return PrefixEvaluator(prefix, cap).eval(f, e);
}

}  // namespace autorank::oracle
