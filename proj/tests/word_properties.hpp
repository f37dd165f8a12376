#pragma once

#include <set>
#include <string>

#include "autorank/oracle.hpp"
#include "support.hpp"

namespace autorank::testing {

struct TrialResult {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline bool has_period(const Word& w, std::size_t p) {
  for (std::size_t i = 0; i + p < w.size(); ++i) {
    if (w[i] != w[i + p]) return false;
  }
  return true;
}

inline TrialResult period_trials(std::uint64_t seed, std::size_t n) {
  Seeded s(seed);
  TrialResult r;
  for (; r.trials < n; ++r.trials) {
    const Word w = random_word(s.rng, 1, 24, 1 + r.trials % 3 + 1);
    const std::size_t p = period(w);
    bool ok = p >= 1 && p <= w.size() && has_period(w, p);
    for (std::size_t q = 1; q < p && ok; ++q) ok = !has_period(w, q);
    if (!ok) r.fail(w.to_string());
  }
  return r;
}

inline TrialResult root_trials(std::uint64_t seed, std::size_t n) {
  Seeded s(seed);
  TrialResult r;
  for (; r.trials < n; ++r.trials) {
    Word w = random_word(s.rng, 1, 8, 2);
    w = w.pow(1 + s.rng() % 4);
    const auto pr = primitive_root(w);
    bool ok = pr.root.pow(pr.power) == w;
    for (std::size_t d = 1; d < pr.root.size() && ok; ++d) {
      if (pr.root.size() % d == 0 && pr.root.substr(0, d).pow(pr.root.size() / d) == pr.root) {
        ok = false;
      }
    }
    if (!ok) r.fail(w.to_string());
  }
  return r;
}

inline TrialResult conjugation_trials(std::uint64_t seed, std::size_t n) {
  Seeded s(seed);
  TrialResult r;
  for (; r.trials < n; ++r.trials) {
    Word d, u;
    if (r.trials % 2 == 0) {
      // Planted solvable instance.
      const Word a = random_word(s.rng, 0, 4, 2);
      Word b = random_word(s.rng, 0, 4, 2);
      if (a.empty() && b.empty()) b.push_back(1);
      d = a + b;
      u = d.pow(s.rng() % 4) + a;
      if (u.empty()) u = d;
    } else {
      d = random_word(s.rng, 1, 5, 2);
      u = random_word(s.rng, 1, 10, 2);
    }
    const auto sol = solve_conjugation(d, u);
    const bool solvable = (d + u).starts_with(u);
    if (sol.has_value() != solvable) {
      r.fail(d.to_string() + "/" + u.to_string());
      continue;
    }
    if (!sol) continue;
    const Word rs = sol->r + sol->s;
    if (rs != d || rs.pow(sol->alpha) + sol->r != u || d + u != u + sol->c()) {
      r.fail(d.to_string() + "/" + u.to_string());
    }
  }
  return r;
}

// Brute force: is there a pair of nonempty factors of u or v with total
// length below `bound` generating both?
inline bool smaller_pair_exists(const Word& u, const Word& v, std::size_t bound) {
  if (bound <= 2) return false;
  std::set<Word> fs;
  for (const Word* w : {&u, &v}) {
    for (std::size_t i = 0; i < w->size(); ++i) {
      for (std::size_t l = 1; i + l <= w->size(); ++l) fs.insert(w->substr(i, l));
    }
  }
  for (const Word& a : fs) {
    for (const Word& b : fs) {
      if (a.size() + b.size() >= bound) continue;
      if (oracle::dp_factorize(u, a, b) && oracle::dp_factorize(v, a, b)) return true;
    }
  }
  return false;
}

inline bool check_reduction(const Word& u, const Word& v) {
  const Reduction red = free_reduce(u, v);
  if (const auto* single = std::get_if<reduction::Single>(&red)) {
    return commute(u, v) && is_primitive(single->root) &&
           oracle::dp_factorize(u, single->root, single->root) &&
           oracle::dp_factorize(v, single->root, single->root);
  }
  const auto& p = std::get<reduction::Pair>(red);
  if (commute(u, v) || !is_prefix_code_pair(p.a, p.b)) return false;
  if (!oracle::dp_factorize(u, p.a, p.b) || !oracle::dp_factorize(v, p.a, p.b)) return false;
  return !smaller_pair_exists(u, v, p.a.size() + p.b.size());
}

inline TrialResult free_reduce_trials(std::uint64_t seed, std::size_t n) {
  Seeded s(seed);
  TrialResult r;
  for (; r.trials < n; ++r.trials) {
    Word u, v;
    if (r.trials % 2 == 0) {
      // Build u, v over a random generating pair so reductions are non-trivial.
      const Word a = random_word(s.rng, 1, 3, 3);
      const Word b = random_word(s.rng, 1, 3, 3);
      for (int t = 1 + s.rng() % 3; t > 0; --t) u += s.rng() % 2 ? a : b;
      for (int t = 1 + s.rng() % 3; t > 0; --t) v += s.rng() % 2 ? a : b;
    } else {
      u = random_word(s.rng, 1, 6, 3);
      v = random_word(s.rng, 1, 6, 3);
    }
    if (!check_reduction(u, v)) r.fail(u.to_string() + "," + v.to_string());
  }
  return r;
}

// Every binary pair with |u|+|v| <= max_total.
inline TrialResult free_reduce_exhaustive_binary(std::size_t max_total) {
  TrialResult r;
  for (std::size_t total = 2; total <= max_total; ++total) {
    for (std::size_t a = 1; a < total; ++a) {
      for (std::uint32_t bu = 0; bu < (1u << a); ++bu) {
        for (std::uint32_t bv = 0; bv < (1u << (total - a)); ++bv) {
          Word u, v;
          for (std::size_t i = 0; i < a; ++i) u.push_back((bu >> i) & 1);
          for (std::size_t i = 0; i < total - a; ++i) v.push_back((bv >> i) & 1);
          ++r.trials;
          if (!check_reduction(u, v)) r.fail(u.to_string() + "," + v.to_string());
        }
      }
    }
  }
  return r;
}

}  // namespace autorank::testing
