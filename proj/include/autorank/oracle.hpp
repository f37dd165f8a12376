#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autorank/formula.hpp"

namespace autorank::oracle {

/// x[0..N) materialized from the DFAO.
struct PrefixView {
  Word symbols;
  static PrefixView of(const Dfao& m, std::size_t length);
  std::size_t size() const noexcept { return symbols.size(); }
};

/// Cut positions 0 = c_0 < ... < c_m = |w| of a factorization of w over
/// {u, v}, preferring u at each cut; nullopt when w is not in {u,v}^*.
std::optional<std::vector<std::size_t>> dp_factorize(const Word& w, const Word& u, const Word& v);

/// Largest R such that w[0..R) is in {u,v}^*.
std::size_t dp_reach(const Word& w, const Word& u, const Word& v);

struct CandidatePair {
  Word u;
  Word v;
  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

/// Pairs (u a prefix, v a factor, u != v, |u|+|v| <= max_total) whose
/// factorization covers the prefix up to a residual that is a proper prefix
/// of u or v. Sorted by total length, then u, then v.
std::vector<CandidatePair> search_pairs(const PrefixView& prefix, std::size_t max_total);

/// Least m such that every length-n factor of the prefix occurs in x[0..m).
std::size_t brute_appearance(const PrefixView& prefix, std::size_t n);

/// Largest e such that a factor of the prefix starts with z and has period
/// |z| and length e|z|; nullopt when z does not occur.
std::optional<Rational> brute_max_exponent(const PrefixView& prefix, const Word& z);

/// Every ordered pair (u, v) of nonempty words over {0..alphabet-1} with
/// |u|+|v| <= max_total that no shorter pair generates.
std::vector<CandidatePair> minimal_pairs(std::size_t max_total, unsigned alphabet);

/// True iff w is a factor of some word in {u,v}^omega.
bool is_factor_of_omega(const Word& w, const Word& u, const Word& v);

struct CombCounterexample {
  Word u, v;
  std::string pattern;  // over {x, y}
  Word z;
};
std::optional<CombCounterexample> search_comb_counterexample(std::size_t max_uv,
                                                             std::size_t max_w,
                                                             unsigned alphabet = 2);

struct DepsilonCounterexample {
  Word u, v, d;
  std::string w, w_prime;
};
std::optional<DepsilonCounterexample> search_depsilon_counterexample(std::size_t max_uv = 5,
                                                                     std::size_t max_w = 6,
                                                                     unsigned alphabet = 2);

/// Direct evaluation of f over a materialized prefix. Quantified variables
/// range over [0, cap), narrowed by guards such as `t < n`. Throws
/// Error("prefix-too-short") if an index reaches past the prefix.
bool evaluate_on_prefix(const Formula& f, const Word& prefix, Natural cap,
                        const std::map<std::string, Natural>& env = {});

}  // namespace autorank::oracle
