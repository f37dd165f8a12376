#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "autorank/analysis.hpp"

namespace autorank {

struct Budget {
  std::size_t max_automaton_states = 2'000'000;
  std::uint64_t max_patterns = std::uint64_t{1} << 16;
  std::size_t max_enumeration = 4096;
  std::chrono::milliseconds wall_time{std::chrono::minutes(10)};
  /// Levels of 2^L-length blocks examined by the fixed-pair decision.
  std::size_t max_chain = 4096;
  /// Largest |u| + |v| tried by the explicit candidate searches.
  std::size_t candidate_pair_len = 12;
};

struct ExplicitPair {
  Word u;
  Word v;
  std::string evidence;
};

struct ExistenceByFormula {
  FactorizationPattern pattern;
  /// (i, j, r, s) of the least satisfying assignment, when extracted.
  std::optional<std::array<Natural, 4>> witness;
};

using Certificate = std::variant<ExplicitPair, ExistenceByFormula>;

struct Rank1 {
  Natural period = 0;
  Word root;
};
struct RankTwo {
  Certificate certificate;
};
struct RankAtLeastThree {};
struct Inconclusive {
  std::string stage;
  std::string required;
  std::string detail;
};

struct RankConstants {
  std::optional<BigInt> C, kappa, p, B, D, L;
};

struct BudgetReport {
  double elapsed_seconds = 0;
  std::string last_stage;
  std::uint64_t patterns_checked = 0;
  std::size_t fixed_pair_checks = 0;
};

struct SoundnessFlags {
  bool unsound = false;
  std::vector<std::string> notes;
};

struct RankVerdict {
  std::variant<Rank1, RankTwo, RankAtLeastThree, Inconclusive> result;
  RankConstants constants;
  BudgetReport budget_report;
  SoundnessFlags soundness;

  /// "Rank1", "RankTwo", "RankAtLeastThree" or "Inconclusive".
  std::string name() const;
};

struct DecideOptions {
  Budget budget;
  /// Test hook: skip the two-letter, ultimately-periodic and small-pair paths.
  bool disable_fast_paths = false;
  /// Test hooks replacing the computed D or L; any verdict they touch is
  /// flagged unsound.
  std::optional<Natural> assume_D;
  std::optional<Natural> assume_L;
};

BigInt lemma_L_constant(const BigInt& kappa, const BigInt& p);
BigInt lemma_D_constant(const BigInt& kappa, const BigInt& p);

struct FixedPairReport {
  bool member = false;
  /// Level at which the tuple of block transformations first repeated, or the
  /// level at which the prefix of length k^level left Pref({u,v}*).
  std::size_t levels = 0;
  std::size_t prefix_states = 0;
};

/// Exact test of x in {u,v}^omega. Throws BudgetExceeded past max_levels.
FixedPairReport decide_fixed_pair_report(const Dfao& m, const Word& u, const Word& v,
                                         std::size_t max_levels = 4096);
bool decide_fixed_pair(const Dfao& m, const Word& u, const Word& v,
                       std::size_t max_levels = 4096);

/// Least-total-length pair (u a prefix of x, v a factor) with x in {u,v}^omega
/// and |u| + |v| <= max_total.
std::optional<ExplicitPair> find_small_pair(const Dfao& m, std::size_t max_total,
                                            const DecideOptions& opts = {},
                                            const Limits& limits = {});

struct UnboundedSearch {
  std::optional<ExplicitPair> pair;
  /// Set when the search could not rule out a partner for w.
  std::optional<Inconclusive> gap;
  bool used_assumed_L = false;
};

/// Searches for v with x in {w, v}^omega, w a primitive factor of unbounded
/// exponent. Every returned pair has been re-checked exactly.
UnboundedSearch decide_with_unbounded(const Dfao& m, const UnboundedFactor& w,
                                      const std::vector<UnboundedFactor>& unbounded,
                                      const AnalysisConstants& consts,
                                      const DecideOptions& opts = {},
                                      const Limits& limits = {});

RankVerdict rank2_decide(const Dfao& m, const DecideOptions& opts = {});

/// Elapsed time is left out unless asked for, so equal inputs print equal JSON.
std::string verdict_to_json(const RankVerdict& v, int indent = 2, bool include_timing = false);
std::string verdict_to_text(const RankVerdict& v);

}  // namespace autorank
