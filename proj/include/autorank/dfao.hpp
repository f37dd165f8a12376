#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "autorank/word.hpp"

namespace autorank {

using Natural = std::uint64_t;

/// Deterministic finite automaton with output reading base-k digits most
/// significant first. The output must not depend on leading zeros.
class Dfao {
 public:
  Dfao(unsigned base, std::vector<Symbol> alphabet, std::uint32_t initial,
       std::vector<std::uint32_t> delta, std::vector<Symbol> output);

  unsigned base() const noexcept { return base_; }
  const std::vector<Symbol>& alphabet() const noexcept { return alphabet_; }
  std::uint32_t num_states() const noexcept {
    return static_cast<std::uint32_t>(output_.size());
  }
  std::uint32_t initial() const noexcept { return initial_; }
  std::uint32_t next(std::uint32_t state, unsigned digit) const {
    return delta_[static_cast<std::size_t>(state) * base_ + digit];
  }
  Symbol output(std::uint32_t state) const { return output_[state]; }
  const std::vector<std::uint32_t>& delta() const noexcept { return delta_; }
  const std::vector<Symbol>& outputs() const noexcept { return output_; }

  /// x[n]; n = 0 reads the empty representation.
  Symbol operator()(Natural n) const;
  /// x[0..length).
  Word prefix(std::size_t length) const;
  /// State reached from the initial state on `digits` (MSD first).
  std::uint32_t run(std::span<const unsigned> digits) const;

  /// Checks that reading a leading zero never changes any output.
  bool leading_zero_invariant() const;

  friend bool operator==(const Dfao&, const Dfao&) = default;

 private:
  unsigned base_;
  std::vector<Symbol> alphabet_;
  std::uint32_t initial_;
  std::vector<std::uint32_t> delta_;
  std::vector<Symbol> output_;
};

Symbol eval_sequence(const Dfao& m, Natural n);

/// Line-oriented text format:
///   k <base> / alphabet <sym>... / states <count> / initial <id> /
///   output <state> <sym> (one per state) / trans <state> <digit> <state>.
/// '#' starts a comment. Errors carry "line L, column C" diagnostics.
Dfao load_dfao(std::string_view text);
Dfao load_dfao_file(const std::string& path);
/// Canonical text; load_dfao(store_dfao(m)) == m.
std::string store_dfao(const Dfao& m);

/// Minimal DFAO generating the same sequence (Moore-equivalent states merged,
/// unreachable states dropped, states numbered in BFS order).
Dfao minimize_dfao(const Dfao& m);

}  // namespace autorank
