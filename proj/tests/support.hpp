#pragma once

#include <bit>
#include <cstdint>
#include <iostream>
#include <random>

#include "autorank/word.hpp"

namespace autorank::testing {

// Direct generators for the shipped fixtures, independent of the DFAO files.
inline Symbol thue_morse(std::uint64_t n) { return std::popcount(n) & 1; }
inline Symbol mod3(std::uint64_t n) { return static_cast<Symbol>(n % 3); }
inline Symbol pow2_char(std::uint64_t n) { return n != 0 && std::has_single_bit(n) ? 1 : 0; }
inline Symbol ternary_tm(std::uint64_t n) {
  if (thue_morse(n) == 0) return 0;
  return n % 2 == 0 ? 2 : 1;
}

inline Word generate(Symbol (*gen)(std::uint64_t), std::size_t length) {
  Word out;
  for (std::size_t n = 0; n < length; ++n) out.push_back(gen(n));
  return out;
}

inline Word random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                        unsigned alphabet) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<Symbol> sym(0, alphabet - 1);
  Word w;
  for (std::size_t i = len(rng); i > 0; --i) w.push_back(sym(rng));
  return w;
}

struct Seeded {
  std::uint64_t seed;
  std::mt19937_64 rng;
  explicit Seeded(std::uint64_t s) : seed(s), rng(s) {}
};

}  // namespace autorank::testing
