#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace autorank {

using Symbol = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

/// Finite word over a small integer alphabet.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  /// "0120" -> {0,1,2,0}. Only decimal digits are accepted.
  static Word digits(std::string_view text);
  /// Each byte becomes one symbol ("entente" -> {'e','n',...}).
  static Word chars(std::string_view text);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  Symbol back() const { return symbols_.back(); }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::span<const Symbol> span() const noexcept { return symbols_; }

  Word substr(std::size_t pos, std::size_t len = std::string::npos) const;
  Word pow(std::size_t e) const;
  bool starts_with(const Word& prefix) const;
  bool ends_with(const Word& suffix) const;
  void push_back(Symbol s) { symbols_.push_back(s); }

  Word& operator+=(const Word& other);
  friend Word operator+(Word lhs, const Word& rhs) { return lhs += rhs; }
  friend auto operator<=>(const Word&, const Word&) = default;

  /// Digits concatenated when every symbol is < 10, otherwise comma-separated.
  std::string to_string() const;
  /// Inverse of to_string().
  static Word parse(std::string_view text);

 private:
  std::vector<Symbol> symbols_;
};

/// Word over {0,1} naming a sequence of u/v blocks.
class FactorizationPattern {
 public:
  explicit FactorizationPattern(std::vector<std::uint8_t> bits);
  static FactorizationPattern parse(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::string to_string() const;

 private:
  std::vector<std::uint8_t> bits_;
};

struct PrimitiveRoot {
  Word root;
  std::size_t power = 1;
};

/// u = (rs)^alpha r and d = rs; c = sr is the conjugate on the right.
struct ConjugationSolution {
  Word r;
  Word s;
  std::size_t alpha = 0;

  Word c() const { return s + r; }
};

namespace reduction {
struct Single {
  Word root;
};
struct Pair {
  Word a;
  Word b;
};
}  // namespace reduction
using Reduction = std::variant<reduction::Single, reduction::Pair>;

enum class Block : std::uint8_t { U, V };

struct StopRule {
  enum class Kind { Blocks, VCount, Length };
  Kind kind = Kind::Blocks;
  std::size_t limit = 0;

  static StopRule blocks(std::size_t n) { return {Kind::Blocks, n}; }
  static StopRule v_count(std::size_t n) { return {Kind::VCount, n}; }
  static StopRule length(std::size_t n) { return {Kind::Length, n}; }
};

struct ParseOutcome {
  enum class Status { Hit, Fail, Exhausted };
  std::vector<Block> blocks;
  std::size_t consumed = 0;
  Status status = Status::Exhausted;
  /// Cut at which neither word matched; meaningful for Status::Fail only.
  std::size_t fail_position = 0;
};

/// Random-access view of a (possibly infinite) symbol stream; nullopt past the end.
using SymbolSource = std::function<std::optional<Symbol>(std::size_t)>;

SymbolSource source_of(const Word& w);

std::size_t period(const Word& w);
Rational exponent(const Word& w);
PrimitiveRoot primitive_root(const Word& w);
bool is_primitive(const Word& w);
bool commute(const Word& u, const Word& v);

std::optional<ConjugationSolution> solve_conjugation(const Word& d,
                                                     const Word& u);

/// Generating pair of least total length for {u, v}, or their common
/// primitive root when they commute.
Reduction free_reduce(const Word& u, const Word& v);

/// True iff w in {a,b}^* (dynamic program over cut positions).
bool in_free_hull(const Word& w, const Word& a, const Word& b);

bool is_prefix_code_pair(const Word& u, const Word& v);

ParseOutcome greedy_parse(const SymbolSource& stream, const Word& u,
                          const Word& v, StopRule stop);

Word build_pattern(const FactorizationPattern& pattern, const Word& u,
                   const Word& v);

bool is_p_syndetic(std::span<const Block> blocks, std::size_t p);

}  // namespace autorank
