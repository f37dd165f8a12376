#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autorank/dfao.hpp"
#include "autorank/error.hpp"

namespace autorank {

/// Thrown when a construction outgrows its state cap or the wall clock runs
/// out. `stage` names the pipeline stage; `cap` is the limit that was hit.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string stage, std::string cap)
      : Error("budget", "budget exceeded in " + stage + " (cap " + cap + ")"),
        stage_(std::move(stage)),
        cap_(std::move(cap)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string stage_;
  std::string cap_;
};

/// Resource caps threaded through every automaton construction.
struct Limits {
  std::size_t max_states = 4'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::string stage = "compile";

  void check_states(std::size_t n) const;
  void check_time() const;
};

using Tuple = std::vector<Natural>;

/// Multi-track DFA over base-k digit columns, most significant column first.
/// Track t carries variable vars()[t]; a column is encoded as the letter
/// sum_t digit_t * k^t. Every automaton produced by the free functions below
/// is minimal, numbered canonically, and closed under leading zero columns.
class Dfa {
 public:
  Dfa(unsigned base, std::vector<std::string> vars, std::uint32_t initial,
      std::vector<std::uint32_t> delta, std::vector<char> accepting);

  unsigned base() const noexcept { return base_; }
  std::size_t tracks() const noexcept { return vars_.size(); }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::uint32_t letters() const noexcept { return letters_; }
  std::uint32_t num_states() const noexcept {
    return static_cast<std::uint32_t>(accepting_.size());
  }
  std::uint32_t initial() const noexcept { return initial_; }
  std::uint32_t next(std::uint32_t q, std::uint32_t letter) const {
    return delta_[static_cast<std::size_t>(q) * letters_ + letter];
  }
  bool accepting(std::uint32_t q) const { return accepting_[q] != 0; }
  const std::vector<std::uint32_t>& delta() const noexcept { return delta_; }
  const std::vector<char>& accepting_mask() const noexcept { return accepting_; }

  /// Track index of a variable, or -1.
  int track_of(const std::string& var) const;

  /// Membership of a tuple given in vars() order.
  bool accepts(std::span<const Natural> values) const;
  bool accepts_word(std::span<const std::uint32_t> word) const;

  /// Encodes a tuple as its shortest padded column word (plus `extra_zeros`
  /// leading zero columns).
  std::vector<std::uint32_t> encode(std::span<const Natural> values,
                                    std::size_t extra_zeros = 0) const;
  Tuple decode(std::span<const std::uint32_t> word) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  unsigned base_;
  std::vector<std::string> vars_;
  std::uint32_t letters_;
  std::uint32_t initial_;
  std::vector<std::uint32_t> delta_;
  std::vector<char> accepting_;
};

/// Nondeterministic automaton over the same column alphabet; used as the
/// input of determinize().
struct Nfa {
  unsigned base = 2;
  std::vector<std::string> vars;
  std::vector<std::uint32_t> initial;
  /// successors[q * letters + a] lists targets.
  std::vector<std::vector<std::uint32_t>> successors;
  std::vector<char> accepting;
};

std::uint32_t column_count(unsigned base, std::size_t tracks);

/// Minimizes and renumbers states in BFS order (letters ascending).
Dfa minimize(const Dfa& a);
Dfa determinize(const Nfa& n, const Limits& limits = {});
/// Widens the initial states of `n` to everything reachable by all-zero
/// columns, so that the accepted tuple set is closed under leading zeros.
Nfa zero_close(Nfa n);

Dfa complement(const Dfa& a);
Dfa intersect(const Dfa& a, const Dfa& b, const Limits& limits = {});
Dfa unite(const Dfa& a, const Dfa& b, const Limits& limits = {});
/// Existentially quantifies `var`, then re-determinizes, re-closes under
/// leading zeros and re-minimizes.
Dfa project(const Dfa& a, const std::string& var, const Limits& limits = {});

/// Adds free tracks so the automaton ranges over `vars` (a superset of its
/// own variables), in that order.
Dfa extend_tracks(const Dfa& a, const std::vector<std::string>& vars);
/// Same language with tracks permuted into `vars` order.
Dfa reorder(const Dfa& a, const std::vector<std::string>& vars);
Dfa rename(const Dfa& a, const std::string& from, const std::string& to);

/// Language equality over the same variable set.
bool equivalent(const Dfa& a, const Dfa& b);

bool is_empty(const Dfa& a);
/// Tuple whose padded column word is length-lexicographically least.
std::optional<Tuple> shortest_accepted(const Dfa& a);
/// True iff the automaton accepts finitely many tuples.
bool is_finite(const Dfa& a);
/// All accepted tuples, length-lex ordered. Throws Error("possibly-infinite")
/// when the set is infinite and Error("limit") when it is larger than limit.
std::vector<Tuple> enumerate_accepted(const Dfa& a, std::size_t limit);
/// The first `count` accepted tuples in length-lex order (set may be infinite).
std::vector<Tuple> first_accepted(const Dfa& a, std::size_t count);

std::size_t num_states(const Dfa& a);

Dfa constant_dfa(unsigned base, bool value);

/// sum coeff*var + constant (== or <=) 0 over the naturals.
struct LinearConstraint {
  enum class Op { Eq, Le };
  std::vector<std::pair<std::string, std::int64_t>> terms;
  std::int64_t constant = 0;
  Op op = Op::Eq;
};
Dfa linear_rel(unsigned base, const LinearConstraint& c);

Dfa eq_rel(unsigned base, const std::string& x = "x", const std::string& y = "y");
/// x < y
Dfa less_rel(unsigned base, const std::string& x = "x", const std::string& y = "y");
/// x + y = z
Dfa add_rel(unsigned base, const std::string& x = "x", const std::string& y = "y",
            const std::string& z = "z");
/// y = c * x
Dfa const_mul_rel(unsigned base, Natural c, const std::string& x = "x",
                  const std::string& y = "y");
/// x = c
Dfa const_rel(unsigned base, Natural c, const std::string& x = "x");

/// { n : x[n] is one of `symbols` }.
Dfa sequence_dfa(const Dfao& m, const std::string& var,
                 std::span<const Symbol> symbols);
/// { (a, b) : x[a] = x[b] }.
Dfa sequence_eq_dfa(const Dfao& m, const std::string& a, const std::string& b);

}  // namespace autorank
