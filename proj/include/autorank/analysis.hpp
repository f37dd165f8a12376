#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "autorank/compile.hpp"

namespace autorank {

using BigInt = boost::multiprecision::cpp_int;

struct AnalysisConstants {
  BigInt C;
  BigInt kappa;
  BigInt B;
  BigInt p;
  std::size_t appearance_states = 0;  // r0
  std::size_t power_states = 0;       // r
};

struct UnboundedFactor {
  Natural first_position = 0;
  Natural length = 0;
  Word word;
  friend bool operator==(const UnboundedFactor&, const UnboundedFactor&) = default;
};

struct NotAFactor {
  friend bool operator==(NotAFactor, NotAFactor) = default;
};
struct Unbounded {
  friend bool operator==(Unbounded, Unbounded) = default;
};
using MaxExponent = std::variant<NotAFactor, Rational, Unbounded>;
std::string to_string(const MaxExponent& e);

struct UltimatePeriod {
  Natural preperiod = 0;
  Natural period = 0;
  friend bool operator==(const UltimatePeriod&, const UltimatePeriod&) = default;
};

/// {(n, m) : m = A(n)} where A(n) is the least m such that every length-n
/// factor occurs inside x[0..m).
Dfa appearance_relation(const Dfao& m, const Limits& limits = {});
/// C = k^(r0+1) with r0 the state count of appearance_relation.
BigInt appearance_constant(const Dfao& m, const Limits& limits = {},
                           std::size_t* r0 = nullptr);

struct PowerBound {
  BigInt B;
  std::size_t r = 0;
  BigInt C;
};
/// B = k^r * C with r the state count of the compiled phi(i, n, p).
PowerBound power_bound(const Dfao& m, const Limits& limits = {});
AnalysisConstants analysis_constants(const Dfao& m, const Limits& limits = {});

std::vector<UnboundedFactor> unbounded_primitive_factors(const Dfao& m,
                                                         const Limits& limits = {});
/// Least i with x[i..i+|w|) = w.
std::optional<Natural> first_occurrence(const Dfao& m, const Word& w,
                                        const Limits& limits = {});
MaxExponent max_exponent(const Dfao& m, const Word& z, const Limits& limits = {});

std::optional<Natural> is_purely_periodic(const Dfao& m, const Limits& limits = {});
std::optional<UltimatePeriod> is_ultimately_periodic(const Dfao& m,
                                                     const Limits& limits = {});

std::vector<Symbol> occurring_letters(const Dfao& m, const Limits& limits = {});
/// DFAO for n -> x[n + s].
Dfao shift_sequence(const Dfao& m, Natural s, const Limits& limits = {});
/// Largest i with u^i a prefix of x, and x shifted by i|u|.
/// Throws Error("periodic-under-u") when x = u^omega.
std::pair<Natural, Dfao> strip_max_power_prefix(const Dfao& m, const Word& u,
                                                const Limits& limits = {});
/// Distinct factors of length n, ordered by first occurrence.
std::vector<Word> distinct_factors(const Dfao& m, Natural n, std::size_t limit,
                                   const Limits& limits = {});
/// Length of the longest prefix of x that is a factor of w^omega.
/// Throws Error("periodic-under-u") if every prefix is.
Natural longest_prefix_in_power_factors(const Dfao& m, const Word& w,
                                        const Limits& limits = {});

}  // namespace autorank
