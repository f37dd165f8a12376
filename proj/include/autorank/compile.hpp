#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autorank/dfa.hpp"
#include "autorank/dfao.hpp"
#include "autorank/formula.hpp"

namespace autorank {

using Assignment = std::map<std::string, Natural>;

/// Automaton for the satisfying assignments of `f` over the sequence of `m`.
/// Tracks follow the sorted free variables; a sentence yields 0 tracks.
Dfa compile(const Formula& f, const Dfao& m, const Limits& limits = {});
/// Same, with tracks in the given order (a superset of the free variables).
Dfa compile(const Formula& f, const Dfao& m, const std::vector<std::string>& vars,
            const Limits& limits = {});

bool decide(const Formula& sentence, const Dfao& m, const Limits& limits = {});
/// Length-lexicographically least satisfying assignment.
std::optional<Assignment> witness(const Formula& f, const Dfao& m,
                                  const Limits& limits = {});

}  // namespace autorank
