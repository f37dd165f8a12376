#include "autorank/dfa.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "partition.hpp"

namespace autorank {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    return boost::hash_range(v.begin(), v.end());
  }
};

std::uint32_t digit_of(std::uint32_t letter, std::size_t track, unsigned base) {
  for (std::size_t i = 0; i < track; ++i) letter /= base;
  return letter % base;
}

std::vector<std::uint32_t> powers(unsigned base, std::size_t n) {
  std::vector<std::uint32_t> out(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) out[i] = out[i - 1] * base;
  return out;
}

// For every letter over `to`, the letter over `from` reading the same digits
// (variables of `from` must all appear in `to`).
std::vector<std::uint32_t> letter_map(unsigned base,
                                      const std::vector<std::string>& from,
                                      const std::vector<std::string>& to) {
  std::vector<std::size_t> where(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it == to.end()) throw Error("tracks", "variable " + from[i] + " missing");
    where[i] = static_cast<std::size_t>(it - to.begin());
  }
  const auto pw = powers(base, std::max(from.size(), to.size()));
  const std::uint32_t n = column_count(base, to.size());
  std::vector<std::uint32_t> out(n);
  for (std::uint32_t l = 0; l < n; ++l) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      m += digit_of(l, where[i], base) * pw[i];
    }
    out[l] = m;
  }
  return out;
}

std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::set<std::string> all(a.begin(), a.end());
  all.insert(b.begin(), b.end());
  return {all.begin(), all.end()};
}

template <typename Combine>
Dfa product(const Dfa& a, const Dfa& b, const Limits& limits, Combine combine) {
  if (a.base() != b.base()) throw Error("base-mismatch", "automata use different bases");
  const auto vars = merged_vars(a.vars(), b.vars());
  const auto map_a = letter_map(a.base(), a.vars(), vars);
  const auto map_b = letter_map(b.base(), b.vars(), vars);
  const std::uint32_t letters = column_count(a.base(), vars.size());

  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  std::vector<std::uint32_t> delta;
  std::vector<char> accepting;
  auto intern = [&](std::uint32_t p, std::uint32_t q) {
    const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(states.size()));
    if (fresh) {
      states.emplace_back(p, q);
      accepting.push_back(combine(a.accepting(p), b.accepting(q)) ? 1 : 0);
      limits.check_states(states.size());
    }
    return it->second;
  };
  intern(a.initial(), b.initial());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if ((i & 1023) == 0) limits.check_time();
    const auto [p, q] = states[i];
    for (std::uint32_t l = 0; l < letters; ++l) {
      delta.push_back(intern(a.next(p, map_a[l]), b.next(q, map_b[l])));
    }
  }
  return minimize(Dfa(a.base(), vars, 0, std::move(delta), std::move(accepting)));
}

// Normalized copy: sorted, merged coefficients, zeros dropped.
std::vector<std::pair<std::string, std::int64_t>> normalize_terms(
    const std::vector<std::pair<std::string, std::int64_t>>& terms) {
  std::map<std::string, std::int64_t> acc;
  for (const auto& [v, c] : terms) acc[v] += c;
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (const auto& [v, c] : acc) {
    if (c != 0) out.emplace_back(v, c);
  }
  return out;
}

}  // namespace

void Limits::check_states(std::size_t n) const {
  if (n > max_states) throw BudgetExceeded(stage, std::to_string(max_states) + " states");
}

void Limits::check_time() const {
  if (deadline && std::chrono::steady_clock::now() > *deadline) {
    throw BudgetExceeded(stage, "wall time");
  }
}

std::uint32_t column_count(unsigned base, std::size_t tracks) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < tracks; ++i) {
    n *= base;
    if (n > (1u << 24)) throw Error("tracks", "too many tracks for one automaton");
  }
  return static_cast<std::uint32_t>(n);
}

Dfa::Dfa(unsigned base, std::vector<std::string> vars, std::uint32_t initial,
         std::vector<std::uint32_t> delta, std::vector<char> accepting)
    : base_(base),
      vars_(std::move(vars)),
      letters_(column_count(base, vars_.size())),
      initial_(initial),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  if (base_ < 2) throw Error("dfa", "base must be at least 2");
  if (accepting_.empty() || initial_ >= accepting_.size()) {
    throw Error("dfa", "bad initial state");
  }
  if (delta_.size() != accepting_.size() * letters_) {
    throw Error("dfa", "transition table is not total");
  }
  std::set<std::string> seen(vars_.begin(), vars_.end());
  if (seen.size() != vars_.size()) throw Error("dfa", "duplicate track variable");
}

int Dfa::track_of(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

std::vector<std::uint32_t> Dfa::encode(std::span<const Natural> values,
                                       std::size_t extra_zeros) const {
  if (values.size() != tracks()) throw Error("dfa", "tuple arity mismatch");
  std::size_t len = 0;
  for (Natural v : values) {
    std::size_t l = 0;
    while (v > 0) {
      v /= base_;
      ++l;
    }
    len = std::max(len, l);
  }
  const auto pw = powers(base_, tracks());
  std::vector<std::uint32_t> word(len + extra_zeros, 0);
  for (std::size_t t = 0; t < tracks(); ++t) {
    Natural v = values[t];
    for (std::size_t i = 0; i < len; ++i) {
      word[word.size() - 1 - i] += static_cast<std::uint32_t>(v % base_) * pw[t];
      v /= base_;
    }
  }
  return word;
}

Tuple Dfa::decode(std::span<const std::uint32_t> word) const {
  Tuple out(tracks(), 0);
  for (std::uint32_t letter : word) {
    for (std::size_t t = 0; t < tracks(); ++t) {
      const Natural d = digit_of(letter, t, base_);
      if (out[t] > (~Natural{0} - d) / base_) throw Error("overflow", "tuple component exceeds 64 bits");
      out[t] = out[t] * base_ + d;
    }
  }
  return out;
}

bool Dfa::accepts_word(std::span<const std::uint32_t> word) const {
  std::uint32_t q = initial_;
  for (auto l : word) q = next(q, l);
  return accepting(q);
}

bool Dfa::accepts(std::span<const Natural> values) const {
  return accepts_word(encode(values));
}

Dfa minimize(const Dfa& a) {
  std::vector<std::uint32_t> labels(a.num_states());
  for (std::uint32_t q = 0; q < a.num_states(); ++q) labels[q] = a.accepting(q) ? 1 : 0;
  const auto blocks = detail::refine_partition(a.num_states(), a.letters(), a.delta(), labels);

  std::vector<std::int64_t> index(a.num_states(), -1);
  std::vector<std::uint32_t> rep;
  std::queue<std::uint32_t> queue;
  auto visit = [&](std::uint32_t q) {
    if (index[blocks[q]] < 0) {
      index[blocks[q]] = static_cast<std::int64_t>(rep.size());
      rep.push_back(q);
      queue.push(q);
    }
  };
  visit(a.initial());
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop();
    for (std::uint32_t l = 0; l < a.letters(); ++l) visit(a.next(q, l));
  }
  std::vector<std::uint32_t> delta(rep.size() * a.letters());
  std::vector<char> acc(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    acc[i] = a.accepting(rep[i]) ? 1 : 0;
    for (std::uint32_t l = 0; l < a.letters(); ++l) {
      delta[i * a.letters() + l] = static_cast<std::uint32_t>(index[blocks[a.next(rep[i], l)]]);
    }
  }
  return Dfa(a.base(), a.vars(), 0, std::move(delta), std::move(acc));
}

Nfa zero_close(Nfa n) {
  const std::uint32_t letters = column_count(n.base, n.vars.size());
  std::vector<char> seen(n.accepting.size(), 0);
  std::vector<std::uint32_t> stack(n.initial.begin(), n.initial.end());
  for (auto q : stack) seen[q] = 1;
  std::vector<std::uint32_t> closed;
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    closed.push_back(q);
    for (auto t : n.successors[static_cast<std::size_t>(q) * letters + 0]) {
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  std::sort(closed.begin(), closed.end());
  n.initial = std::move(closed);
  return n;
}

Dfa determinize(const Nfa& n, const Limits& limits) {
  const std::uint32_t letters = column_count(n.base, n.vars.size());
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash> index;
  std::vector<std::vector<std::uint32_t>> subsets;
  std::vector<std::uint32_t> delta;
  std::vector<char> accepting;

  auto intern = [&](std::vector<std::uint32_t> s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(subsets.size());
    bool acc = false;
    for (auto q : s) acc = acc || n.accepting[q];
    accepting.push_back(acc ? 1 : 0);
    index.emplace(s, id);
    subsets.push_back(std::move(s));
    limits.check_states(subsets.size());
    return id;
  };

  std::vector<std::uint32_t> init = n.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  intern(std::move(init));

  std::vector<char> mark(n.accepting.size(), 0);
  std::vector<std::uint32_t> next;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if ((i & 255) == 0) limits.check_time();
    for (std::uint32_t l = 0; l < letters; ++l) {
      next.clear();
      for (auto q : subsets[i]) {
        for (auto t : n.successors[static_cast<std::size_t>(q) * letters + l]) {
          if (!mark[t]) {
            mark[t] = 1;
            next.push_back(t);
          }
        }
      }
      for (auto t : next) mark[t] = 0;
      std::sort(next.begin(), next.end());
      delta.push_back(intern(next));
    }
  }
  return minimize(Dfa(n.base, n.vars, 0, std::move(delta), std::move(accepting)));
}

Dfa complement(const Dfa& a) {
  std::vector<char> acc(a.accepting_mask());
  for (auto& f : acc) f = f ? 0 : 1;
  return minimize(Dfa(a.base(), a.vars(), a.initial(), a.delta(), std::move(acc)));
}

Dfa intersect(const Dfa& a, const Dfa& b, const Limits& limits) {
  return product(a, b, limits, [](bool x, bool y) { return x && y; });
}

Dfa unite(const Dfa& a, const Dfa& b, const Limits& limits) {
  return product(a, b, limits, [](bool x, bool y) { return x || y; });
}

Dfa project(const Dfa& a, const std::string& var, const Limits& limits) {
  const int t = a.track_of(var);
  if (t < 0) return a;
  std::vector<std::string> rest = a.vars();
  rest.erase(rest.begin() + t);
  const unsigned k = a.base();
  const std::uint32_t letters = column_count(k, rest.size());
  const auto pw = powers(k, a.tracks());

  Nfa n;
  n.base = k;
  n.vars = rest;
  n.initial = {a.initial()};
  n.accepting = a.accepting_mask();
  n.successors.resize(static_cast<std::size_t>(a.num_states()) * letters);
  for (std::uint32_t q = 0; q < a.num_states(); ++q) {
    for (std::uint32_t l = 0; l < letters; ++l) {
      auto& succ = n.successors[static_cast<std::size_t>(q) * letters + l];
      const std::uint32_t low = l % pw[t];
      const std::uint32_t high = l / pw[t];
      for (unsigned d = 0; d < k; ++d) {
        const std::uint32_t full = low + d * pw[t] + high * pw[t + 1];
        succ.push_back(a.next(q, full));
      }
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
  }
  return determinize(zero_close(std::move(n)), limits);
}

Dfa extend_tracks(const Dfa& a, const std::vector<std::string>& vars) {
  const auto map = letter_map(a.base(), a.vars(), vars);
  const auto letters = static_cast<std::uint32_t>(map.size());
  std::vector<std::uint32_t> delta(static_cast<std::size_t>(a.num_states()) * letters);
  for (std::uint32_t q = 0; q < a.num_states(); ++q) {
    for (std::uint32_t l = 0; l < letters; ++l) {
      delta[static_cast<std::size_t>(q) * letters + l] = a.next(q, map[l]);
    }
  }
  return minimize(Dfa(a.base(), vars, a.initial(), std::move(delta), a.accepting_mask()));
}

Dfa reorder(const Dfa& a, const std::vector<std::string>& vars) {
  if (vars.size() != a.tracks()) throw Error("tracks", "reorder needs the same variables");
  return extend_tracks(a, vars);
}

Dfa rename(const Dfa& a, const std::string& from, const std::string& to) {
  auto vars = a.vars();
  const int t = a.track_of(from);
  if (t < 0) return a;
  if (a.track_of(to) >= 0 && from != to) {
    throw Error("tracks", "rename target " + to + " already present");
  }
  vars[t] = to;
  return Dfa(a.base(), std::move(vars), a.initial(), a.delta(), a.accepting_mask());
}

bool equivalent(const Dfa& a, const Dfa& b) {
  if (a.base() != b.base()) return false;
  auto sa = a.vars();
  auto sb = b.vars();
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  return minimize(reorder(a, sa)) == minimize(reorder(b, sa));
}

bool is_empty(const Dfa& a) { return !shortest_accepted(a).has_value(); }

std::optional<Tuple> shortest_accepted(const Dfa& a) {
  // Level-by-level BFS with ascending letters reaches every state first along
  // its length-lex least word.
  std::vector<std::int64_t> parent(a.num_states(), -2);
  std::vector<std::uint32_t> via(a.num_states(), 0);
  std::queue<std::uint32_t> queue;
  parent[a.initial()] = -1;
  queue.push(a.initial());
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop();
    if (a.accepting(q)) {
      std::vector<std::uint32_t> word;
      for (auto s = static_cast<std::int64_t>(q); parent[s] >= 0; s = parent[s]) {
        word.push_back(via[s]);
      }
      std::reverse(word.begin(), word.end());
      return a.decode(word);
    }
    for (std::uint32_t l = 0; l < a.letters(); ++l) {
      const auto t = a.next(q, l);
      if (parent[t] == -2) {
        parent[t] = q;
        via[t] = l;
        queue.push(t);
      }
    }
  }
  return std::nullopt;
}

namespace {

// States that can still reach an accepting state.
std::vector<char> coaccessible(const Dfa& a) {
  std::vector<std::vector<std::uint32_t>> rev(a.num_states());
  for (std::uint32_t q = 0; q < a.num_states(); ++q) {
    for (std::uint32_t l = 0; l < a.letters(); ++l) rev[a.next(q, l)].push_back(q);
  }
  std::vector<char> useful(a.num_states(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t q = 0; q < a.num_states(); ++q) {
    if (a.accepting(q)) {
      useful[q] = 1;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    for (auto p : rev[q]) {
      if (!useful[p]) {
        useful[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return useful;
}

}  // namespace

bool is_finite(const Dfa& a) {
  // Tuples correspond one-to-one to accepted words without a leading zero
  // column. Infinite iff such words can pass through a useful cycle.
  const auto useful = coaccessible(a);
  std::vector<char> reach(a.num_states(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t l = 1; l < a.letters(); ++l) {
    const auto t = a.next(a.initial(), l);
    if (useful[t] && !reach[t]) {
      reach[t] = 1;
      stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    for (std::uint32_t l = 0; l < a.letters(); ++l) {
      const auto t = a.next(q, l);
      if (useful[t] && !reach[t]) {
        reach[t] = 1;
        stack.push_back(t);
      }
    }
  }
  // Kahn's algorithm on the useful reachable subgraph.
  std::vector<std::uint32_t> indeg(a.num_states(), 0);
  for (std::uint32_t q = 0; q < a.num_states(); ++q) {
    if (!reach[q]) continue;
    for (std::uint32_t l = 0; l < a.letters(); ++l) {
      const auto t = a.next(q, l);
      if (reach[t]) ++indeg[t];
    }
  }
  std::vector<std::uint32_t> ready;
  std::size_t total = 0;
  for (std::uint32_t q = 0; q < a.num_states(); ++q) {
    if (reach[q]) {
      ++total;
      if (indeg[q] == 0) ready.push_back(q);
    }
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto q = ready.back();
    ready.pop_back();
    ++removed;
    for (std::uint32_t l = 0; l < a.letters(); ++l) {
      const auto t = a.next(q, l);
      if (reach[t] && --indeg[t] == 0) ready.push_back(t);
    }
  }
  return removed == total;
}

std::vector<Tuple> first_accepted(const Dfa& a, std::size_t count) {
  // Breadth-first over canonical words (no leading zero column), so output is
  // in length-lex order. Only useful states are expanded.
  std::vector<Tuple> out;
  if (count == 0) return out;
  const auto useful = coaccessible(a);
  if (!useful[a.initial()]) return out;
  if (a.accepting(a.initial())) out.push_back(Tuple(a.tracks(), 0));

  struct Node {
    std::uint32_t state;
    std::vector<std::uint32_t> word;
  };
  std::vector<Node> level;
  for (std::uint32_t l = 1; l < a.letters(); ++l) {
    const auto t = a.next(a.initial(), l);
    if (useful[t]) level.push_back({t, {l}});
  }
  while (!level.empty() && out.size() < count) {
    std::vector<Node> next;
    for (const auto& node : level) {
      if (a.accepting(node.state)) {
        out.push_back(a.decode(node.word));
        if (out.size() >= count) break;
      }
    }
    if (out.size() >= count) break;
    for (const auto& node : level) {
      for (std::uint32_t l = 0; l < a.letters(); ++l) {
        const auto t = a.next(node.state, l);
        if (!useful[t]) continue;
        auto w = node.word;
        w.push_back(l);
        next.push_back({t, std::move(w)});
      }
      if (next.size() > (std::size_t{1} << 24)) {
        throw Error("limit", "enumeration frontier too large");
      }
    }
    level = std::move(next);
  }
  return out;
}

std::vector<Tuple> enumerate_accepted(const Dfa& a, std::size_t limit) {
  if (!is_finite(a)) throw Error("possibly-infinite", "automaton accepts infinitely many tuples");
  auto out = first_accepted(a, limit + 1);
  if (out.size() > limit) {
    throw Error("limit", "more than " + std::to_string(limit) + " accepted tuples");
  }
  return out;
}

std::size_t num_states(const Dfa& a) { return a.num_states(); }

Dfa constant_dfa(unsigned base, bool value) {
  return Dfa(base, {}, 0, {0}, {static_cast<char>(value ? 1 : 0)});
}

Dfa linear_rel(unsigned base, const LinearConstraint& c) {
  const auto terms = normalize_terms(c.terms);
  const std::int64_t k = base;
  if (terms.empty()) {
    const bool v = c.op == LinearConstraint::Op::Eq ? c.constant == 0 : c.constant <= 0;
    return constant_dfa(base, v);
  }
  std::vector<std::string> vars;
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  for (const auto& [v, a] : terms) {
    vars.push_back(v);
    (a > 0 ? pos : neg) += a > 0 ? a : -a;
  }
  const std::int64_t mag = c.constant < 0 ? -c.constant : c.constant;
  const std::int64_t hi = neg + mag;   // above: the sum can never come back down
  const std::int64_t lo = -(pos + mag);  // below: can never come back up
  const std::uint32_t letters = column_count(base, vars.size());
  std::vector<std::int64_t> contrib(letters, 0);
  for (std::uint32_t l = 0; l < letters; ++l) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      contrib[l] += terms[t].second * static_cast<std::int64_t>(digit_of(l, t, base));
    }
  }

  // State 0: reject sink, 1: accept sink (inequalities only), then sums.
  std::map<std::int64_t, std::uint32_t> index;
  std::vector<std::int64_t> sums;
  std::vector<std::uint32_t> delta(2 * static_cast<std::size_t>(letters));
  std::fill(delta.begin(), delta.begin() + letters, 0u);
  std::fill(delta.begin() + letters, delta.end(), 1u);
  std::vector<char> accepting = {0, 1};
  auto intern = [&](std::int64_t s) -> std::uint32_t {
    if (s > hi) return 0;
    if (s < lo) return c.op == LinearConstraint::Op::Le ? 1u : 0u;
    auto [it, fresh] = index.emplace(s, static_cast<std::uint32_t>(sums.size() + 2));
    if (fresh) {
      sums.push_back(s);
      const bool acc = c.op == LinearConstraint::Op::Eq ? s + c.constant == 0
                                                          : s + c.constant <= 0;
      accepting.push_back(acc ? 1 : 0);
      delta.resize(delta.size() + letters);
    }
    return it->second;
  };
  const auto init = intern(0);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    for (std::uint32_t l = 0; l < letters; ++l) {
      const auto t = intern(k * sums[i] + contrib[l]);
      delta[(i + 2) * letters + l] = t;
    }
  }
  return minimize(Dfa(base, vars, init, std::move(delta), std::move(accepting)));
}

Dfa eq_rel(unsigned base, const std::string& x, const std::string& y) {
  return linear_rel(base, {{{x, 1}, {y, -1}}, 0, LinearConstraint::Op::Eq});
}

Dfa less_rel(unsigned base, const std::string& x, const std::string& y) {
  // x - y + 1 <= 0
  return linear_rel(base, {{{x, 1}, {y, -1}}, 1, LinearConstraint::Op::Le});
}

Dfa add_rel(unsigned base, const std::string& x, const std::string& y,
            const std::string& z) {
  return linear_rel(base, {{{x, 1}, {y, 1}, {z, -1}}, 0, LinearConstraint::Op::Eq});
}

Dfa const_mul_rel(unsigned base, Natural c, const std::string& x,
                  const std::string& y) {
  return linear_rel(base, {{{x, static_cast<std::int64_t>(c)}, {y, -1}}, 0,
                           LinearConstraint::Op::Eq});
}

Dfa const_rel(unsigned base, Natural c, const std::string& x) {
  return linear_rel(base, {{{x, 1}}, -static_cast<std::int64_t>(c), LinearConstraint::Op::Eq});
}

Dfa sequence_dfa(const Dfao& m, const std::string& var,
                 std::span<const Symbol> symbols) {
  std::vector<char> acc(m.num_states());
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    acc[q] = std::find(symbols.begin(), symbols.end(), m.output(q)) != symbols.end();
  }
  return minimize(Dfa(m.base(), {var}, m.initial(), m.delta(), std::move(acc)));
}

Dfa sequence_eq_dfa(const Dfao& m, const std::string& a, const std::string& b) {
  if (a == b) return extend_tracks(constant_dfa(m.base(), true), {a});
  const std::uint32_t n = m.num_states();
  const unsigned k = m.base();
  const std::uint32_t letters = k * k;
  std::vector<std::uint32_t> delta(static_cast<std::size_t>(n) * n * letters);
  std::vector<char> acc(static_cast<std::size_t>(n) * n);
  for (std::uint32_t p = 0; p < n; ++p) {
    for (std::uint32_t q = 0; q < n; ++q) {
      const std::size_t s = static_cast<std::size_t>(p) * n + q;
      acc[s] = m.output(p) == m.output(q);
      for (std::uint32_t l = 0; l < letters; ++l) {
        delta[s * letters + l] = m.next(p, l % k) * n + m.next(q, l / k);
      }
    }
  }
  return minimize(Dfa(k, {a, b}, m.initial() * n + m.initial(), std::move(delta), std::move(acc)));
}

}  // namespace autorank
