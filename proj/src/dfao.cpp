#include "autorank/dfao.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>

#include "autorank/error.hpp"
#include "partition.hpp"

namespace autorank {

namespace {

std::vector<unsigned> msd_digits(Natural n, unsigned base) {
  std::vector<unsigned> out;
  while (n > 0) {
    out.push_back(static_cast<unsigned>(n % base));
    n /= base;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Dfao::Dfao(unsigned base, std::vector<Symbol> alphabet, std::uint32_t initial,
           std::vector<std::uint32_t> delta, std::vector<Symbol> output)
    : base_(base),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      delta_(std::move(delta)),
      output_(std::move(output)) {
  if (base_ < 2) throw Error("dfao", "base must be at least 2");
  if (output_.empty()) throw Error("dfao", "DFAO needs at least one state");
  if (initial_ >= output_.size()) throw Error("dfao", "initial state out of range");
  if (delta_.size() != output_.size() * base_) {
    throw Error("dfao", "transition table is not total");
  }
  for (auto t : delta_) {
    if (t >= output_.size()) throw Error("dfao", "transition target out of range");
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  if (std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end()) {
    throw Error("dfao", "duplicate alphabet symbol");
  }
  for (auto s : output_) {
    if (!std::binary_search(alphabet_.begin(), alphabet_.end(), s)) {
      throw Error("dfao", "output symbol " + std::to_string(s) + " not in alphabet");
    }
  }
  if (!leading_zero_invariant()) {
    throw Error("dfao", "output depends on leading zeros");
  }
}

std::uint32_t Dfao::run(std::span<const unsigned> digits) const {
  std::uint32_t q = initial_;
  for (unsigned d : digits) q = next(q, d);
  return q;
}

Symbol Dfao::operator()(Natural n) const {
  const auto digits = msd_digits(n, base_);
  return output_[run(digits)];
}

Word Dfao::prefix(std::size_t length) const {
  std::vector<Symbol> out(length);
  for (std::size_t n = 0; n < length; ++n) out[n] = (*this)(n);
  return Word(std::move(out));
}

bool Dfao::leading_zero_invariant() const {
  std::vector<std::uint32_t> labels(output_.begin(), output_.end());
  const auto blocks =
      detail::refine_partition(num_states(), base_, delta_, labels);
  return blocks[initial_] == blocks[next(initial_, 0)];
}

Symbol eval_sequence(const Dfao& m, Natural n) { return m(n); }

Dfao load_dfao(std::string_view text) {
  std::optional<unsigned> base;
  std::optional<std::vector<Symbol>> alphabet;
  std::optional<std::uint32_t> states;
  std::optional<std::uint32_t> initial;
  std::map<std::uint32_t, Symbol> outputs;
  std::map<std::pair<std::uint32_t, unsigned>, std::uint32_t> trans;

  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    ++line_no;
    auto nl = text.find('\n', line_start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(line_start, nl - line_start);
    line_start = nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }

    // Tokenize, remembering 1-based columns for diagnostics.
    std::vector<std::pair<std::string, std::size_t>> tok;
    for (std::size_t i = 0; i < line.size();) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      tok.emplace_back(std::string(line.substr(i, j - i)), i + 1);
      i = j;
    }
    if (tok.empty()) {
      if (nl == text.size()) break;
      continue;
    }

    auto fail = [&](std::size_t col, const std::string& msg) -> Error {
      return Error("parse", "line " + std::to_string(line_no) + ", column " +
                                std::to_string(col) + ": " + msg);
    };
    auto number = [&](std::size_t idx) -> std::uint64_t {
      if (idx >= tok.size()) {
        throw fail(line.size() + 1, "missing argument to '" + tok[0].first + "'");
      }
      const auto& [s, col] = tok[idx];
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          s.size() > 9) {
        throw fail(col, "expected a non-negative integer, got '" + s + "'");
      }
      return std::stoull(s);
    };
    auto arity = [&](std::size_t n) {
      if (tok.size() > n + 1) throw fail(tok[n + 1].second, "unexpected token '" + tok[n + 1].first + "'");
      if (tok.size() < n + 1) throw fail(line.size() + 1, "missing argument to '" + tok[0].first + "'");
    };

    const std::string& kw = tok[0].first;
    if (kw == "k") {
      arity(1);
      if (base) throw fail(tok[0].second, "duplicate 'k'");
      base = static_cast<unsigned>(number(1));
      if (*base < 2) throw fail(tok[1].second, "base must be at least 2");
    } else if (kw == "alphabet") {
      if (alphabet) throw fail(tok[0].second, "duplicate 'alphabet'");
      if (tok.size() < 2) throw fail(line.size() + 1, "alphabet needs at least one symbol");
      alphabet.emplace();
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto s = static_cast<Symbol>(number(i));
        if (std::find(alphabet->begin(), alphabet->end(), s) != alphabet->end()) {
          throw fail(tok[i].second, "duplicate alphabet symbol");
        }
        alphabet->push_back(s);
      }
    } else if (kw == "states") {
      arity(1);
      if (states) throw fail(tok[0].second, "duplicate 'states'");
      states = static_cast<std::uint32_t>(number(1));
      if (*states == 0) throw fail(tok[1].second, "need at least one state");
    } else if (kw == "initial") {
      arity(1);
      if (initial) throw fail(tok[0].second, "duplicate 'initial'");
      if (!states) throw fail(tok[0].second, "'initial' before 'states'");
      initial = static_cast<std::uint32_t>(number(1));
      if (*initial >= *states) throw fail(tok[1].second, "state out of range");
    } else if (kw == "output") {
      arity(2);
      if (!states || !alphabet) throw fail(tok[0].second, "'output' before 'states'/'alphabet'");
      const auto q = static_cast<std::uint32_t>(number(1));
      if (q >= *states) throw fail(tok[1].second, "state out of range");
      const auto s = static_cast<Symbol>(number(2));
      if (std::find(alphabet->begin(), alphabet->end(), s) == alphabet->end()) {
        throw fail(tok[2].second, "symbol not in alphabet");
      }
      if (!outputs.emplace(q, s).second) throw fail(tok[0].second, "duplicate output for state");
    } else if (kw == "trans") {
      arity(3);
      if (!states || !base) throw fail(tok[0].second, "'trans' before 'states'/'k'");
      const auto q = static_cast<std::uint32_t>(number(1));
      if (q >= *states) throw fail(tok[1].second, "state out of range");
      const auto d = static_cast<unsigned>(number(2));
      if (d >= *base) throw fail(tok[2].second, "digit out of range for base");
      const auto t = static_cast<std::uint32_t>(number(3));
      if (t >= *states) throw fail(tok[3].second, "state out of range");
      if (!trans.emplace(std::make_pair(q, d), t).second) {
        throw fail(tok[0].second, "duplicate transition");
      }
    } else {
      throw fail(tok[0].second, "unknown directive '" + kw + "'");
    }
    if (nl == text.size()) break;
  }

  auto missing = [](const std::string& what) {
    return Error("parse", "missing '" + what + "' directive");
  };
  if (!base) throw missing("k");
  if (!alphabet) throw missing("alphabet");
  if (!states) throw missing("states");
  if (!initial) throw missing("initial");

  std::vector<Symbol> out(*states);
  for (std::uint32_t q = 0; q < *states; ++q) {
    auto it = outputs.find(q);
    if (it == outputs.end()) {
      throw Error("parse", "state " + std::to_string(q) + " has no output");
    }
    out[q] = it->second;
  }
  std::vector<std::uint32_t> delta(static_cast<std::size_t>(*states) * *base);
  for (std::uint32_t q = 0; q < *states; ++q) {
    for (unsigned d = 0; d < *base; ++d) {
      auto it = trans.find({q, d});
      if (it == trans.end()) {
        throw Error("parse", "missing transition for state " + std::to_string(q) +
                                 " digit " + std::to_string(d));
      }
      delta[static_cast<std::size_t>(q) * *base + d] = it->second;
    }
  }
  return Dfao(*base, std::move(*alphabet), *initial, std::move(delta), std::move(out));
}

Dfao load_dfao_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_dfao(buf.str());
}

std::string store_dfao(const Dfao& m) {
  std::ostringstream out;
  out << "k " << m.base() << '\n';
  out << "alphabet";
  for (auto s : m.alphabet()) out << ' ' << s;
  out << '\n';
  out << "states " << m.num_states() << '\n';
  out << "initial " << m.initial() << '\n';
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    out << "output " << q << ' ' << m.output(q) << '\n';
  }
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    for (unsigned d = 0; d < m.base(); ++d) {
      out << "trans " << q << ' ' << d << ' ' << m.next(q, d) << '\n';
    }
  }
  return out.str();
}

Dfao minimize_dfao(const Dfao& m) {
  std::vector<std::uint32_t> labels(m.outputs().begin(), m.outputs().end());
  const auto blocks =
      detail::refine_partition(m.num_states(), m.base(), m.delta(), labels);

  // BFS over blocks from the initial one gives a canonical numbering.
  std::vector<std::int64_t> index(m.num_states(), -1);
  std::vector<std::uint32_t> rep;
  std::queue<std::uint32_t> queue;
  auto visit = [&](std::uint32_t q) {
    if (index[blocks[q]] < 0) {
      index[blocks[q]] = static_cast<std::int64_t>(rep.size());
      rep.push_back(q);
      queue.push(q);
    }
  };
  visit(m.initial());
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop();
    for (unsigned d = 0; d < m.base(); ++d) visit(m.next(q, d));
  }
  std::vector<std::uint32_t> delta(rep.size() * m.base());
  std::vector<Symbol> out(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    out[i] = m.output(rep[i]);
    for (unsigned d = 0; d < m.base(); ++d) {
      delta[i * m.base() + d] =
          static_cast<std::uint32_t>(index[blocks[m.next(rep[i], d)]]);
    }
  }
  return Dfao(m.base(), m.alphabet(), 0, std::move(delta), std::move(out));
}

}  // namespace autorank
