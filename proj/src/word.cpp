#include "autorank/word.hpp"

#include <algorithm>
#include <numeric>

#include "autorank/error.hpp"

namespace autorank {

namespace {

void require_nonempty(const Word& w, const char* what) {
  if (w.empty()) {
    throw Error("empty-word", std::string(what) + ": empty word");
  }
}

// KMP border table: border[i] is the longest proper border of w[0..i).
std::vector<std::size_t> borders(const Word& w) {
  std::vector<std::size_t> border(w.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  return border;
}

}  // namespace

Word Word::digits(std::string_view text) {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error("parse", "not a digit word: " + std::string(text));
    }
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(std::move(out));
}

Word Word::chars(std::string_view text) {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (unsigned char c : text) out.push_back(c);
  return Word(std::move(out));
}

Word Word::substr(std::size_t pos, std::size_t len) const {
  if (pos > size()) throw std::out_of_range("Word::substr");
  len = std::min(len, size() - pos);
  return Word(std::vector<Symbol>(symbols_.begin() + pos,
                                  symbols_.begin() + pos + len));
}

Word Word::pow(std::size_t e) const {
  std::vector<Symbol> out;
  out.reserve(size() * e);
  for (std::size_t i = 0; i < e; ++i) {
    out.insert(out.end(), symbols_.begin(), symbols_.end());
  }
  return Word(std::move(out));
}

bool Word::starts_with(const Word& prefix) const {
  return prefix.size() <= size() &&
         std::equal(prefix.begin(), prefix.end(), begin());
}

bool Word::ends_with(const Word& suffix) const {
  return suffix.size() <= size() &&
         std::equal(suffix.begin(), suffix.end(), end() - suffix.size());
}

Word& Word::operator+=(const Word& other) {
  symbols_.insert(symbols_.end(), other.begin(), other.end());
  return *this;
}

std::string Word::to_string() const {
  const bool small = std::all_of(begin(), end(), [](Symbol s) { return s < 10; });
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (small) {
      out.push_back(static_cast<char>('0' + symbols_[i]));
    } else {
      if (i > 0) out.push_back(',');
      out += std::to_string(symbols_[i]);
    }
  }
  return out;
}

Word Word::parse(std::string_view text) {
  if (text.find(',') == std::string_view::npos) return digits(text);
  std::vector<Symbol> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start);
    if (piece.empty() ||
        !std::all_of(piece.begin(), piece.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error("parse", "bad symbol list: " + std::string(text));
    }
    out.push_back(static_cast<Symbol>(std::stoul(std::string(piece))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Word(std::move(out));
}

FactorizationPattern::FactorizationPattern(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) throw Error("pattern", "empty factorization pattern");
  for (auto b : bits_) {
    if (b > 1) throw Error("pattern", "pattern bits must be 0 or 1");
  }
}

FactorizationPattern FactorizationPattern::parse(std::string_view bits) {
  std::vector<std::uint8_t> out;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("pattern", "pattern bits must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return FactorizationPattern(std::move(out));
}

std::string FactorizationPattern::to_string() const {
  std::string out;
  for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

SymbolSource source_of(const Word& w) {
  return [w](std::size_t i) -> std::optional<Symbol> {
    if (i < w.size()) return w[i];
    return std::nullopt;
  };
}

std::size_t period(const Word& w) {
  require_nonempty(w, "period");
  return w.size() - borders(w)[w.size()];
}

Rational exponent(const Word& w) {
  require_nonempty(w, "exponent");
  return Rational(static_cast<std::int64_t>(w.size()),
                  static_cast<std::int64_t>(period(w)));
}

PrimitiveRoot primitive_root(const Word& w) {
  require_nonempty(w, "primitive_root");
  const std::size_t p = period(w);
  if (w.size() % p == 0) return {w.substr(0, p), w.size() / p};
  return {w, 1};
}

bool is_primitive(const Word& w) { return primitive_root(w).power == 1; }

bool commute(const Word& u, const Word& v) { return u + v == v + u; }

std::optional<ConjugationSolution> solve_conjugation(const Word& d,
                                                     const Word& u) {
  require_nonempty(d, "solve_conjugation");
  require_nonempty(u, "solve_conjugation");
  // du = uc is solvable iff du has u as a prefix.
  if (!(d + u).starts_with(u)) return std::nullopt;
  ConjugationSolution sol;
  sol.alpha = u.size() / d.size();
  sol.r = u.substr(sol.alpha * d.size());
  sol.s = d.substr(sol.r.size());
  return sol;
}

bool in_free_hull(const Word& w, const Word& a, const Word& b) {
  std::vector<char> reach(w.size() + 1, 0);
  reach[0] = 1;
  auto matches = [&](std::size_t at, const Word& x) {
    return !x.empty() && at + x.size() <= w.size() &&
           std::equal(x.begin(), x.end(), w.begin() + static_cast<std::ptrdiff_t>(at));
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!reach[i]) continue;
    if (matches(i, a)) reach[i + a.size()] = 1;
    if (matches(i, b)) reach[i + b.size()] = 1;
  }
  return reach[w.size()] != 0;
}

Reduction free_reduce(const Word& u, const Word& v) {
  require_nonempty(u, "free_reduce");
  require_nonempty(v, "free_reduce");
  if (commute(u, v)) return reduction::Single{primitive_root(u).root};

  // Prefix stripping: total length strictly decreases and the pair never
  // commutes, so this ends at a prefix code pair generating u and v.
  Word a = u;
  Word b = v;
  while (true) {
    if (b.starts_with(a)) {
      b = b.substr(a.size());
    } else if (a.starts_with(b)) {
      a = a.substr(b.size());
    } else {
      break;
    }
  }

  // Stripping alone is not always least ((aba, a) strips to (a, ba) while
  // (a, b) generates both), so search for anything shorter. One generator of
  // any pair must be a prefix of u and the other a factor of u or v.
  std::vector<Word> factors;
  for (const Word* w : {&u, &v}) {
    for (std::size_t i = 0; i < w->size(); ++i) {
      for (std::size_t len = 1; i + len <= w->size(); ++len) {
        factors.push_back(w->substr(i, len));
      }
    }
  }
  std::sort(factors.begin(), factors.end(), [](const Word& x, const Word& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());

  const std::size_t best = a.size() + b.size();
  for (std::size_t total = 2; total < best; ++total) {
    for (std::size_t la = 1; la < total && la <= u.size(); ++la) {
      const Word first = u.substr(0, la);
      for (const Word& second : factors) {
        if (second.size() > total - la) break;
        if (second.size() != total - la) continue;
        if (commute(first, second)) continue;
        if (in_free_hull(u, first, second) && in_free_hull(v, first, second)) {
          return reduction::Pair{first, second};
        }
      }
    }
  }
  return reduction::Pair{a, b};
}

bool is_prefix_code_pair(const Word& u, const Word& v) {
  return !u.starts_with(v) && !v.starts_with(u);
}

ParseOutcome greedy_parse(const SymbolSource& stream, const Word& u,
                          const Word& v, StopRule stop) {
  if (u.empty() || v.empty()) throw Error("empty-word", "greedy_parse: empty word");
  if (!is_prefix_code_pair(u, v)) {
    throw Error("ambiguous-pair",
                "greedy_parse: " + u.to_string() + " and " + v.to_string() +
                    " do not form a prefix code");
  }
  ParseOutcome out;
  std::size_t v_count = 0;

  auto stop_fired = [&] {
    switch (stop.kind) {
      case StopRule::Kind::Blocks: return out.blocks.size() >= stop.limit;
      case StopRule::Kind::VCount: return v_count >= stop.limit;
      case StopRule::Kind::Length: return out.consumed >= stop.limit;
    }
    return false;
  };

  // 0 = mismatch, 1 = match, 2 = stream ended first.
  auto try_match = [&](const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto s = stream(out.consumed + i);
      if (!s) return 2;
      if (*s != w[i]) return 0;
    }
    return 1;
  };

  while (!stop_fired()) {
    const int mu = try_match(u);
    if (mu == 1) {
      out.blocks.push_back(Block::U);
      out.consumed += u.size();
      continue;
    }
    const int mv = try_match(v);
    if (mv == 1) {
      out.blocks.push_back(Block::V);
      out.consumed += v.size();
      ++v_count;
      continue;
    }
    if (mu == 2 || mv == 2) {
      out.status = ParseOutcome::Status::Exhausted;
    } else {
      out.status = ParseOutcome::Status::Fail;
      out.fail_position = out.consumed;
    }
    return out;
  }
  out.status = ParseOutcome::Status::Hit;
  return out;
}

Word build_pattern(const FactorizationPattern& pattern, const Word& u,
                   const Word& v) {
  if (u.empty() || v.empty()) throw Error("empty-word", "build_pattern: empty word");
  Word out;
  for (auto bit : pattern.bits()) out += bit == 0 ? u : v;
  return out;
}

bool is_p_syndetic(std::span<const Block> blocks, std::size_t p) {
  // Walk maximal runs; a run is flanked when a different block sits on both
  // sides of it.
  std::size_t i = 0;
  while (i < blocks.size()) {
    std::size_t j = i;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    const bool flanked = i > 0 && j < blocks.size();
    if (flanked && j - i >= p) return false;
    i = j;
  }
  return true;
}

}  // namespace autorank
