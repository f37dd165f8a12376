#include "autorank/compile.hpp"

#include <algorithm>
#include <limits>

namespace autorank {

namespace {

std::int64_t to_signed(Natural v) {
  if (v > static_cast<Natural>(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw Error("overflow", "coefficient too large for a linear atom");
  }
  return static_cast<std::int64_t>(v);
}

// lhs - rhs as a signed linear constraint.
LinearConstraint difference(const Term& lhs, const Term& rhs, LinearConstraint::Op op) {
  LinearConstraint c;
  c.op = op;
  for (const auto& [v, k] : lhs.coeffs()) c.terms.emplace_back(v, to_signed(k));
  for (const auto& [v, k] : rhs.coeffs()) c.terms.emplace_back(v, -to_signed(k));
  c.constant = to_signed(lhs.constant()) - to_signed(rhs.constant());
  return c;
}

class Compiler {
 public:
  Compiler(const Dfao& m, const Limits& limits) : m_(m), limits_(limits) {}

  Dfa run(const Formula& f) {
    limits_.check_time();
    using K = Formula::Kind;
    const unsigned k = m_.base();
    switch (f.kind()) {
      case K::True: return constant_dfa(k, true);
      case K::False: return constant_dfa(k, false);
      case K::Eq: return linear_rel(k, difference(f.lhs(), f.rhs(), LinearConstraint::Op::Eq));
      case K::Le: return linear_rel(k, difference(f.lhs(), f.rhs(), LinearConstraint::Op::Le));
      case K::Lt: {
        auto c = difference(f.lhs(), f.rhs(), LinearConstraint::Op::Le);
        c.constant += 1;
        return linear_rel(k, c);
      }
      case K::SeqAt: {
        const Symbol s = f.symbol();
        if (auto v = f.lhs().as_var()) return sequence_dfa(m_, *v, std::span(&s, 1));
        const auto z = fresh_var("z");
        Dfa a = intersect(linear_rel(k, difference(var(z), f.lhs(), LinearConstraint::Op::Eq)),
                          sequence_dfa(m_, z, std::span(&s, 1)), limits_);
        return project(a, z, limits_);
      }
      case K::SeqEq: return seq_eq(f.lhs(), f.rhs());
      case K::Embedded:
        if (f.embedded().base() != k) throw Error("base-mismatch", "embedded automaton base");
        return f.embedded();
      case K::Not: return complement(run(f.kids()[0]));
      case K::And: {
        Dfa a = run(f.kids()[0]);
        if (is_empty(a)) return over(constant_dfa(k, false), f);
        return intersect(a, run(f.kids()[1]), limits_);
      }
      case K::Or: {
        Dfa a = run(f.kids()[0]);
        if (is_empty(complement(a))) return over(constant_dfa(k, true), f);
        return unite(a, run(f.kids()[1]), limits_);
      }
      case K::Implies: {
        Dfa a = run(f.kids()[0]);
        if (is_empty(a)) return over(constant_dfa(k, true), f);
        return unite(complement(a), run(f.kids()[1]), limits_);
      }
      case K::Exists: return project(run(f.kids()[0]), f.bound(), limits_);
      case K::Forall:
        return complement(project(complement(run(f.kids()[0])), f.bound(), limits_));
    }
    throw Error("formula", "unknown formula node");
  }

 private:
  Dfa over(const Dfa& a, const Formula& f) {
    const auto fv = f.free_vars();
    return extend_tracks(a, {fv.begin(), fv.end()});
  }

  Dfa seq_eq(const Term& lhs, const Term& rhs) {
    const unsigned k = m_.base();
    if (lhs == rhs) return over(constant_dfa(k, true), Formula::seq_eq(lhs, rhs));
    auto a = lhs.as_var();
    auto b = rhs.as_var();
    std::vector<std::string> aux;
    std::vector<Dfa> links;
    auto name_for = [&](const Term& t, const std::optional<std::string>& v) {
      if (v) return *v;
      const auto z = fresh_var("z");
      aux.push_back(z);
      links.push_back(linear_rel(k, difference(var(z), t, LinearConstraint::Op::Eq)));
      return z;
    };
    const auto za = name_for(lhs, a);
    const auto zb = name_for(rhs, b);
    Dfa out = sequence_eq_dfa(m_, za, zb);
    for (const auto& l : links) out = intersect(out, l, limits_);
    for (const auto& z : aux) out = project(out, z, limits_);
    return out;
  }

  const Dfao& m_;
  const Limits& limits_;
};

}  // namespace

Dfa compile(const Formula& f, const Dfao& m, const Limits& limits) {
  const auto fv = f.free_vars();
  return compile(f, m, std::vector<std::string>(fv.begin(), fv.end()), limits);
}

Dfa compile(const Formula& f, const Dfao& m, const std::vector<std::string>& vars,
            const Limits& limits) {
  Dfa a = Compiler(m, limits).run(f);
  for (const auto& v : a.vars()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      throw Error("formula", "free variable " + v + " has no track");
    }
  }
  return extend_tracks(a, vars);
}

bool decide(const Formula& sentence, const Dfao& m, const Limits& limits) {
  if (!sentence.free_vars().empty()) {
    throw Error("formula", "decide needs a sentence; free: " + *sentence.free_vars().begin());
  }
  const Dfa a = compile(sentence, m, limits);
  return a.accepting(a.initial());
}

std::optional<Assignment> witness(const Formula& f, const Dfao& m, const Limits& limits) {
  const Dfa a = compile(f, m, limits);
  auto t = shortest_accepted(a);
  if (!t) return std::nullopt;
  Assignment out;
  for (std::size_t i = 0; i < a.tracks(); ++i) out[a.vars()[i]] = (*t)[i];
  return out;
}

}  // namespace autorank
