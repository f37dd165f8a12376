#include "autorank/formula.hpp"

#include <atomic>
#include <sstream>

namespace autorank {

Term Term::var(const std::string& name) {
  Term t;
  t.coeffs_[name] = 1;
  return t;
}

Term var(const std::string& name) { return Term::var(name); }

std::optional<std::string> Term::as_var() const {
  if (constant_ == 0 && coeffs_.size() == 1 && coeffs_.begin()->second == 1) {
    return coeffs_.begin()->first;
  }
  return std::nullopt;
}

Term Term::without(const std::string& v) const {
  Term t = *this;
  t.coeffs_.erase(v);
  return t;
}

Natural Term::coeff(const std::string& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? 0 : it->second;
}

Term Term::rename(const std::string& from, const std::string& to) const {
  auto it = coeffs_.find(from);
  if (it == coeffs_.end()) return *this;
  Term t = without(from);
  t.coeffs_[to] += it->second;
  return t;
}

std::optional<Natural> Term::eval(const std::map<std::string, Natural>& env) const {
  Natural total = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = env.find(v);
    if (it == env.end()) return std::nullopt;
    total += c * it->second;
  }
  return total;
}

Term operator+(Term a, const Term& b) {
  for (const auto& [v, c] : b.coeffs_) a.coeffs_[v] += c;
  a.constant_ += b.constant_;
  return a;
}

Term operator*(Natural c, Term t) {
  if (c == 0) return Term{};
  for (auto& [v, k] : t.coeffs_) k *= c;
  t.constant_ *= c;
  return t;
}

std::string Term::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    if (!first) out << "+";
    first = false;
    if (c != 1) out << c << "*";
    out << v;
  }
  if (constant_ != 0 || first) {
    if (!first) out << "+";
    out << constant_;
  }
  return out.str();
}

Formula Formula::make_true() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::True;
  return Formula(n);
}

Formula Formula::make_false() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::False;
  return Formula(n);
}

Formula Formula::atom(Kind k, Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(n);
}

Formula Formula::seq_at(Term position, Symbol s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SeqAt;
  n->lhs = std::move(position);
  n->symbol = s;
  return Formula(n);
}

Formula Formula::seq_eq(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SeqEq;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(n);
}

Formula Formula::embed(Dfa dfa) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Embedded;
  n->dfa = std::make_shared<const Dfa>(std::move(dfa));
  return Formula(n);
}

Formula Formula::unary(Kind k, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids.push_back(std::move(f));
  return Formula(n);
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids.push_back(std::move(a));
  n->kids.push_back(std::move(b));
  return Formula(n);
}

Formula Formula::quantify(Kind k, const std::string& var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->bound = var;
  n->kids.push_back(std::move(body));
  return Formula(n);
}

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> out;
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      break;
    case Kind::Eq:
    case Kind::Le:
    case Kind::Lt:
    case Kind::SeqAt:
    case Kind::SeqEq:
      for (const auto& [v, c] : lhs().coeffs()) out.insert(v);
      for (const auto& [v, c] : rhs().coeffs()) out.insert(v);
      break;
    case Kind::Embedded:
      out.insert(embedded().vars().begin(), embedded().vars().end());
      break;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for (const auto& k : kids()) {
        auto sub = k.free_vars();
        out.insert(sub.begin(), sub.end());
      }
      break;
    case Kind::Exists:
    case Kind::Forall:
      out = kids()[0].free_vars();
      out.erase(bound());
      break;
  }
  return out;
}

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Eq: return lhs().to_string() + "=" + rhs().to_string();
    case Kind::Le: return lhs().to_string() + "<=" + rhs().to_string();
    case Kind::Lt: return lhs().to_string() + "<" + rhs().to_string();
    case Kind::SeqAt: return "x[" + lhs().to_string() + "]=" + std::to_string(symbol());
    case Kind::SeqEq: return "x[" + lhs().to_string() + "]=x[" + rhs().to_string() + "]";
    case Kind::Embedded: {
      std::string s = "<dfa";
      for (const auto& v : embedded().vars()) s += " " + v;
      return s + ">";
    }
    case Kind::Not: return "~(" + kids()[0].to_string() + ")";
    case Kind::And: return "(" + kids()[0].to_string() + " & " + kids()[1].to_string() + ")";
    case Kind::Or: return "(" + kids()[0].to_string() + " | " + kids()[1].to_string() + ")";
    case Kind::Implies:
      return "(" + kids()[0].to_string() + " => " + kids()[1].to_string() + ")";
    case Kind::Exists: return "E " + bound() + ": (" + kids()[0].to_string() + ")";
    case Kind::Forall: return "A " + bound() + ": (" + kids()[0].to_string() + ")";
  }
  return {};
}

Formula operator&&(Formula a, Formula b) {
  if (a.kind() == Formula::Kind::True) return b;
  if (b.kind() == Formula::Kind::True) return a;
  return Formula::binary(Formula::Kind::And, std::move(a), std::move(b));
}

Formula operator||(Formula a, Formula b) {
  if (a.kind() == Formula::Kind::False) return b;
  if (b.kind() == Formula::Kind::False) return a;
  return Formula::binary(Formula::Kind::Or, std::move(a), std::move(b));
}

Formula operator!(Formula a) { return Formula::unary(Formula::Kind::Not, std::move(a)); }

Formula implies(Formula a, Formula b) {
  return Formula::binary(Formula::Kind::Implies, std::move(a), std::move(b));
}

Formula iff(Formula a, Formula b) { return implies(a, b) && implies(b, a); }

Formula exists(const std::string& v, Formula body) {
  return Formula::quantify(Formula::Kind::Exists, v, std::move(body));
}

Formula exists(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

Formula forall(const std::string& v, Formula body) {
  return Formula::quantify(Formula::Kind::Forall, v, std::move(body));
}

Formula forall(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula eq(Term a, Term b) { return Formula::atom(Formula::Kind::Eq, std::move(a), std::move(b)); }
Formula le(Term a, Term b) { return Formula::atom(Formula::Kind::Le, std::move(a), std::move(b)); }
Formula lt(Term a, Term b) { return Formula::atom(Formula::Kind::Lt, std::move(a), std::move(b)); }
Formula ge(Term a, Term b) { return le(std::move(b), std::move(a)); }
Formula gt(Term a, Term b) { return lt(std::move(b), std::move(a)); }
Formula seq_at(Term position, Symbol s) { return Formula::seq_at(std::move(position), s); }
Formula seq_eq(Term a, Term b) { return Formula::seq_eq(std::move(a), std::move(b)); }

Formula conj(const std::vector<Formula>& fs) {
  Formula out = Formula::make_true();
  for (const auto& f : fs) out = out && f;
  return out;
}

Formula disj(const std::vector<Formula>& fs) {
  Formula out = Formula::make_false();
  for (const auto& f : fs) out = out || f;
  return out;
}

std::string fresh_var(const std::string& hint) {
  static std::atomic<unsigned long> counter{0};
  return hint + "#" + std::to_string(counter.fetch_add(1));
}

Formula factoreq(const Term& i, const Term& j, const Term& n) {
  const auto t = fresh_var("t");
  return forall(t, implies(lt(var(t), n), seq_eq(i + var(t), j + var(t))));
}

Formula period_f(const Term& i, const Term& n, const Term& p) {
  const auto t = fresh_var("t");
  return forall(t, implies(lt(var(t) + p, n), seq_eq(i + var(t), i + var(t) + p)));
}

Formula match_f(const Term& i, const Term& j, const Term& m, const Term& r) {
  return factoreq(i, j, r) && period_f(j, m, r);
}

Formula earliestfac(const Term& i, const Term& j, const Term& n) {
  const auto t = fresh_var("t");
  return factoreq(i, j, n) && forall(t, implies(factoreq(var(t), j, n), ge(var(t), i)));
}

Formula prefx(const Term& i, const Term& j, const Term& x, const Term& y) {
  return le(j, y) && factoreq(i, x, j);
}

Formula suffx(const Term& i, const Term& j, const Term& x, const Term& y) {
  const auto e = fresh_var("e");
  return le(j, y) && exists(e, eq(var(e) + j, x + y) && factoreq(i, var(e), j));
}

Formula prim(const Term& i, const Term& n) {
  const auto j = fresh_var("j");
  const auto e = fresh_var("e");
  const Term J = var(j);
  const Term E = var(e);
  return !exists(j, exists(e, gt(J, 0) && lt(J, n) && eq(E + J, n) &&
                                  factoreq(i, i + J, E) && factoreq(i, i + E, J)));
}

Formula word_at(const Term& pos, const Word& w) {
  Formula out = Formula::make_true();
  for (std::size_t t = 0; t < w.size(); ++t) out = out && seq_at(pos + Term(t), w[t]);
  return out;
}

Formula unbounded_powers_formula(const Term& i, const Term& n, const Term& p) {
  const auto j = fresh_var("j");
  return ge(p, 1) && exists(j, earliestfac(i, var(j), p) && period_f(var(j), n, p));
}

Formula unbounded_exponent_formula(const Term& i, const Term& r) {
  // match_f is antitone in its length argument, so "for every m some longer
  // match exists" is the same as "every length has a match".
  const auto m = fresh_var("m");
  const auto j = fresh_var("j");
  return forall(m, exists(j, match_f(i, var(j), var(m), r)));
}

Formula unbounded_primitive_formula(const Term& i, const Term& p) {
  const auto m = fresh_var("m");
  const auto j = fresh_var("j");
  const auto n = fresh_var("n");
  return ge(p, 1) && prim(i, p) &&
         forall(m, exists(j, exists(n, gt(var(n), var(m)) && earliestfac(i, var(j), p) &&
                                           period_f(var(j), var(n), p))));
}

Formula factor_of_power_formula(const Word& w, const Term& j, const Term& m) {
  if (w.empty()) throw Error("empty-word", "factor_of_power_formula: empty word");
  const Natural d = w.size();
  std::vector<Formula> phases;
  for (Natural phi = 0; phi < d; ++phi) {
    const auto t = fresh_var("t");
    std::vector<Formula> letters;
    for (Natural s = 0; s < d; ++s) {
      const auto q = fresh_var("q");
      letters.push_back(implies(exists(q, eq(var(t) + Term(phi), d * var(q) + Term(s))),
                                seq_at(j + var(t), w[s])));
    }
    phases.push_back(forall(t, implies(lt(var(t), m), conj(letters))));
  }
  return disj(phases);
}

Formula setup_formula(Natural i, Natural d, Natural L, Natural N) {
  if (L < 1 || d < 1) throw Error("formula", "setup_formula needs L >= 1 and d >= 1");
  const Term r = var("r");
  const Term I(i);
  const Term D(d);
  std::vector<std::string> ps;
  for (Natural t = 0; t < L; ++t) ps.push_back(fresh_var("p"));

  std::vector<Formula> blocks;
  Term exps;  // p_1 + ... + p_{t-1}
  for (Natural t = 1; t <= L; ++t) {
    const Term start = (t - 1) * r + d * exps;
    if (t >= 2) blocks.push_back(factoreq(Term(0), start, r));
    const Term pt = var(ps[t - 1]);
    const Term run = start + r;
    blocks.push_back(period_f(run, d * pt, D) && (eq(pt, 0) || factoreq(I, run, D)));
    exps = exps + pt;
  }
  return ge(r, std::max<Natural>(N, 1)) && !prefx(I, D, Term(0), r) &&
         !suffx(I, D, Term(0), r) && exists(ps, conj(blocks));
}

Formula setup2_constraints(const PowerFreeness& pf) {
  const Term i = var("i");
  const Term j = var("j");
  const Term r = var("r");
  const Term s = var("s");
  std::vector<Formula> parts = {gt(r, 0), gt(s, 0),
                                !prefx(i, r, j, s), !suffx(i, r, j, s),
                                !prefx(j, s, i, r), !suffx(j, s, i, r)};
  if (pf.p) {
    const auto a = fresh_var("j");
    const auto b = fresh_var("j");
    parts.push_back(!exists(a, factoreq(i, var(a), r) && period_f(var(a), *pf.p * r, r)));
    parts.push_back(!exists(b, factoreq(j, var(b), s) && period_f(var(b), *pf.p * s, s)));
  } else {
    parts.push_back(!unbounded_exponent_formula(i, r));
    parts.push_back(!unbounded_exponent_formula(j, s));
  }
  return conj(parts);
}

Formula setup2_layout(const FactorizationPattern& pattern) {
  if (pattern.size() < 2) throw Error("pattern", "setup2 needs a pattern of length >= 2");
  const Term r = var("r");
  const Term s = var("s");
  std::vector<Formula> parts;
  Natural zeros = 0;
  Natural ones = 0;
  for (auto bit : pattern.bits()) {
    const Term pos = zeros * r + ones * s;
    if (bit == 0) {
      parts.push_back(factoreq(var("i"), pos, r));
      ++zeros;
    } else {
      parts.push_back(factoreq(var("j"), pos, s));
      ++ones;
    }
  }
  return conj(parts);
}

Formula setup2_body(const FactorizationPattern& pattern, const PowerFreeness& pf) {
  return setup2_layout(pattern) && setup2_constraints(pf);
}

Formula setup2_formula(const FactorizationPattern& pattern, const PowerFreeness& pf) {
  return exists(std::vector<std::string>{"i", "j", "r", "s"}, setup2_body(pattern, pf));
}

}  // namespace autorank
