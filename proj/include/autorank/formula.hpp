#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autorank/dfa.hpp"
#include "autorank/word.hpp"

namespace autorank {

/// Linear term sum c_v * v + constant with natural coefficients. Var, Const,
/// Sum and constant multiples all normalize to this form.
class Term {
 public:
  Term() = default;
  Term(Natural constant) : constant_(constant) {}  // NOLINT: implicit on purpose
  static Term var(const std::string& name);

  const std::map<std::string, Natural>& coeffs() const noexcept { return coeffs_; }
  Natural constant() const noexcept { return constant_; }
  bool is_constant() const noexcept { return coeffs_.empty(); }
  /// The variable name when the term is exactly one variable.
  std::optional<std::string> as_var() const;
  bool mentions(const std::string& v) const { return coeffs_.count(v) != 0; }
  Term without(const std::string& v) const;
  Natural coeff(const std::string& v) const;
  Term rename(const std::string& from, const std::string& to) const;
  std::optional<Natural> eval(const std::map<std::string, Natural>& env) const;

  friend Term operator+(Term a, const Term& b);
  friend Term operator*(Natural c, Term t);
  friend bool operator==(const Term&, const Term&) = default;

  std::string to_string() const;

 private:
  std::map<std::string, Natural> coeffs_;
  Natural constant_ = 0;
};

Term var(const std::string& name);

class Formula {
 public:
  enum class Kind {
    True, False, Eq, Le, Lt, SeqAt, SeqEq, Embedded,
    Not, And, Or, Implies, Exists, Forall
  };

  Kind kind() const { return node_->kind; }
  const Term& lhs() const { return node_->lhs; }
  const Term& rhs() const { return node_->rhs; }
  Symbol symbol() const { return node_->symbol; }
  const std::vector<Formula>& kids() const { return node_->kids; }
  const std::string& bound() const { return node_->bound; }
  const Dfa& embedded() const { return *node_->dfa; }

  std::set<std::string> free_vars() const;
  std::string to_string() const;

  static Formula make_true();
  static Formula make_false();
  static Formula atom(Kind k, Term lhs, Term rhs);
  static Formula seq_at(Term position, Symbol s);
  static Formula seq_eq(Term a, Term b);
  /// A precompiled automaton used as an atom over its track variables.
  static Formula embed(Dfa dfa);
  static Formula unary(Kind k, Formula f);
  static Formula binary(Kind k, Formula a, Formula b);
  static Formula quantify(Kind k, const std::string& var, Formula body);

 private:
  struct Node {
    Kind kind = Kind::True;
    Term lhs, rhs;
    Symbol symbol = 0;
    std::vector<Formula> kids;
    std::string bound;
    std::shared_ptr<const Dfa> dfa;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator&&(Formula a, Formula b);
Formula operator||(Formula a, Formula b);
Formula operator!(Formula a);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(const std::string& v, Formula body);
Formula exists(const std::vector<std::string>& vs, Formula body);
Formula forall(const std::string& v, Formula body);
Formula forall(const std::vector<std::string>& vs, Formula body);

Formula eq(Term a, Term b);
Formula le(Term a, Term b);
Formula lt(Term a, Term b);
Formula ge(Term a, Term b);
Formula gt(Term a, Term b);
Formula seq_at(Term position, Symbol s);
Formula seq_eq(Term a, Term b);
Formula conj(const std::vector<Formula>& fs);
Formula disj(const std::vector<Formula>& fs);

/// Fresh bound-variable name; never collides with parser identifiers.
std::string fresh_var(const std::string& hint = "t");

// Named predicates, all with half-open length semantics.

/// x[i..i+n) = x[j..j+n)
Formula factoreq(const Term& i, const Term& j, const Term& n);
/// x[i..i+n) has period p
Formula period_f(const Term& i, const Term& n, const Term& p);
/// x[j..j+r) = x[i..i+r) and x[j..j+m) has period r
Formula match_f(const Term& i, const Term& j, const Term& m, const Term& r);
/// x[j..j+n) = x[i..i+n) and i is the first occurrence of that factor
Formula earliestfac(const Term& i, const Term& j, const Term& n);
/// x[i..i+j) is a prefix of x[x..x+y)
Formula prefx(const Term& i, const Term& j, const Term& x, const Term& y);
/// x[i..i+j) is a suffix of x[x..x+y)
Formula suffx(const Term& i, const Term& j, const Term& x, const Term& y);
/// x[i..i+n) is primitive
Formula prim(const Term& i, const Term& n);
/// x[pos..pos+|w|) = w
Formula word_at(const Term& pos, const Word& w);

/// phi(i, n, p): the first occurrence of x[i..i+p) starts a factor of
/// length n with period p somewhere; p >= 1.
Formula unbounded_powers_formula(const Term& i, const Term& n, const Term& p);
/// x[i..i+p) is primitive, first occurring at i, with unbounded exponent.
Formula unbounded_primitive_formula(const Term& i, const Term& p);
/// x[i..i+r) occurs with arbitrarily large exponent.
Formula unbounded_exponent_formula(const Term& i, const Term& r);
/// x[j..j+m) is a factor of w^omega (fixed-modulus decomposition).
Formula factor_of_power_formula(const Word& w, const Term& j, const Term& m);

/// Free variable r: v = x[0..r) with r >= N, u = x[i..i+d) neither prefix nor
/// suffix of v, and some p_1..p_L with v u^p_1 v u^p_2 ... v u^p_L a prefix.
Formula setup_formula(Natural i, Natural d, Natural L, Natural N);

/// How setup2 states that u_0^p and u_1^p are not factors.
struct PowerFreeness {
  /// Literal exponent; when empty, "not of unbounded exponent" is used
  /// instead, which is equivalent once p is the dichotomy bound.
  std::optional<Natural> p;
};
/// Pattern-independent part of setup2 over free i, j, r, s: both words
/// nonempty, neither a prefix nor a suffix of the other, neither a p-th power
/// factor.
Formula setup2_constraints(const PowerFreeness& pf);
/// u_{i_0} ... u_{i_{m-1}} is a prefix of x, over free i, j, r, s.
Formula setup2_layout(const FactorizationPattern& pattern);
/// Body over free i, j, r, s: u_0 = x[i..i+r), u_1 = x[j..j+s).
Formula setup2_body(const FactorizationPattern& pattern, const PowerFreeness& pf);
Formula setup2_formula(const FactorizationPattern& pattern, const PowerFreeness& pf);

}  // namespace autorank
