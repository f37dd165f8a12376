#include "autorank/parser.hpp"

#include <cctype>

namespace autorank {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Formula parse() {
    Formula f = formula();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse", "column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::optional<std::string> peek_ident() {
    skip();
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      return std::nullopt;
    }
    std::size_t j = pos_;
    while (j < s_.size() && ident_char(s_[j])) ++j;
    return std::string(s_.substr(pos_, j - pos_));
  }

  std::string ident() {
    auto id = peek_ident();
    if (!id) fail("expected an identifier");
    pos_ += id->size();
    return *id;
  }

  std::optional<Natural> number() {
    skip();
    std::size_t j = pos_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == pos_) return std::nullopt;
    if (j - pos_ > 18) fail("number too large");
    const Natural v = std::stoull(std::string(s_.substr(pos_, j - pos_)));
    pos_ = j;
    return v;
  }

  Formula formula() {
    Formula f = implication();
    while (accept("<=>")) f = iff(f, implication());
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (peek("=>")) {
      pos_ += 2;
      return implies(f, implication());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = f || conjunction();
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = f && unary();
    return f;
  }

  Formula unary() {
    if (accept("~")) return !unary();
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    auto id = peek_ident();
    if (id && (*id == "E" || *id == "A")) {
      pos_ += 1;
      const bool ex = *id == "E";
      std::vector<std::string> vars = {ident()};
      while (accept(",")) vars.push_back(ident());
      expect(":");
      Formula body = formula();
      return ex ? exists(vars, body) : forall(vars, body);
    }
    if (id && *id == "true") {
      pos_ += 4;
      return Formula::make_true();
    }
    if (id && *id == "false") {
      pos_ += 5;
      return Formula::make_false();
    }
    if (id && is_macro(*id)) return macro();
    return atom();
  }

  static bool is_macro(const std::string& id) {
    return id == "factoreq" || id == "period" || id == "match" || id == "earliestfac" ||
           id == "prefx" || id == "suffx" || id == "prim" || id == "unbounded";
  }

  Formula macro() {
    const std::size_t at = pos_;
    const std::string name = ident();
    expect("(");
    std::vector<Term> args = {term()};
    while (accept(",")) args.push_back(term());
    expect(")");
    auto need = [&](std::size_t n) {
      if (args.size() != n) {
        pos_ = at;
        fail(name + " takes " + std::to_string(n) + " arguments");
      }
    };
    if (name == "factoreq") { need(3); return factoreq(args[0], args[1], args[2]); }
    if (name == "period") { need(3); return period_f(args[0], args[1], args[2]); }
    if (name == "match") { need(4); return match_f(args[0], args[1], args[2], args[3]); }
    if (name == "earliestfac") { need(3); return earliestfac(args[0], args[1], args[2]); }
    if (name == "prefx") { need(4); return prefx(args[0], args[1], args[2], args[3]); }
    if (name == "suffx") { need(4); return suffx(args[0], args[1], args[2], args[3]); }
    if (name == "prim") { need(2); return prim(args[0], args[1]); }
    need(2);
    return unbounded_exponent_formula(args[0], args[1]);
  }

  bool seq_ahead() {
    skip();
    if (!peek("x")) return false;
    std::size_t j = pos_ + 1;
    while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
    return j < s_.size() && s_[j] == '[';
  }

  Term seq_index() {
    expect("x");
    expect("[");
    Term t = term();
    expect("]");
    return t;
  }

  Formula atom() {
    if (seq_ahead()) {
      Term a = seq_index();
      bool negate = false;
      if (accept("!=")) {
        negate = true;
      } else {
        expect("=");
      }
      Formula f = Formula::make_true();
      if (seq_ahead()) {
        f = seq_eq(a, seq_index());
      } else if (auto n = number()) {
        f = seq_at(a, static_cast<Symbol>(*n));
      } else {
        fail("expected a symbol or x[...]");
      }
      return negate ? !f : f;
    }
    Term a = term();
    if (accept("<=")) return le(a, term());
    if (accept(">=")) return ge(a, term());
    if (accept("!=")) return !eq(a, term());
    if (accept("<")) return lt(a, term());
    if (accept(">")) return gt(a, term());
    if (accept("=")) return eq(a, term());
    fail("expected a relation");
  }

  Term summand() {
    if (auto n = number()) {
      if (accept("*")) return *n * var(ident());
      if (auto id = peek_ident(); id && !seq_ahead()) {
        pos_ += id->size();
        return *n * var(*id);
      }
      return Term(*n);
    }
    auto id = peek_ident();
    if (!id || *id == "E" || *id == "A" || is_macro(*id)) fail("expected a term");
    pos_ += id->size();
    return var(*id);
  }

  Term term() {
    Term t = summand();
    while (accept("+")) t = t + summand();
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace autorank
