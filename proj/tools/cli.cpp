#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "autorank/analysis.hpp"
#include "autorank/fixtures.hpp"
#include "autorank/oracle.hpp"
#include "autorank/parser.hpp"
#include "autorank/rank.hpp"

namespace autorank {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string fixture;
  std::string input;
  std::string format = "human";
  std::size_t budget_states = Budget{}.max_automaton_states;
  std::uint64_t budget_patterns = Budget{}.max_patterns;
  double time_limit = 600;
  std::size_t prefix_len = 1u << 12;
  std::optional<Natural> assume_D;
  bool disable_fast_paths = false;
  bool timing = false;

  bool json() const { return format == "json"; }

  Dfao load() const {
    if (!fixture.empty() && !input.empty()) {
      throw Error("input", "give either --fixture or --input, not both");
    }
    if (!fixture.empty()) return load_fixture(fixture);
    if (!input.empty()) return load_dfao_file(input);
    throw Error("input", "no sequence given (use --fixture NAME or --input FILE)");
  }

  Limits limits() const {
    Limits l;
    l.max_states = budget_states;
    l.deadline = std::chrono::steady_clock::now() +
                 std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
    return l;
  }

  DecideOptions options() const {
    DecideOptions o;
    o.budget.max_automaton_states = budget_states;
    o.budget.max_patterns = budget_patterns;
    o.budget.wall_time = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
    o.assume_D = assume_D;
    o.disable_fast_paths = disable_fast_paths;
    return o;
  }
};

void add_input(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--fixture", cfg.fixture, "Built-in sequence name");
  cmd->add_option("--input", cfg.input, "DFAO text file");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}));
  cmd->add_option("--budget-states", cfg.budget_states, "Automaton state cap");
  cmd->add_option("--time-limit", cfg.time_limit, "Wall-clock limit in seconds");
}

// "N", "B^E", or "A..B" (half-open).
Natural parse_number(const std::string& s) {
  const auto caret = s.find('^');
  try {
    if (caret == std::string::npos) return std::stoull(s);
    const Natural base = std::stoull(s.substr(0, caret));
    const Natural e = std::stoull(s.substr(caret + 1));
    Natural out = 1;
    for (Natural i = 0; i < e; ++i) out *= base;
    return out;
  } catch (const std::logic_error&) {
    throw Error("input", "not a number: " + s);
  }
}

std::pair<Natural, Natural> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const Natural n = parse_number(s);
    return {n, n + 1};
  }
  return {parse_number(s.substr(0, dots)), parse_number(s.substr(dots + 2))};
}

std::string symbol_text(Symbol s) { return std::to_string(s); }

ordered_json words_json(const std::vector<Word>& ws) {
  ordered_json a = ordered_json::array();
  for (const auto& w : ws) a.push_back(w.to_string());
  return a;
}

std::string big(const BigInt& b) { return b.str(); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank decisions for automatic sequences"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* eval = app.add_subcommand("eval", "Print sequence terms");
  add_input(eval, cfg);
  std::string eval_n = "0..32";
  eval->add_option("--n", eval_n, "Index N or half-open range A..B (B^E allowed)");

  auto* analyze = app.add_subcommand("analyze", "Constants, unbounded factors and periodicity");
  add_input(analyze, cfg);

  auto* factors = app.add_subcommand("factors", "Distinct factors of a given length");
  add_input(factors, cfg);
  Natural factor_len = 2;
  std::size_t factor_limit = 4096;
  factors->add_option("--length", factor_len, "Factor length");
  factors->add_option("--limit", factor_limit, "Maximum number of factors");

  auto* maxexp = app.add_subcommand("max-exponent", "Maximal exponent of a word");
  add_input(maxexp, cfg);
  std::string word;
  maxexp->add_option("--word", word, "Word (digits or comma-separated symbols)")->required();

  auto* periodic = app.add_subcommand("periodic", "Pure and ultimate periodicity");
  add_input(periodic, cfg);

  auto* rank2 = app.add_subcommand("rank2", "Decide rank one, two or at least three");
  add_input(rank2, cfg);
  rank2->add_option("--budget-patterns", cfg.budget_patterns, "Step-5 pattern cap");
  rank2->add_option("--assume-D", cfg.assume_D,
                    "Test only: replace the computed D (marks the verdict unsound)");
  rank2->add_flag("--disable-fast-paths", cfg.disable_fast_paths,
                  "Test only: skip the shortcuts taken before Step 1");
  rank2->add_flag("--timing", cfg.timing, "Include elapsed time in the output");

  auto* decide_cmd = app.add_subcommand("decide", "Evaluate a first-order formula");
  add_input(decide_cmd, cfg);
  std::string formula_text;
  decide_cmd->add_option("--formula", formula_text, "Formula text")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force evidence on prefixes");
  oracle_cmd->require_subcommand(1);
  auto* o_dp = oracle_cmd->add_subcommand("dp", "Factorize a prefix over {u,v}");
  auto* o_pairs = oracle_cmd->add_subcommand("pairs", "Search small covering pairs");
  auto* o_app = oracle_cmd->add_subcommand("appearance", "Brute appearance function A(n)");
  auto* o_comb = oracle_cmd->add_subcommand("comb-search", "Five-occurrence lemma search");
  auto* o_deps = oracle_cmd->add_subcommand("depsilon-search", "d = epsilon lemma search");
  std::string dp_u, dp_v;
  std::size_t max_total = 4, app_n = 8, max_uv = 4, max_w = 14;
  unsigned alphabet = 2;
  for (auto* c : {o_dp, o_pairs, o_app}) {
    add_input(c, cfg);
    c->add_option("--prefix-len", cfg.prefix_len, "Prefix length");
  }
  o_dp->add_option("--u", dp_u, "First word")->required();
  o_dp->add_option("--v", dp_v, "Second word")->required();
  o_pairs->add_option("--max-total", max_total, "Largest |u|+|v|");
  o_app->add_option("--n", app_n, "Largest factor length");
  std::size_t deps_uv = 5, deps_w = 6;
  const std::tuple<CLI::App*, std::size_t*, std::size_t*> searches[] = {
      {o_comb, &max_uv, &max_w}, {o_deps, &deps_uv, &deps_w}};
  for (auto [c, uv, w] : searches) {
    c->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"human", "json"}));
    c->add_option("--max-uv", *uv, "Largest |u|+|v|");
    c->add_option("--max-w", *w, "Largest pattern length");
    c->add_option("--alphabet", alphabet, "Alphabet size");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    ordered_json j;
    std::ostringstream text;

    if (eval->parsed()) {
      const Dfao m = cfg.load();
      const auto [lo, hi] = parse_range(eval_n);
      j["start"] = lo;
      j["values"] = ordered_json::array();
      for (Natural n = lo; n < hi; ++n) {
        const Symbol s = m(n);
        j["values"].push_back(s);
        text << n << ' ' << symbol_text(s) << '\n';
      }
    } else if (analyze->parsed()) {
      const Dfao m = cfg.load();
      const Limits lim = cfg.limits();
      const auto c = analysis_constants(m, lim);
      const auto w = unbounded_primitive_factors(m, lim);
      const auto pp = is_purely_periodic(m, lim);
      const auto up = is_ultimately_periodic(m, lim);
      const auto letters = occurring_letters(m, lim);
      j["base"] = m.base();
      j["states"] = m.num_states();
      j["letters"] = letters;
      j["constants"] = {{"C", big(c.C)},
                        {"kappa", big(c.kappa)},
                        {"B", big(c.B)},
                        {"p", big(c.p)},
                        {"appearance_states", c.appearance_states},
                        {"power_states", c.power_states}};
      ordered_json ws = ordered_json::array();
      for (const auto& f : w) {
        ws.push_back({{"word", f.word.to_string()}, {"first_position", f.first_position}});
      }
      j["unbounded_primitive_factors"] = ws;
      j["purely_periodic"] = pp ? ordered_json(*pp) : ordered_json(nullptr);
      j["ultimately_periodic"] =
          up ? ordered_json{{"preperiod", up->preperiod}, {"period", up->period}}
             : ordered_json(nullptr);
      text << "base: " << m.base() << "\nstates: " << m.num_states() << "\nletters:";
      for (auto a : letters) text << ' ' << a;
      text << "\nC: " << big(c.C) << " (appearance automaton " << c.appearance_states
           << " states)\nkappa: " << big(c.kappa) << "\nB = p: " << big(c.B)
           << " (power automaton " << c.power_states << " states)\nunbounded primitive factors:";
      if (w.empty()) text << " none";
      for (const auto& f : w) text << ' ' << f.word.to_string();
      text << "\nperiodicity: ";
      if (pp) {
        text << "purely periodic, period " << *pp;
      } else if (up) {
        text << "ultimately periodic, preperiod " << up->preperiod << ", period " << up->period;
      } else {
        text << "aperiodic";
      }
      text << '\n';
    } else if (factors->parsed()) {
      const Dfao m = cfg.load();
      const auto fs = distinct_factors(m, factor_len, factor_limit, cfg.limits());
      j["length"] = factor_len;
      j["count"] = fs.size();
      j["factors"] = words_json(fs);
      text << fs.size() << " factors of length " << factor_len << '\n';
      for (const auto& f : fs) text << f.to_string() << '\n';
    } else if (maxexp->parsed()) {
      const Dfao m = cfg.load();
      const auto e = max_exponent(m, Word::parse(word), cfg.limits());
      j["word"] = word;
      j["max_exponent"] = to_string(e);
      text << to_string(e) << '\n';
    } else if (periodic->parsed()) {
      const Dfao m = cfg.load();
      const Limits lim = cfg.limits();
      const auto pp = is_purely_periodic(m, lim);
      const auto up = is_ultimately_periodic(m, lim);
      j["purely_periodic"] = pp ? ordered_json(*pp) : ordered_json(nullptr);
      j["ultimately_periodic"] =
          up ? ordered_json{{"preperiod", up->preperiod}, {"period", up->period}}
             : ordered_json(nullptr);
      text << "purely periodic: " << (pp ? "yes, period " + std::to_string(*pp) : "no") << '\n'
           << "ultimately periodic: "
           << (up ? "yes, preperiod " + std::to_string(up->preperiod) + ", period " +
                        std::to_string(up->period)
                  : "no")
           << '\n';
    } else if (rank2->parsed()) {
      const Dfao m = cfg.load();
      const RankVerdict v = rank2_decide(m, cfg.options());
      if (cfg.json()) {
        out << verdict_to_json(v, 2, cfg.timing) << '\n';
      } else {
        out << verdict_to_text(v);
        if (cfg.timing) out << "elapsed: " << v.budget_report.elapsed_seconds << " s\n";
      }
      return 0;
    } else if (decide_cmd->parsed()) {
      const Dfao m = cfg.load();
      const Formula f = parse_formula(formula_text);
      const Limits lim = cfg.limits();
      const auto free = f.free_vars();
      if (free.empty()) {
        const bool t = decide(f, m, lim);
        j["result"] = t;
        text << (t ? "true" : "false") << '\n';
      } else {
        const Dfa a = compile(f, m, lim);
        const auto w = witness(f, m, lim);
        j["free_variables"] = free;
        j["states"] = num_states(a);
        j["satisfiable"] = w.has_value();
        if (w) j["witness"] = *w;
        text << "free variables:";
        for (const auto& v : free) text << ' ' << v;
        text << "\nautomaton states: " << num_states(a) << '\n';
        if (w) {
          text << "least solution:";
          for (const auto& [k, val] : *w) text << ' ' << k << '=' << val;
          text << '\n';
        } else {
          text << "unsatisfiable\n";
        }
      }
    } else if (o_dp->parsed()) {
      const Dfao m = cfg.load();
      const Word u = Word::parse(dp_u);
      const Word v = Word::parse(dp_v);
      const Word x = m.prefix(cfg.prefix_len);
      const std::size_t reach = oracle::dp_reach(x, u, v);
      const auto cuts = oracle::dp_factorize(x, u, v);
      j["kind"] = "evidence";
      j["prefix_len"] = cfg.prefix_len;
      j["factorizes"] = cuts.has_value();
      j["covered"] = reach;
      if (cuts) j["blocks"] = cuts->size() - 1;
      text << "evidence: prefix of length " << cfg.prefix_len << ' '
           << (cuts ? "factorizes" : "does not factorize") << " over {" << u.to_string() << ','
           << v.to_string() << "}; longest factorizable prefix " << reach << '\n';
    } else if (o_pairs->parsed()) {
      const Dfao m = cfg.load();
      const auto ps = oracle::search_pairs(oracle::PrefixView::of(m, cfg.prefix_len), max_total);
      j["kind"] = "evidence";
      j["pairs"] = ordered_json::array();
      text << "evidence: " << ps.size() << " pairs cover the prefix of length " << cfg.prefix_len
           << '\n';
      for (const auto& p : ps) {
        j["pairs"].push_back({p.u.to_string(), p.v.to_string()});
        text << p.u.to_string() << ' ' << p.v.to_string() << '\n';
      }
    } else if (o_app->parsed()) {
      const Dfao m = cfg.load();
      const auto view = oracle::PrefixView::of(m, cfg.prefix_len);
      j["kind"] = "evidence";
      j["A"] = ordered_json::array();
      text << "evidence: appearance function on a prefix of length " << cfg.prefix_len << '\n';
      for (std::size_t n = 1; n <= app_n; ++n) {
        const auto a = oracle::brute_appearance(view, n);
        j["A"].push_back(a);
        text << "A(" << n << ") = " << a << '\n';
      }
    } else if (o_comb->parsed()) {
      const auto r = oracle::search_comb_counterexample(max_uv, max_w, alphabet);
      j["kind"] = "evidence";
      j["counterexample"] = nullptr;
      if (r) {
        j["counterexample"] = {{"u", r->u.to_string()},
                               {"v", r->v.to_string()},
                               {"w", r->pattern},
                               {"z", r->z.to_string()}};
        text << "counterexample: u=" << r->u.to_string() << " v=" << r->v.to_string()
             << " w=" << r->pattern << " z=" << r->z.to_string() << '\n';
      } else {
        text << "no counterexample with |u|+|v| <= " << max_uv << ", |w| <= " << max_w << '\n';
      }
    } else if (o_deps->parsed()) {
      const auto r = oracle::search_depsilon_counterexample(deps_uv, deps_w, alphabet);
      j["kind"] = "evidence";
      j["counterexample"] = nullptr;
      if (r) {
        j["counterexample"] = {{"u", r->u.to_string()}, {"v", r->v.to_string()},
                               {"d", r->d.to_string()}, {"w", r->w},
                               {"w_prime", r->w_prime}};
        text << "counterexample: u=" << r->u.to_string() << " v=" << r->v.to_string()
             << " d=" << r->d.to_string() << " w=" << r->w << " w'=" << r->w_prime << '\n';
      } else {
        text << "no counterexample with |u|+|v| <= " << deps_uv << ", |w|,|w'| <= " << deps_w
             << '\n';
      }
    }
    if (cfg.json()) {
      out << j.dump(2) << '\n';
    } else {
      out << text.str();
    }
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error (" << e.code() << "): " << e.what() << '\n';
    return 1;
  }
}

}  // namespace autorank
