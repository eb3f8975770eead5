// ligforge command-line front end. Talks to the library only through the C API.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ligforge/ligforge.h"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
};

void check(lf_status s) {
  if (s != LF_OK) throw Failure{lf_last_error()};
}

// Owns a string returned by the C API.
class Text {
public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { lf_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

private:
  char* p_ = nullptr;
};

struct GrammarHandle {
  lf_grammar* g = nullptr;
  ~GrammarHandle() { lf_grammar_free(g); }
};

struct ParseHandle {
  lf_parse* p = nullptr;
  ~ParseHandle() { lf_parse_free(p); }
};

bool color_enabled() {
  const char* env = std::getenv("LIGFORGE_COLOR");
  if (env != nullptr && std::string(env) == "0") return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::string styled(const std::string& s, const char* code) {
  return color_enabled() ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
}

std::string heading(const std::string& s) { return styled(s, "1"); }
std::string verdict(bool yes, const std::string& s) { return styled(s, yes ? "32" : "31"); }

struct Common {
  std::string grammar;
  bool relaxed = false;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  bool json = false;
  bool dot = false;

  lf_format fmt() const {
    if (json || format == "json") return LF_FORMAT_JSON;
    if (dot || format == "dot") return LF_FORMAT_DOT;
    return LF_FORMAT_TEXT;
  }

  void load(GrammarHandle& h) const {
    if (!grammar.empty()) {
      check(lf_grammar_load(grammar.c_str(), relaxed, &h.g));
    } else if (seed) {
      check(lf_grammar_random(*seed, relaxed, &h.g));
    } else {
      throw Failure{"a grammar file or --seed is required"};
    }
  }
};

void add_common(CLI::App* cmd, Common& c, bool grammar_required) {
  auto* g = cmd->add_option("grammar", c.grammar, "Grammar file");
  if (grammar_required) g->required();
  cmd->add_flag("--relaxed", c.relaxed, "Normalize productions outside normal form");
  cmd->add_option("--seed", c.seed, "Use the random grammar with this seed when no file is given");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  cmd->add_flag("--json", c.json, "Same as --format json");
  cmd->add_flag("--dot", c.dot, "Same as --format dot");
}

nlohmann::json as_json(Text& t) { return nlohmann::json::parse(t.str()); }

int run_check(const Common& c) {
  GrammarHandle h;
  c.load(h);
  int empty = 0;
  check(lf_grammar_is_empty(h.g, &empty));
  Text rel, ldg;
  const lf_format f = c.fmt() == LF_FORMAT_DOT ? LF_FORMAT_TEXT : c.fmt();
  check(lf_grammar_relations(h.g, f, rel.out()));
  check(lf_grammar_ldg(h.g, 1, c.fmt(), ldg.out()));
  if (c.fmt() == LF_FORMAT_JSON) {
    nlohmann::json doc{{"relations", as_json(rel)}, {"ldg", as_json(ldg)}, {"empty", empty != 0}};
    std::cout << doc.dump(2) << '\n';
  } else if (c.fmt() == LF_FORMAT_DOT) {
    std::cout << ldg.str();
  } else {
    if (c.relaxed) {
      Text normal;
      check(lf_grammar_render(h.g, 1, normal.out()));
      std::cout << heading("normalized grammar:") << '\n' << normal.str() << '\n';
    }
    std::cout << heading("relations:") << '\n' << rel.str() << '\n';
    std::cout << heading("derivation grammar:") << '\n' << ldg.str() << '\n';
    std::cout << "language: " << verdict(!empty, empty ? "empty" : "nonempty") << '\n';
  }
  return empty ? kExitNo : kExitYes;
}

struct ParseArgs {
  std::string input;
  bool chars = false;
  bool no_filter = false;
};

void add_input(CLI::App* cmd, ParseArgs& a, bool required) {
  auto* o = cmd->add_option("input", a.input, "Input tokens (quote the whole string)");
  if (required) o->required();
  cmd->add_flag("--chars", a.chars, "Split the input into characters instead of whitespace-separated tokens");
  cmd->add_flag("--no-static-filter", a.no_filter, "Do not prune with the grammar's useless relation patterns");
}

void run_parse_of(const Common& c, const ParseArgs& a, GrammarHandle& h, ParseHandle& p) {
  c.load(h);
  check(lf_parse_run(h.g, a.input.c_str(), a.chars, a.no_filter ? 0 : 1, &p.p));
}

struct EnumArgs {
  std::optional<std::size_t> enumerate;
  std::size_t max_len = 64;
  bool count = false;
  bool trees = false;
  bool report = false;
};

int run_parse(const Common& c, const ParseArgs& a, const EnumArgs& e) {
  GrammarHandle h;
  ParseHandle p;
  run_parse_of(c, a, h, p);
  int member = 0;
  check(lf_parse_member(p.p, &member));
  Text count, derivations, report;
  if (e.count) check(lf_parse_count(p.p, count.out()));
  if (e.enumerate) {
    const lf_format f = c.fmt() == LF_FORMAT_DOT && !e.trees ? LF_FORMAT_TEXT : c.fmt();
    check(lf_parse_enumerate(p.p, *e.enumerate, e.max_len, e.trees, f, derivations.out()));
  }
  if (c.fmt() == LF_FORMAT_JSON) {
    check(lf_parse_report(p.p, e.count, LF_FORMAT_JSON, report.out()));
    nlohmann::json doc{{"member", member != 0}, {"report", as_json(report)}};
    if (e.count) doc["count"] = count.str();
    if (e.enumerate) doc["derivations"] = as_json(derivations);
    std::cout << doc.dump(2) << '\n';
  } else if (c.fmt() == LF_FORMAT_DOT) {
    if (e.enumerate && e.trees) {
      std::cout << derivations.str();
    } else {
      Text ldg;
      check(lf_parse_ldg(p.p, 1, LF_FORMAT_DOT, ldg.out()));
      std::cout << ldg.str();
    }
  } else {
    std::cout << "member: " << verdict(member != 0, member ? "yes" : "no") << '\n';
    if (e.count) std::cout << "count: " << count.str() << '\n';
    if (e.report) {
      check(lf_parse_report(p.p, 0, LF_FORMAT_TEXT, report.out()));
      std::cout << report.str();
    }
    if (e.enumerate) std::cout << heading("derivations:") << '\n' << derivations.str();
  }
  return member ? kExitYes : kExitNo;
}

int run_relations(const Common& c, const ParseArgs& a) {
  GrammarHandle h;
  Text out;
  if (a.input.empty() && !a.chars) {
    c.load(h);
    check(lf_grammar_relations(h.g, c.fmt(), out.out()));
  } else {
    ParseHandle p;
    run_parse_of(c, a, h, p);
    check(lf_parse_relations(p.p, c.fmt(), out.out()));
  }
  std::cout << out.str();
  return kExitYes;
}

int run_forest(const Common& c, const ParseArgs& a, bool liged) {
  GrammarHandle h;
  ParseHandle p;
  run_parse_of(c, a, h, p);
  Text out;
  check(lf_parse_forest(p.p, liged, c.fmt(), out.out()));
  std::cout << out.str();
  int member = 0;
  check(lf_parse_member(p.p, &member));
  return member ? kExitYes : kExitNo;
}

int run_ldg(const Common& c, const ParseArgs& a, bool generated) {
  GrammarHandle h;
  Text out;
  if (a.input.empty() && !a.chars) {
    c.load(h);
    check(lf_grammar_ldg(h.g, generated ? 0 : 1, c.fmt(), out.out()));
    std::cout << out.str();
    int empty = 0;
    check(lf_grammar_is_empty(h.g, &empty));
    return empty ? kExitNo : kExitYes;
  }
  ParseHandle p;
  run_parse_of(c, a, h, p);
  check(lf_parse_ldg(p.p, generated ? 0 : 1, c.fmt(), out.out()));
  std::cout << out.str();
  int member = 0;
  check(lf_parse_member(p.p, &member));
  return member ? kExitYes : kExitNo;
}

int run_oracle(const Common& c, const ParseArgs& a, std::size_t max_nodes, std::size_t max_stack) {
  GrammarHandle h;
  c.load(h);
  Text out;
  std::size_t trees = 0;
  check(lf_oracle(h.g, a.input.c_str(), a.chars, max_nodes, max_stack, c.fmt(), &trees, out.out()));
  std::cout << out.str();
  return trees > 0 ? kExitYes : kExitNo;
}

int run_bench(const Common& c, const std::string& tmpl, std::size_t from, std::size_t to, std::size_t step,
              bool no_filter) {
  GrammarHandle h;
  c.load(h);
  Text out;
  check(lf_bench(h.g, tmpl.c_str(), from, to, step, no_filter ? 0 : 1, out.out()));
  std::cout << out.str();
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear indexed grammar recognizer and derivation extractor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ligforge 1.0.0");

  Common common;
  ParseArgs pa;
  EnumArgs ea;
  bool liged = false;
  bool generated = false;
  std::size_t max_nodes = 0;
  std::size_t max_stack = 0;
  std::string tmpl;
  std::size_t from = 0, to = 0, step = 1;
  std::size_t fuzz_count = 10, fuzz_input = 4, fuzz_bound = 8;
  bool fuzz_print = false;

  auto* check_cmd = app.add_subcommand("check", "Validate a grammar, print its relations and derivation grammar");
  add_common(check_cmd, common, false);

  auto* parse_cmd = app.add_subcommand("parse", "Recognize an input and extract its derivations");
  add_common(parse_cmd, common, true);
  add_input(parse_cmd, pa, true);
  parse_cmd->add_option("--enumerate", ea.enumerate, "Print the first K derivations, shortest first");
  parse_cmd->add_option("--max-len", ea.max_len, "Longest derivation to enumerate")->capture_default_str();
  parse_cmd->add_flag("--count", ea.count, "Print the number of derivations");
  parse_cmd->add_flag("--trees", ea.trees, "Print the tree of every enumerated derivation");
  parse_cmd->add_flag("--report", ea.report, "Print structure sizes");

  auto* rel_cmd = app.add_subcommand("relations", "Print the relation families of a grammar or of its forest");
  add_common(rel_cmd, common, false);
  add_input(rel_cmd, pa, false);

  auto* forest_cmd = app.add_subcommand("forest", "Print the shared parse forest of an input");
  add_common(forest_cmd, common, true);
  add_input(forest_cmd, pa, true);
  forest_cmd->add_flag("--liged", liged, "Show the forest with stack schemas");

  auto* ldg_cmd = app.add_subcommand("ldg", "Print the derivation grammar of a grammar or of an input");
  add_common(ldg_cmd, common, false);
  add_input(ldg_cmd, pa, false);
  ldg_cmd->add_flag("--generated", generated, "Show the grammar before reduction");

  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate trees by brute force within explicit bounds");
  add_common(oracle_cmd, common, true);
  add_input(oracle_cmd, pa, true);
  oracle_cmd->add_option("--max-nodes", max_nodes, "Largest tree size")->required()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-stack", max_stack, "Deepest stack")->required()->check(CLI::PositiveNumber);

  auto* bench_cmd = app.add_subcommand("bench", "CSV of structure sizes and timings over input lengths");
  add_common(bench_cmd, common, true);
  bench_cmd->add_option("template", tmpl, "Input template; t^n stands for n copies of token t")->required();
  bench_cmd->add_option("--from", from, "Smallest n")->capture_default_str();
  bench_cmd->add_option("--to", to, "Largest n")->required();
  bench_cmd->add_option("--step", step, "Increment of n")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--no-static-filter", pa.no_filter, "Do not prune with useless relation patterns");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Cross-check random grammars against the brute-force oracle");
  fuzz_cmd->add_option("--seed", common.seed, "First seed (default 1)");
  fuzz_cmd->add_option("--count", fuzz_count, "Number of grammars")->capture_default_str();
  fuzz_cmd->add_option("--max-input", fuzz_input, "Longest input")->capture_default_str();
  fuzz_cmd->add_option("--bound", fuzz_bound, "Derivation length bound")->capture_default_str();
  fuzz_cmd->add_flag("--relaxed", common.relaxed, "Draw grammars outside normal form");
  fuzz_cmd->add_flag("--print", fuzz_print, "Print every grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check_cmd) return run_check(common);
    if (*parse_cmd) return run_parse(common, pa, ea);
    if (*rel_cmd) return run_relations(common, pa);
    if (*forest_cmd) return run_forest(common, pa, liged);
    if (*ldg_cmd) return run_ldg(common, pa, generated);
    if (*oracle_cmd) return run_oracle(common, pa, max_nodes, max_stack);
    if (*bench_cmd) return run_bench(common, tmpl, from, to, step, pa.no_filter);
    if (*fuzz_cmd) {
      Text out;
      std::size_t failures = 0;
      check(lf_fuzz(common.seed.value_or(1), fuzz_count, common.relaxed, fuzz_input, fuzz_bound, fuzz_print, &failures,
                    out.out()));
      std::cout << out.str();
      return failures == 0 ? kExitYes : kExitNo;
    }
  } catch (const Failure& f) {
    std::cerr << "ligforge: " << f.message << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "ligforge: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
