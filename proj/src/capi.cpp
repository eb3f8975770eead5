#include "ligforge/ligforge.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ligforge/fuzz.hpp"
#include "ligforge/oracle.hpp"
#include "ligforge/report.hpp"

using namespace ligforge;

struct lf_grammar {
  LigGrammar source;
  LigGrammar normal;
  std::vector<std::uint32_t> origin;  // empty unless normalized
  mutable std::optional<StaticFilter> filter;

  const StaticFilter& static_filter() const {
    if (!filter) filter = ligforge::static_filter(normal);
    return *filter;
  }
  Derivation to_source(Derivation d) const { return origin.empty() ? d : map_to_origin(d, origin); }
};

struct lf_parse {
  const lf_grammar* grammar = nullptr;
  Recognition rec;
};

namespace {

thread_local std::string last_error;

class ArgumentError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

template <typename F>
lf_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return LF_OK;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return LF_ERR_ARGUMENT;
  } catch (const IoError& e) {
    last_error = e.what();
    return LF_ERR_IO;
  } catch (const GrammarError& e) {
    last_error = e.what();
    return LF_ERR_SYNTAX;
  } catch (const NormalFormError& e) {
    last_error = e.what();
    return LF_ERR_NORMAL_FORM;
  } catch (const TokenError& e) {
    last_error = e.what();
    return LF_ERR_TOKEN;
  } catch (const DerivationError& e) {
    last_error = e.what();
    return LF_ERR_DERIVATION;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LF_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return LF_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

void emit(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (buf == nullptr) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

Format format_of(lf_format f) {
  switch (f) {
    case LF_FORMAT_TEXT: return Format::Text;
    case LF_FORMAT_JSON: return Format::Json;
    case LF_FORMAT_DOT: return Format::Dot;
  }
  throw ArgumentError("unknown output format");
}

lf_grammar* make_grammar(LigGrammar g, bool relaxed) {
  auto out = std::make_unique<lf_grammar>();
  if (relaxed && !validate_normal_form(g).empty()) {
    auto n = normalize(g);
    out->normal = std::move(n.grammar);
    out->origin = std::move(n.origin);
  } else {
    out->normal = g;
  }
  out->source = std::move(g);
  normal_view(out->normal);
  return out.release();
}

std::string names(const LigGrammar& g, const Derivation& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + g.productions[d[i]].name;
  return s;
}

nlohmann::json names_json(const LigGrammar& g, const Derivation& d) {
  nlohmann::json a = nlohmann::json::array();
  for (auto id : d) a.push_back(g.productions[id].name);
  return a;
}

std::vector<std::uint32_t> expand_template(const LigGrammar& g, std::string_view tmpl, std::size_t n) {
  std::istringstream in{std::string(tmpl)};
  std::string tok;
  std::string text;
  while (in >> tok) {
    std::size_t copies = 1;
    if (tok.size() > 2 && tok.ends_with("^n")) {
      tok.resize(tok.size() - 2);
      copies = n;
    }
    for (std::size_t i = 0; i < copies; ++i) text += tok + ' ';
  }
  return tokenize(g, text);
}

}  // namespace

extern "C" {

const char* lf_last_error(void) { return last_error.c_str(); }

void lf_string_free(char* s) { std::free(s); }

lf_status lf_grammar_load(const char* path, int relaxed, lf_grammar** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot read ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    *out = make_grammar(parse_grammar(text.str(), {relaxed != 0}), relaxed != 0);
  });
}

lf_status lf_grammar_parse(const char* text, int relaxed, lf_grammar** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = make_grammar(parse_grammar(text, {relaxed != 0}), relaxed != 0);
  });
}

lf_status lf_grammar_random(uint64_t seed, int relaxed, lf_grammar** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = make_grammar(relaxed ? random_relaxed_grammar(seed) : random_normal_grammar(seed), relaxed != 0);
  });
}

void lf_grammar_free(lf_grammar* g) { delete g; }

lf_status lf_grammar_render(const lf_grammar* g, int normalized, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    emit(render_grammar(normalized ? g->normal : g->source), out);
  });
}

lf_status lf_grammar_relations(const lf_grammar* g, lf_format format, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    emit(render_relations(g->normal, compute_relations(g->normal), format_of(format)), out);
  });
}

lf_status lf_grammar_ldg(const lf_grammar* g, int reduced, lf_format format, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    Ldg d = build_ldg(g->normal, compute_relations(g->normal));
    if (reduced) d = reduce_ldg(d);
    emit(render_ldg(d, format_of(format)), out);
  });
}

lf_status lf_grammar_is_empty(const lf_grammar* g, int* empty) {
  return guard([&] {
    require(g != nullptr && empty != nullptr, "null argument");
    *empty = lig_emptiness(g->normal) ? 1 : 0;
  });
}

lf_status lf_grammar_static_filter(const lf_grammar* g, char** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "null argument");
    const LigGrammar& n = g->normal;
    std::string s;
    for (const auto& [kind, gamma, a, b] : g->static_filter().useless) {
      s += n.nonterminals[a] + " " + std::string(to_string(kind));
      if (has_gamma(kind)) s += "(" + n.stack_symbols[gamma] + ")";
      s += " " + n.nonterminals[b] + "\n";
    }
    emit(s, out);
  });
}

lf_status lf_parse_run(const lf_grammar* g, const char* input, int chars, int static_filter, lf_parse** out) {
  return guard([&] {
    require(g != nullptr && input != nullptr && out != nullptr, "null argument");
    auto p = std::make_unique<lf_parse>();
    p->grammar = g;
    RecognizeOptions opts;
    if (static_filter) opts.filter = &g->static_filter();
    p->rec = recognize(g->normal, tokenize(g->normal, input, chars != 0), opts);
    *out = p.release();
  });
}

void lf_parse_free(lf_parse* p) { delete p; }

lf_status lf_parse_member(const lf_parse* p, int* member) {
  return guard([&] {
    require(p != nullptr && member != nullptr, "null argument");
    *member = p->rec.member ? 1 : 0;
  });
}

lf_status lf_parse_count(const lf_parse* p, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    emit(count_sentences(p->rec.reduced).to_string(), out);
  });
}

lf_status lf_parse_forest(const lf_parse* p, int liged, lf_format format, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    if (!liged) {
      emit(render_forest(p->rec.forest, format_of(format)), out);
      return;
    }
    if (format == LF_FORMAT_TEXT) {
      std::string s;
      for (const auto& prod : p->rec.liged.grammar.productions) s += render_production(p->rec.liged.grammar, prod) + "\n";
      emit(s, out);
      return;
    }
    // JSON and DOT share the forest layout; stack schemas appear in the text form.
    emit(render_forest(p->rec.forest, format_of(format)), out);
  });
}

lf_status lf_parse_relations(const lf_parse* p, lf_format format, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    emit(render_relations(p->rec.liged.grammar, p->rec.relations, format_of(format)), out);
  });
}

lf_status lf_parse_ldg(const lf_parse* p, int reduced, lf_format format, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    emit(render_ldg(reduced ? p->rec.reduced : p->rec.generated, format_of(format)), out);
  });
}

lf_status lf_parse_report(const lf_parse* p, int with_count, lf_format format, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    require(format != LF_FORMAT_DOT, "reports have no DOT form");
    std::optional<DerivationCount> count;
    if (with_count) count = count_sentences(p->rec.reduced);
    const RunReport r = make_report(p->grammar->normal, p->rec, std::move(count));
    emit(format == LF_FORMAT_JSON ? report_json(r) : report_text(r), out);
  });
}

lf_status lf_parse_enumerate(const lf_parse* p, size_t max_count, size_t max_len, int trees, lf_format format,
                             char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const lf_grammar& g = *p->grammar;
    const auto sentences = enumerate_sentences(p->rec.reduced, max_count, max_len);
    nlohmann::json list = nlohmann::json::array();
    std::string text;
    for (const auto& s : sentences) {
      const Derivation normal = map_to_source(s.sentence, p->rec.liged.provenance);
      const Derivation source = g.to_source(normal);
      std::optional<ParseTree> tree;
      if (trees) tree = sentence_to_tree(g.normal, normal);
      if (format == LF_FORMAT_JSON) {
        nlohmann::json item{{"productions", names_json(g.source, source)},
                            {"ldg_productions", s.ldg_productions.size()}};
        if (tree) item["tree"] = nlohmann::json::parse(render_tree(g.normal, *tree, Format::Json));
        list.push_back(std::move(item));
      } else if (format == LF_FORMAT_DOT) {
        require(trees != 0, "DOT output needs trees");
        text += render_tree(g.normal, *tree, Format::Dot);
      } else {
        text += names(g.source, source) + "\n";
        if (tree) text += "  " + render_tree(g.normal, *tree, Format::Text);
      }
    }
    emit(format == LF_FORMAT_JSON ? list.dump(2) + "\n" : text, out);
  });
}

lf_status lf_derivation_tree(const lf_grammar* g, const char* derivation, lf_format format, char** out) {
  return guard([&] {
    require(g != nullptr && derivation != nullptr && out != nullptr, "null argument");
    Derivation d;
    std::istringstream in(derivation);
    std::string name;
    while (in >> name) {
      auto id = g->source.find_production(name);
      if (!id) throw ArgumentError("unknown production " + name);
      d.push_back(*id);
    }
    emit(render_tree(g->source, sentence_to_tree(g->source, d), format_of(format)), out);
  });
}

lf_status lf_oracle(const lf_grammar* g, const char* input, int chars, size_t max_nodes, size_t max_stack,
                    lf_format format, size_t* trees, char** out) {
  return guard([&] {
    require(g != nullptr && input != nullptr && out != nullptr, "null argument");
    require(max_nodes > 0 && max_stack > 0, "oracle bounds must be positive");
    const auto tokens = tokenize(g->source, input, chars != 0);
    const auto found = enumerate_trees(g->source, tokens, {max_nodes, max_stack});
    if (trees != nullptr) *trees = found.size();
    const std::string bound =
        "max_nodes=" + std::to_string(max_nodes) + ", max_stack=" + std::to_string(max_stack);
    if (format == LF_FORMAT_JSON) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& t : found) {
        list.push_back({{"derivation", names_json(g->source, linearize(t))},
                        {"tree", nlohmann::json::parse(render_tree(g->source, t, Format::Json))}});
      }
      nlohmann::json doc{{"complete_within_bound", true},
                         {"max_nodes", max_nodes},
                         {"max_stack", max_stack},
                         {"trees", std::move(list)}};
      emit(doc.dump(2) + "\n", out);
      return;
    }
    std::string s;
    if (format == LF_FORMAT_TEXT) {
      s = "complete within bound (" + bound + "): " + std::to_string(found.size()) + " tree(s)\n";
    }
    for (const auto& t : found) {
      if (format == LF_FORMAT_DOT) {
        s += render_tree(g->source, t, Format::Dot);
      } else {
        s += names(g->source, linearize(t)) + "\n  " + render_tree(g->source, t, Format::Text);
      }
    }
    emit(s, out);
  });
}

lf_status lf_bench(const lf_grammar* g, const char* input_template, size_t from, size_t to, size_t step,
                   int static_filter, char** out) {
  return guard([&] {
    require(g != nullptr && input_template != nullptr && out != nullptr, "null argument");
    require(step > 0 && from <= to, "empty or invalid length range");
    RecognizeOptions opts;
    if (static_filter) opts.filter = &g->static_filter();
    std::string csv = bench_header() + "\n";
    for (std::size_t n = from; n <= to; n += step) {
      const Recognition rec = recognize(g->normal, expand_template(g->normal, input_template, n), opts);
      csv += bench_row(n, make_report(g->normal, rec)) + "\n";
    }
    emit(csv, out);
  });
}

lf_status lf_fuzz(uint64_t seed, size_t count, int relaxed, size_t max_input, size_t bound, int print_grammars,
                  size_t* failures, char** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    FuzzConfig cfg;
    cfg.relaxed = relaxed != 0;
    cfg.max_input = max_input;
    cfg.bound = bound;
    std::size_t failed = 0;
    std::string s;
    for (std::size_t i = 0; i < count; ++i) {
      const FuzzOutcome o = fuzz_one(seed + i, cfg);
      s += "seed " + std::to_string(o.seed) + ": " + (o.failures.empty() ? "ok" : "FAIL") + " (" +
           std::to_string(o.inputs) + " inputs, " + std::to_string(o.members) + " members, " +
           std::to_string(o.derivations) + " derivations)\n";
      for (const auto& f : o.failures) s += "  " + f + "\n";
      if (print_grammars || !o.failures.empty()) {
        std::istringstream lines(render_grammar(o.grammar));
        for (std::string line; std::getline(lines, line);) s += "  | " + line + "\n";
      }
      if (!o.failures.empty()) ++failed;
    }
    if (failures != nullptr) *failures = failed;
    emit(s, out);
  });
}

}  // extern "C"
