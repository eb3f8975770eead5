#include "ligforge/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace ligforge {

using nlohmann::json;

namespace {

std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string relation_label(const LigGrammar& g, RelationKind kind, std::uint32_t gamma) {
  std::string s(to_string(kind));
  if (has_gamma(kind)) s += "(" + g.stack_symbols[gamma] + ")";
  return s;
}

template <typename F>
void for_each_family(const RelationSet& r, F&& f) {
  f(RelationKind::Eq1, 0u, r.eq1);
  for (std::uint32_t g = 0; g < r.stack_symbols; ++g) f(RelationKind::Push1, g, r.push1[g]);
  for (std::uint32_t g = 0; g < r.stack_symbols; ++g) f(RelationKind::Pop1, g, r.pop1[g]);
  f(RelationKind::EqPlus, 0u, r.eq_plus);
  f(RelationKind::Spine, 0u, r.spine);
  for (std::uint32_t g = 0; g < r.stack_symbols; ++g) f(RelationKind::PopPlus, g, r.pop_plus[g]);
}

std::string symbol_name(const CfGrammar& g, const Symbol& s) {
  return s.terminal ? g.terminals[s.index] : g.nonterminals[s.index];
}

// Hypergraph rendering shared by forests and derivation grammars.
std::string cfg_dot(const CfGrammar& g, const std::string& name, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=TB;\n  node [shape=ellipse];\n";
  std::vector<bool> seen(g.nonterminals.size(), false);
  for (const auto& p : g.productions) {
    seen[p.lhs] = true;
    for (const auto& s : p.rhs) {
      if (!s.terminal) seen[s.index] = true;
    }
  }
  if (!g.nonterminals.empty()) seen[g.start] = true;
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    if (seen[i]) os << "  n" << i << " [label=" << quote_dot(g.nonterminals[i]) << "];\n";
  }
  for (const auto& p : g.productions) {
    os << "  p" << p.id << " [shape=box, label=" << quote_dot(labels[p.id]) << "];\n";
    os << "  n" << p.lhs << " -> p" << p.id << ";\n";
    std::size_t k = 0;
    for (const auto& s : p.rhs) {
      ++k;
      if (s.terminal) {
        os << "  p" << p.id << "_t" << k << " [shape=plaintext, label=" << quote_dot(g.terminals[s.index]) << "];\n";
        os << "  p" << p.id << " -> p" << p.id << "_t" << k << " [label=\"" << k << "\"];\n";
      } else {
        os << "  p" << p.id << " -> n" << s.index << " [label=\"" << k << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

json rhs_json(const CfGrammar& g, const CfProduction& p) {
  json rhs = json::array();
  for (const auto& s : p.rhs) rhs.push_back(symbol_name(g, s));
  return rhs;
}

}  // namespace

std::string render_relations(const LigGrammar& g, const RelationSet& r, Format format) {
  if (format == Format::Json) {
    json out;
    out["nonterminals"] = g.nonterminals;
    out["relations"] = json::array();
    for_each_family(r, [&](RelationKind kind, std::uint32_t gamma, const BitMatrix& m) {
      json fam;
      fam["kind"] = std::string(to_string(kind));
      if (has_gamma(kind)) fam["gamma"] = g.stack_symbols[gamma];
      fam["pairs"] = json::array();
      for (auto [a, b] : m.pairs()) fam["pairs"].push_back({g.nonterminals[a], g.nonterminals[b]});
      out["relations"].push_back(std::move(fam));
    });
    return out.dump(2) + "\n";
  }
  if (format == Format::Dot) {
    std::ostringstream os;
    os << "digraph relations {\n";
    for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
      os << "  n" << i << " [label=" << quote_dot(g.nonterminals[i]) << "];\n";
    }
    for_each_family(r, [&](RelationKind kind, std::uint32_t gamma, const BitMatrix& m) {
      if (kind == RelationKind::Eq1 || kind == RelationKind::Push1 || kind == RelationKind::Pop1) return;
      for (auto [a, b] : m.pairs()) {
        os << "  n" << a << " -> n" << b << " [label=" << quote_dot(relation_label(g, kind, gamma)) << "];\n";
      }
    });
    os << "}\n";
    return os.str();
  }
  std::ostringstream os;
  for_each_family(r, [&](RelationKind kind, std::uint32_t gamma, const BitMatrix& m) {
    if (m.empty()) return;
    os << relation_label(g, kind, gamma) << " = {";
    bool first = true;
    for (auto [a, b] : m.pairs()) {
      os << (first ? "" : ", ") << '(' << g.nonterminals[a] << ", " << g.nonterminals[b] << ')';
      first = false;
    }
    os << "}\n";
  });
  return os.str();
}

std::string render_forest(const SharedForest& f, Format format) {
  const auto& g = f.grammar;
  if (format == Format::Json) {
    json out;
    out["start"] = g.nonterminals.empty() ? "" : g.nonterminals[g.start];
    out["nonterminals"] = json::array();
    for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
      out["nonterminals"].push_back(
          {{"name", g.nonterminals[i]}, {"base", f.items[i].base}, {"from", f.items[i].from}, {"to", f.items[i].to}});
    }
    out["productions"] = json::array();
    for (const auto& p : g.productions) {
      out["productions"].push_back({{"id", p.id},
                                    {"name", f.production_names[p.id]},
                                    {"lhs", g.nonterminals[p.lhs]},
                                    {"rhs", rhs_json(g, p)},
                                    {"source", f.provenance[p.id].source},
                                    {"states", f.provenance[p.id].states}});
    }
    return out.dump(2) + "\n";
  }
  if (format == Format::Dot) return cfg_dot(g, "forest", f.production_names);
  std::ostringstream os;
  for (const auto& p : g.productions) os << render_cf_production(g, p, &f.production_names) << '\n';
  return os.str();
}

std::string render_ldg(const Ldg& d, Format format) {
  const auto& g = d.grammar;
  if (format == Format::Json) {
    json out;
    out["start"] = g.nonterminals.empty() ? "" : g.nonterminals[g.start];
    out["productions"] = json::array();
    for (const auto& p : g.productions) {
      json ids = json::array();
      for (const auto& sym : p.rhs) {
        if (sym.terminal) ids.push_back(sym.index);
      }
      out["productions"].push_back({{"id", p.id},
                                    {"lhs", g.nonterminals[p.lhs]},
                                    {"rhs", rhs_json(g, p)},
                                    {"terminal_ids", std::move(ids)},
                                    {"form", d.form(p)}});
    }
    const auto counts = d.form_counts();
    json forms = json::object();
    for (int k = 1; k <= 9; ++k) forms[std::to_string(k)] = counts[static_cast<std::size_t>(k)];
    out["form_counts"] = std::move(forms);
    return out.dump(2) + "\n";
  }
  if (format == Format::Dot) {
    std::vector<std::string> labels(d.forms.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "(" + std::to_string(d.forms[i]) + ")";
    return cfg_dot(g, "ldg", labels);
  }
  std::ostringstream os;
  for (const auto& p : g.productions) {
    os << '(' << d.form(p) << ") " << render_cf_production(g, p) << '\n';
  }
  return os.str();
}

std::string render_tree(const LigGrammar& g, const ParseTree& t, Format format) {
  auto object = [&](std::uint32_t i) {
    std::string s = g.nonterminals[t.nodes[i].nonterminal] + "(";
    const auto st = t.stack_of(i);
    for (std::size_t k = 0; k < st.size(); ++k) s += (k ? " " : "") + g.stack_symbols[st[k]];
    return s + ")";
  };
  if (format == Format::Json) {
    auto walk = [&](auto&& self, std::uint32_t i) -> json {
      const auto& n = t.nodes[i];
      json stack = json::array();
      for (auto s : t.stack_of(i)) stack.push_back(g.stack_symbols[s]);
      json children = json::array();
      for (const auto& c : n.children) {
        children.push_back(c.terminal ? json{{"terminal", g.terminals[c.index]}} : self(self, c.index));
      }
      return {{"production", g.productions[n.production].name},
              {"nonterminal", g.nonterminals[n.nonterminal]},
              {"stack", std::move(stack)},
              {"children", std::move(children)}};
    };
    return (t.nodes.empty() ? json(nullptr) : walk(walk, 0)).dump(2) + "\n";
  }
  if (format == Format::Dot) {
    std::ostringstream os;
    os << "digraph tree {\n  node [shape=box];\n";
    std::size_t leaves = 0;
    for (std::uint32_t i = 0; i < t.nodes.size(); ++i) {
      const auto& n = t.nodes[i];
      os << "  n" << i << " [label=" << quote_dot(object(i) + "\n" + g.productions[n.production].name) << "];\n";
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        const auto& c = n.children[k];
        if (c.terminal) {
          os << "  l" << leaves << " [shape=plaintext, label=" << quote_dot(g.terminals[c.index]) << "];\n";
          os << "  n" << i << " -> l" << leaves++ << ";\n";
        } else {
          os << "  n" << i << " -> n" << c.index << (static_cast<std::int32_t>(k) == n.primary ? " [style=bold]" : "")
             << ";\n";
        }
      }
    }
    os << "}\n";
    return os.str();
  }
  return t.render(g) + "\n";
}

RunReport make_report(const LigGrammar& lig, const Recognition& rec, std::optional<DerivationCount> count) {
  RunReport r;
  r.nonterminals = lig.nonterminals.size();
  r.terminals = lig.terminals.size();
  r.stack_symbols = lig.stack_symbols.size();
  r.productions = lig.productions.size();
  for_each_family(rec.relations, [&](RelationKind kind, std::uint32_t, const BitMatrix& m) {
    r.relation_sizes[static_cast<std::size_t>(kind)] += m.count();
  });
  r.forest_nonterminals = rec.forest.grammar.nonterminals.size();
  r.forest_productions = rec.forest.grammar.productions.size();
  r.ldg_generated = rec.generated.grammar.productions.size();
  r.ldg_productions = rec.reduced.grammar.productions.size();
  std::vector<bool> used(rec.reduced.grammar.nonterminals.size(), false);
  for (const auto& p : rec.reduced.grammar.productions) used[p.lhs] = true;
  r.ldg_nonterminals = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
  r.forms = rec.reduced.form_counts();
  r.member = rec.member;
  r.count = std::move(count);
  r.timings = rec.timings;
  return r;
}

std::string report_json(const RunReport& r) {
  static const char* kKinds[] = {"eq1", "push1", "pop1", "eq+", "spine", "pop+"};
  json out;
  out["grammar"] = {{"nonterminals", r.nonterminals},
                    {"terminals", r.terminals},
                    {"stack_symbols", r.stack_symbols},
                    {"productions", r.productions}};
  json rel = json::object();
  for (std::size_t k = 0; k < 6; ++k) rel[kKinds[k]] = r.relation_sizes[k];
  out["relations"] = std::move(rel);
  out["forest"] = {{"nonterminals", r.forest_nonterminals}, {"productions", r.forest_productions}};
  json forms = json::object();
  for (int k = 1; k <= 9; ++k) forms[std::to_string(k)] = r.forms[static_cast<std::size_t>(k)];
  out["ldg"] = {{"generated_productions", r.ldg_generated},
                {"productions", r.ldg_productions},
                {"nonterminals", r.ldg_nonterminals},
                {"forms", std::move(forms)}};
  out["member"] = r.member;
  out["count"] = r.count ? json(r.count->to_string()) : json(nullptr);
  out["timings_ms"] = {{"backbone", r.timings.backbone_ms}, {"forest", r.timings.forest_ms},
                       {"liged", r.timings.liged_ms},       {"relations", r.timings.relations_ms},
                       {"ldg", r.timings.ldg_ms},           {"reduce", r.timings.reduce_ms}};
  return out.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
  std::ostringstream os;
  os << "grammar: " << r.nonterminals << " nonterminals, " << r.terminals << " terminals, " << r.stack_symbols
     << " stack symbols, " << r.productions << " productions\n";
  os << "relations: eq1=" << r.relation_sizes[0] << " push1=" << r.relation_sizes[1] << " pop1=" << r.relation_sizes[2]
     << " eq+=" << r.relation_sizes[3] << " spine=" << r.relation_sizes[4] << " pop+=" << r.relation_sizes[5] << '\n';
  os << "forest: " << r.forest_nonterminals << " nonterminals, " << r.forest_productions << " productions\n";
  os << "ldg: " << r.ldg_productions << " productions (" << r.ldg_generated << " generated), forms";
  for (int k = 1; k <= 9; ++k) os << ' ' << k << ':' << r.forms[static_cast<std::size_t>(k)];
  os << '\n';
  os << "member: " << (r.member ? "yes" : "no") << '\n';
  if (r.count) os << "count: " << r.count->to_string() << '\n';
  return os.str();
}

std::string bench_header() {
  std::string h = "n,forest_nonterminals,forest_productions,ldg_generated,ldg_productions";
  for (int k = 1; k <= 9; ++k) h += ",form" + std::to_string(k);
  return h + ",member,forest_ms,liged_ms,relations_ms,ldg_ms,reduce_ms";
}

std::string bench_row(std::size_t n, const RunReport& r) {
  std::ostringstream os;
  os << n << ',' << r.forest_nonterminals << ',' << r.forest_productions << ',' << r.ldg_generated << ','
     << r.ldg_productions;
  for (int k = 1; k <= 9; ++k) os << ',' << r.forms[static_cast<std::size_t>(k)];
  os << ',' << (r.member ? 1 : 0) << ',' << r.timings.forest_ms << ',' << r.timings.liged_ms << ','
     << r.timings.relations_ms << ',' << r.timings.ldg_ms << ',' << r.timings.reduce_ms;
  return os.str();
}

}  // namespace ligforge
