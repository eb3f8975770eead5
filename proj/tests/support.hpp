#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ligforge/derive.hpp"
#include "ligforge/oracle.hpp"
#include "ligforge/random_grammar.hpp"

namespace testing {

using namespace ligforge;

inline std::string fixture(const std::string& name) { return std::string(LIGFORGE_FIXTURES) + "/" + name; }
inline LigGrammar example1() { return load_grammar(fixture("example1.lig")); }
inline LigGrammar example2() { return load_grammar(fixture("example2.lig")); }

inline std::string names(const LigGrammar& g, const Derivation& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + g.productions[d[i]].name;
  return s;
}

inline Derivation ids(const LigGrammar& g, const std::vector<std::string>& names) {
  Derivation d;
  for (const auto& n : names) d.push_back(g.find_production(n).value());
  return d;
}

using NamedPairs = std::set<std::pair<std::string, std::string>>;

inline NamedPairs named(const LigGrammar& g, const BitMatrix& m) {
  NamedPairs out;
  for (auto [a, b] : m.pairs()) out.insert({g.nonterminals[a], g.nonterminals[b]});
  return out;
}

/// Every word over `terminals` symbols of length at most `max_len`.
inline std::vector<std::vector<std::uint32_t>> all_words(std::size_t terminals, std::size_t max_len) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (std::size_t begin = 0; begin < out.size(); ++begin) {
    if (out[begin].size() == max_len) continue;
    for (std::uint32_t t = 0; t < terminals; ++t) {
      auto w = out[begin];
      w.push_back(t);
      out.push_back(std::move(w));
    }
  }
  return out;
}

/// Rendered productions of a CFG, independent of symbol and production ids.
inline std::multiset<std::string> rendered(const CfGrammar& g) {
  std::multiset<std::string> out;
  for (const auto& p : g.productions) out.insert(render_cf_production(g, p));
  return out;
}

/// Sentences of a recognition, mapped to source production ids.
inline std::vector<Derivation> source_sentences(const Recognition& rec, std::size_t max_len,
                                                std::size_t max_count = static_cast<std::size_t>(-1)) {
  std::vector<Derivation> out;
  for (const auto& s : enumerate_sentences(rec.reduced, max_count, max_len)) {
    out.push_back(map_to_source(s.sentence, rec.liged.provenance));
  }
  return out;
}

}  // namespace testing
