#include "ligforge/fuzz.hpp"

#include <algorithm>

#include "ligforge/oracle.hpp"

namespace ligforge {

namespace {

std::string show(const LigGrammar& g, const Derivation& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + g.productions[d[i]].name;
  return s + "]";
}

std::string show_input(const LigGrammar& g, const std::vector<std::uint32_t>& w) {
  std::string s = "'";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + g.terminals[w[i]];
  return s + "'";
}

}  // namespace

FuzzOutcome fuzz_one(std::uint64_t seed, const FuzzConfig& cfg) {
  FuzzOutcome out;
  out.seed = seed;
  out.grammar = cfg.relaxed ? random_relaxed_grammar(seed, cfg.limits) : random_normal_grammar(seed, cfg.limits);
  const LigGrammar& g = out.grammar;

  LigGrammar normal = g;
  std::vector<std::uint32_t> origin;
  if (cfg.relaxed) {
    auto n = normalize(g);
    normal = std::move(n.grammar);
    origin = std::move(n.origin);
  }
  if (!satisfies_fixpoint_identity(compute_relations(normal))) out.failures.push_back("closure equations violated");

  const OracleConfig bound{cfg.bound, cfg.bound};
  std::vector<std::uint32_t> w;
  auto visit = [&](const std::vector<std::uint32_t>& input) {
    ++out.inputs;
    const Recognition rec = recognize(normal, input);
    const auto oracle = oracle_language(g, input, bound);
    if (rec.member) ++out.members;

    std::set<Derivation> found;
    // Relaxed grammars expand into longer normalized derivations; their
    // bounded sets are comparable only through the membership verdict.
    // A relaxed production expands into at most kExpansion normalized ones.
    constexpr std::size_t kExpansion = 7;
    const std::size_t max_len = cfg.relaxed ? 2 * cfg.bound : cfg.bound;
    for (const auto& s : enumerate_sentences(rec.reduced, static_cast<std::size_t>(-1), max_len)) {
      Derivation d = map_to_source(s.sentence, rec.liged.provenance);
      if (s.ldg_productions.size() > 2 * s.sentence.size()) {
        out.failures.push_back(show_input(g, input) + ": " + show(normal, d) + " used too many LDG productions");
      }
      try {
        if (replay(sentence_to_tree(normal, d)) != input) {
          out.failures.push_back(show_input(g, input) + ": " + show(normal, d) + " replays to another input");
        }
      } catch (const DerivationError& e) {
        out.failures.push_back(show_input(g, input) + ": " + e.what());
      }
      if (cfg.relaxed) d = map_to_origin(d, origin);
      if (!found.insert(std::move(d)).second) out.failures.push_back(show_input(g, input) + ": duplicate sentence");
    }
    out.derivations += found.size();

    if (cfg.relaxed) {
      if (!oracle.empty() && !rec.member) {
        out.failures.push_back(show_input(g, input) + ": oracle finds a tree, normalized grammar rejects");
      }
      for (const auto& d : oracle) {
        if (!found.count(d) && d.size() * kExpansion <= max_len) {
          out.failures.push_back(show_input(g, input) + ": oracle derivation " + show(g, d) + " not enumerated");
        }
      }
    } else if (found != oracle) {
      out.failures.push_back(show_input(g, input) + ": oracle and derivation grammar disagree (" +
                             std::to_string(oracle.size()) + " vs " + std::to_string(found.size()) + ")");
    }
  };
  auto words = [&](auto&& self) -> void {
    visit(w);
    if (w.size() == cfg.max_input) return;
    for (std::uint32_t t = 0; t < g.terminals.size(); ++t) {
      w.push_back(t);
      self(self);
      w.pop_back();
    }
  };
  words(words);
  return out;
}

}  // namespace ligforge
