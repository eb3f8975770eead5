#include <doctest.h>

#include <map>

#include "support.hpp"

using namespace testing;

namespace {

std::size_t max_depth(const ParseTree& t) {
  std::size_t d = 0;
  for (std::uint32_t i = 0; i < t.nodes.size(); ++i) d = std::max(d, t.stack_depth(i));
  return d;
}

// Brute force: every production sequence of length <= max_len that builds a
// tree, grouped by yield.
std::map<std::vector<std::uint32_t>, std::set<Derivation>> sequences(const LigGrammar& g, std::size_t max_len) {
  std::map<std::vector<std::uint32_t>, std::set<Derivation>> out;
  Derivation d;
  auto walk = [&](auto&& self) -> void {
    if (!d.empty()) {
      try {
        const ParseTree t = sentence_to_tree(g, d);
        out[replay(t)].insert(d);
      } catch (const DerivationError&) {
      }
    }
    if (d.size() == max_len) return;
    for (std::uint32_t r = 0; r < g.productions.size(); ++r) {
      d.push_back(r);
      self(self);
      d.pop_back();
    }
  };
  walk(walk);
  return out;
}

}  // namespace

TEST_CASE("example 1") {
  const LigGrammar g = example1();
  const auto ccc = enumerate_trees(g, tokenize(g, "c c c"), {20, 10});
  REQUIRE(ccc.size() == 1);
  CHECK(names(g, linearize(ccc[0])) == "r8 r7 r4 r3");
  CHECK(ccc[0].render(g) == sentence_to_tree(g, linearize(ccc[0])).render(g));
  CHECK(enumerate_trees(g, tokenize(g, "c c"), {20, 10}).empty());
  CHECK(enumerate_trees(g, tokenize(g, "c c c"), {3, 10}).empty());
  CHECK(enumerate_trees(g, tokenize(g, "c c c"), {4, 0}).empty());
  CHECK(enumerate_trees(g, tokenize(g, "c c c"), {4, 1}).size() == 1);

  const auto aca = oracle_language(g, tokenize(g, "a c a"), {20, 10});
  CHECK(aca == std::set<Derivation>{ids(g, {"r8", "r5", "r4", "r1"})});
}

TEST_CASE("example 2 within bounds") {
  // The tree with m pushes has 2m + 2 nodes and stack height m.
  const LigGrammar g = example2();
  const auto a = tokenize(g, "a");
  for (std::size_t k = 0; k <= 4; ++k) {
    const auto trees = enumerate_trees(g, a, {4 * k + 4, k + 1});
    CHECK(trees.size() == k + 2);
    for (std::size_t m = 0; m < trees.size(); ++m) {
      CHECK(linearize(trees[m]).size() == 2 * m + 2);
      CHECK(max_depth(trees[m]) == m);
    }
  }
  CHECK(oracle_language(g, a, {6, 2}).size() == 3);
  CHECK(oracle_language(g, a, {6, 2}).begin()->size() == 2);
  CHECK(enumerate_trees(g, tokenize(g, ""), {50, 50}).empty());
}

TEST_CASE("empty grammar or input outside the language") {
  const LigGrammar g = parse_grammar("%start S\n%stack ga\nS(..) -> S(..ga) b\n");
  CHECK(enumerate_trees(g, tokenize(g, "b"), {30, 30}).empty());
  CHECK(enumerate_trees(g, tokenize(g, "b b"), {30, 30}).empty());
}

TEST_CASE("linearize orders secondary subtrees before the spine") {
  const LigGrammar g = parse_grammar(R"(%start S
%stack g
r1: S(..) -> L() M(..g) R()
r2: M(..g) -> N(..)
r3: L() -> l
r4: R() -> r
r5: N() -> m
)",
                                     {true});
  const auto trees = enumerate_trees(g, tokenize(g, "l m r"), {10, 5});
  REQUIRE(trees.size() == 1);
  CHECK(names(g, linearize(trees[0])) == "r5 r2 r4 r3 r1");
  CHECK(replay(sentence_to_tree(g, linearize(trees[0]))) == tokenize(g, "l m r"));
}

TEST_CASE("the oracle agrees with brute-force sequences") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const LigGrammar g = random_normal_grammar(seed);
    const std::size_t l = 5;
    const auto all = sequences(g, l);
    INFO("seed " << seed);
    for (const auto& w : all_words(g.terminals.size(), 3)) {
      const auto it = all.find(w);
      const std::set<Derivation> expected = it == all.end() ? std::set<Derivation>{} : it->second;
      CHECK(oracle_language(g, w, {l, l}) == expected);
    }
  }
}

TEST_CASE("oracle trees are valid and distinct") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const LigGrammar g = random_normal_grammar(seed);
    for (const auto& w : all_words(g.terminals.size(), 3)) {
      const OracleConfig cfg{8, 4};
      const auto trees = enumerate_trees(g, w, cfg);
      std::set<Derivation> seen;
      for (const auto& t : trees) {
        const Derivation d = linearize(t);
        CHECK(seen.insert(d).second);
        CHECK(replay(t) == w);
        CHECK(t.nodes.size() <= cfg.max_nodes);
        CHECK(max_depth(t) <= cfg.max_stack);
        CHECK(sentence_to_tree(g, d).render(g) == t.render(g));
      }
      // Larger bounds only add trees.
      const auto wider = oracle_language(g, w, {9, 5});
      CHECK(std::includes(wider.begin(), wider.end(), seen.begin(), seen.end()));
    }
  }
}

TEST_CASE("relaxed grammars") {
  const LigGrammar g = parse_grammar("%start S\n%stack x y\nS(..) -> a S(..x y) b\nS(..x y) -> T(..)\nT() -> c\n",
                                     {true});
  const auto trees = enumerate_trees(g, tokenize(g, "a c b"), {10, 4});
  REQUIRE(trees.size() == 1);
  CHECK(max_depth(trees[0]) == 2);
  CHECK(enumerate_trees(g, tokenize(g, "a c b"), {10, 1}).empty());
  CHECK(enumerate_trees(g, tokenize(g, "a a c b b"), {10, 4}).empty());
}
