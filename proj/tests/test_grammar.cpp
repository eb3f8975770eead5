#include <doctest.h>

#include "support.hpp"

using namespace testing;

TEST_CASE("example grammars parse with their declared symbols") {
  const LigGrammar g1 = example1();
  CHECK(g1.nonterminals == std::vector<std::string>{"S", "T"});
  CHECK(g1.stack_symbols.size() == 3);
  CHECK(g1.productions.size() == 8);
  CHECK(g1.productions[0].name == "r1");
  CHECK(g1.productions[7].name == "r8");
  CHECK(validate_normal_form(g1).empty());

  const LigGrammar g2 = example2();
  CHECK(g2.nonterminals.size() == 2);
  CHECK(g2.stack_symbols.size() == 1);
  CHECK(g2.nonterminals[g2.start] == "A");
}

TEST_CASE("minimal grammar") {
  const LigGrammar g = parse_grammar("%start S\nS() -> \"a\"\n");
  REQUIRE(g.productions.size() == 1);
  CHECK_FALSE(g.productions[0].lhs_inherits);
  CHECK(g.productions[0].rhs == std::vector<Constituent>{Constituent::terminal(0)});
  CHECK(g.productions[0].name == "r1");
}

TEST_CASE("schemas, flanks, comments and terminals") {
  const LigGrammar g = parse_grammar(R"(# comment line
%start S
%stack g h
S(..) -> a S(..g)      # bare lowercase terminal
S(..g) -> S(..) C()
S(..) -> "x y" T(..)
T() ->
C() -> "c" "#"
)");
  REQUIRE(g.productions.size() == 5);
  const auto& p0 = g.productions[0];
  CHECK(p0.rhs[0] == Constituent::terminal(*g.find_terminal("a")));
  CHECK(p0.rhs[1] == Constituent::primary(0, {0}));
  const auto& p1 = g.productions[1];
  CHECK(p1.lhs_pop == std::vector<std::uint32_t>{0});
  CHECK(p1.rhs[1].kind == Constituent::Kind::Secondary);
  CHECK(g.find_terminal("x y").has_value());
  CHECK(g.find_terminal("#").has_value());
  CHECK(g.productions[3].rhs.empty());
  CHECK(validate_normal_form(g).empty());
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_grammar("S() -> \"a\"\n"), doctest::Contains("%start"), GrammarError);
  try {
    parse_grammar("%start S\n%stack g\nS(..) -> S(..h)\n");
    FAIL("expected an error");
  } catch (const GrammarError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("undeclared stack symbol") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_grammar("%start S\nr1: S() -> a\nr1: S() -> b\n"), doctest::Contains("duplicate"),
                       GrammarError);
  try {
    parse_grammar("%start S\nS() -> -> a\n");
    FAIL("expected an error");
  } catch (const GrammarError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parse_grammar("%start S\nS(g) -> a\n"), GrammarError);
  CHECK_THROWS_AS(parse_grammar("%start S\nS() -> B\n"), GrammarError);
}

TEST_CASE("strict parsing rejects normal-form violations") {
  CHECK_THROWS_WITH_AS(parse_grammar("%start A\nA() -> a b c\n"), doctest::Contains("line 2, column 1"),
                       NormalFormError);
  CHECK_NOTHROW(parse_grammar("%start A\nA() -> a b c\n", {true}));
}

TEST_CASE("validate_normal_form names the broken rule") {
  auto kinds = [](const char* text) {
    std::vector<ViolationKind> out;
    for (const auto& v : validate_normal_form(parse_grammar(text, {true}))) out.push_back(v.kind);
    return out;
  };
  CHECK(kinds("%start A\nA() -> a b c\n") == std::vector{ViolationKind::WordTooLong});
  CHECK(kinds("%start A\n%stack x y\nA(..x y) -> B(..)\nB() ->\n") == std::vector{ViolationKind::SchemaTooLong});
  CHECK(kinds("%start A\n%stack x\nA(..x) -> B(..x)\nB() ->\n") == std::vector{ViolationKind::SchemaTooLong});
  CHECK(kinds("%start A\nA(..) -> a B(..) b\nB() ->\n") == std::vector{ViolationKind::TooManyFlanks});
  CHECK(kinds("%start A\n%stack x\nA(..) -> B(..) B(x)\nB() ->\n") == std::vector{ViolationKind::SecondaryWithStack});
  CHECK(kinds("%start A\nA(..) -> a\n") == std::vector{ViolationKind::NoPrimary});
  CHECK(kinds("%start A\nA() -> B()\nB() ->\n") == std::vector{ViolationKind::NoPrimary});
  CHECK(kinds("%start A\nA(..) -> A(..) A(..)\n") == std::vector{ViolationKind::MultiplePrimaries});
  CHECK(kinds("%start A\nA() -> A(..)\n") == std::vector{ViolationKind::PrimaryUnderEmptyHead});
  CHECK(kinds("%start A\nA() -> a b\nA(..) -> A(..) b\n").empty());
}

TEST_CASE("render is the inverse of parse") {
  for (const auto& g : {example1(), example2()}) CHECK(parse_grammar(render_grammar(g)) == g);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const LigGrammar n = random_normal_grammar(seed);
    CHECK(parse_grammar(render_grammar(n)) == n);
    const LigGrammar r = random_relaxed_grammar(seed);
    CHECK(parse_grammar(render_grammar(r), {true}) == r);
  }
}

TEST_CASE("random grammars respect their limits and seeds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const LigGrammar g = random_normal_grammar(seed);
    CHECK(validate_normal_form(g).empty());
    CHECK(g.nonterminals.size() <= 4);
    CHECK(g.stack_symbols.size() <= 2);
    CHECK(g.terminals.size() <= 2);
    CHECK(g.productions.size() <= 10);
    CHECK(random_normal_grammar(seed) == g);
  }
}

TEST_CASE("normalize leaves normal-form grammars alone") {
  const LigGrammar g = example1();
  const NormalizeResult n = normalize(g);
  CHECK(n.grammar == g);
  for (std::uint32_t i = 0; i < g.productions.size(); ++i) CHECK(n.origin[i] == i);
}

TEST_CASE("normalize splits pushes and flanks one per production") {
  const LigGrammar g = parse_grammar(
      "%start A\n%stack ga gb\nA(..) -> \"a\" B(..ga gb) \"c\"\nB(..gb) -> B(..)\nB(..ga) -> B(..)\nB() -> b\n",
      {true});
  const NormalizeResult n = normalize(g);
  CHECK(validate_normal_form(n.grammar).empty());
  std::size_t chain = 0;
  std::size_t total_pushes = 0;
  for (const auto& p : n.grammar.productions) {
    if (n.origin[p.id] != 0 && n.origin[p.id] != npos32) continue;
    ++chain;
    std::size_t flanks = 0;
    std::size_t pushes = 0;
    for (const auto& c : p.rhs) {
      if (c.kind == Constituent::Kind::Primary) pushes += c.stack.size();
      else ++flanks;
    }
    CHECK(flanks <= 1);
    CHECK(pushes <= 1);
    CHECK(p.lhs_pop.empty());
    total_pushes += pushes;
  }
  CHECK(chain == 3);
  CHECK(total_pushes == 2);
  CHECK(n.origin[0] == 0);
  CHECK(n.grammar.find_nonterminal("A#1").has_value());
  CHECK(recognize(n.grammar, tokenize(n.grammar, "a b c")).member);
}

TEST_CASE("normalize splits long terminal words") {
  const LigGrammar g = parse_grammar("%start A\nA() -> a b c\n", {true});
  const NormalizeResult n = normalize(g);
  CHECK(validate_normal_form(n.grammar).empty());
  CHECK(n.grammar.productions.size() >= 2);
  const Recognition rec = recognize(n.grammar, tokenize(n.grammar, "a b c"));
  REQUIRE(rec.member);
  const auto sentences = source_sentences(rec, 10);
  REQUIRE(sentences.size() == 1);
  CHECK(map_to_origin(sentences[0], n.origin) == Derivation{0});
  CHECK_FALSE(recognize(n.grammar, tokenize(n.grammar, "a b")).member);
}

TEST_CASE("normalize pops the top symbol first") {
  const LigGrammar g =
      parse_grammar("%start S\n%stack x y\nS(..) -> S(..x y) a\nS(..) -> T(..)\nT(..x y) -> b T(..)\nT() -> c\n",
                    {true});
  const NormalizeResult n = normalize(g);
  CHECK(validate_normal_form(n.grammar).empty());
  CHECK(recognize(n.grammar, tokenize(n.grammar, "b c a")).member);
  CHECK(recognize(n.grammar, tokenize(n.grammar, "b b c a a")).member);
  CHECK_FALSE(recognize(n.grammar, tokenize(n.grammar, "b c a a")).member);
}

TEST_CASE("normalize rejects productions it cannot rewrite") {
  CHECK_THROWS_AS(normalize(parse_grammar("%start A\nA(..) -> A(..) A(..)\n", {true})), NormalFormError);
  CHECK_THROWS_AS(normalize(parse_grammar("%start A\nA(..) -> a\n", {true})), NormalFormError);
  CHECK_THROWS_AS(normalize(parse_grammar("%start A\n%stack x\nA(..) -> A(..) B(x)\nB() ->\n", {true})),
                  NormalFormError);
}

TEST_CASE("normalize output always validates") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const NormalizeResult n = normalize(random_relaxed_grammar(seed));
    CHECK(validate_normal_form(n.grammar).empty());
    CHECK(n.origin.size() == n.grammar.productions.size());
  }
}

// The bounded oracle runs directly on the relaxed grammar, the recognizer
// on its normal form. Each direction is checked at a bound that makes it
// exact: a normalized derivation of length l comes from a relaxed one with
// at most l nodes and stacks no deeper than l.
TEST_CASE("normalize preserves the bounded string language") {
  std::size_t agreements = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const LigGrammar g = random_relaxed_grammar(seed);
    const NormalizeResult n = normalize(g);
    for (const auto& w : all_words(g.terminals.size(), 4)) {
      const bool oracle = !enumerate_trees(g, w, {10, 10}).empty();
      const Recognition rec = recognize(n.grammar, w);
      INFO("seed " << seed);
      if (oracle) CHECK(rec.member);
      if (rec.member) {
        const auto shortest = enumerate_sentences(rec.reduced, 1, 64);
        REQUIRE(shortest.size() == 1);
        const std::size_t l = shortest[0].sentence.size();
        if (l <= 14) CHECK_FALSE(enumerate_trees(g, w, {l, l}).empty());
      }
      ++agreements;
    }
  }
  CHECK(agreements > 0);
}

TEST_CASE("cf_backbone erases stacks and keeps ids") {
  const LigGrammar g = example1();
  const CfGrammar b = cf_backbone(g);
  REQUIRE(b.productions.size() == 8);
  CHECK(render_cf_production(b, b.productions[0]) == "S -> S a");
  CHECK(render_cf_production(b, b.productions[3]) == "S -> T");
  CHECK(render_cf_production(b, b.productions[6]) == "T -> c T");
  CHECK(render_cf_production(b, b.productions[7]) == "T -> c");
  for (std::uint32_t i = 0; i < 8; ++i) CHECK(b.productions[i].id == i);

  const CfGrammar single = cf_backbone(parse_grammar("%start S\nS() -> a\n"));
  CHECK(render_cf_production(single, single.productions[0]) == "S -> a");

  const CfGrammar cyclic = cf_backbone(example2());
  CHECK(render_cf_production(cyclic, cyclic.productions[0]) == "A -> A");
  CHECK(render_cf_production(cyclic, cyclic.productions[2]) == "B -> B");
}

TEST_CASE("normal_view refuses relaxed grammars") {
  CHECK_THROWS_AS(normal_view(parse_grammar("%start A\nA() -> a b c\n", {true})), NormalFormError);
  const auto view = normal_view(example1());
  CHECK(view[0].primary_schema == StackSchema::push(0));
  CHECK(view[4].lhs_schema == StackSchema::pop(0));
  CHECK(view[4].flank == Flank{false, 0, true});
  CHECK(view[7].terminal_word);
}
