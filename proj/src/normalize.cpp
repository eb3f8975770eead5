#include "ligforge/grammar.hpp"

#include <map>

namespace ligforge {
namespace {

class Normalizer {
public:
  explicit Normalizer(const LigGrammar& g) : src_(g) {
    out_.nonterminals = g.nonterminals;
    out_.terminals = g.terminals;
    out_.stack_symbols = g.stack_symbols;
    out_.start = g.start;
  }

  NormalizeResult run() {
    std::map<std::uint32_t, std::vector<Violation>> by_production;
    for (auto& v : validate_normal_form(src_)) by_production[v.production].push_back(std::move(v));

    for (const auto& p : src_.productions) {
      auto it = by_production.find(p.id);
      if (it == by_production.end()) {
        emit(p.id, p.name, p.lhs, p.lhs_inherits, p.lhs_pop, p.rhs);
        continue;
      }
      for (const auto& v : it->second) {
        switch (v.kind) {
          case ViolationKind::NoPrimary:
          case ViolationKind::MultiplePrimaries:
          case ViolationKind::PrimaryUnderEmptyHead:
          case ViolationKind::SecondaryWithStack:
            throw NormalFormError("cannot normalize " + v.message);
          default:
            break;
        }
      }
      if (!p.lhs_inherits) {
        split_word(p);
      } else {
        split_structured(p);
      }
    }
    return {std::move(out_), std::move(origin_)};
  }

private:
  std::uint32_t fresh_nonterminal(std::uint32_t base) {
    for (;;) {
      std::string name = src_.nonterminals[base] + "#" + std::to_string(++counter_);
      if (!out_.find_nonterminal(name)) {
        out_.nonterminals.push_back(std::move(name));
        return static_cast<std::uint32_t>(out_.nonterminals.size() - 1);
      }
    }
  }

  std::string fresh_name(const std::string& base, std::size_t k) {
    if (k == 0) return base;
    std::string name = base + "#" + std::to_string(k);
    while (src_.find_production(name) || out_.find_production(name)) name += "'";
    return name;
  }

  void emit(std::uint32_t origin, std::string name, std::uint32_t lhs, bool inherits,
            std::vector<std::uint32_t> pop, std::vector<Constituent> rhs) {
    LigProduction q;
    q.id = static_cast<std::uint32_t>(out_.productions.size());
    q.name = std::move(name);
    q.lhs = lhs;
    q.lhs_inherits = inherits;
    q.lhs_pop = std::move(pop);
    q.rhs = std::move(rhs);
    out_.productions.push_back(std::move(q));
    origin_.push_back(origin);
  }

  // A() -> a1 ... am  becomes  A(..) -> a1 N1(..), ..., N_{m-2}() -> a_{m-1} a_m.
  // The stack is carried unchanged down the comb and checked empty at its end.
  void split_word(const LigProduction& p) {
    const std::size_t m = p.rhs.size();
    std::uint32_t head = p.lhs;
    for (std::size_t i = 0; i + 2 < m; ++i) {
      std::uint32_t next = fresh_nonterminal(p.lhs);
      emit(i == 0 ? p.id : npos32, fresh_name(p.name, i), head, true, {},
           {p.rhs[i], Constituent::primary(next)});
      head = next;
    }
    emit(npos32, fresh_name(p.name, m - 2), head, false, {}, {p.rhs[m - 2], p.rhs[m - 1]});
  }

  void split_structured(const LigProduction& p) {
    struct Op {
      bool pop;
      std::uint32_t symbol;
    };
    std::vector<Op> ops;
    for (auto it = p.lhs_pop.rbegin(); it != p.lhs_pop.rend(); ++it) ops.push_back({true, *it});

    const std::size_t primary = *p.primary_index();
    for (auto g : p.rhs[primary].stack) ops.push_back({false, g});

    // Left flanks outermost-first, then right flanks outermost-first.
    std::vector<std::pair<bool, Constituent>> flanks;
    for (std::size_t i = 0; i < primary; ++i) flanks.emplace_back(true, p.rhs[i]);
    for (std::size_t i = p.rhs.size(); i-- > primary + 1;) flanks.emplace_back(false, p.rhs[i]);

    // Extra flanks are peeled outermost-first by COPY productions; then one
    // production per stack operation. The innermost flank rides on the last.
    struct Step {
      std::optional<Op> op;
      std::optional<std::pair<bool, Constituent>> flank;
    };
    std::vector<Step> steps;
    for (std::size_t i = 0; i + 1 < flanks.size(); ++i) steps.push_back({std::nullopt, flanks[i]});
    for (const auto& op : ops) steps.push_back({op, std::nullopt});
    if (ops.empty()) steps.push_back({});
    if (!flanks.empty()) steps.back().flank = flanks.back();

    std::uint32_t head = p.lhs;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& step = steps[i];
      std::uint32_t next = i + 1 == steps.size() ? p.rhs[primary].symbol : fresh_nonterminal(p.lhs);

      std::vector<std::uint32_t> pop;
      std::vector<std::uint32_t> push;
      if (step.op) (step.op->pop ? pop : push).push_back(step.op->symbol);

      std::vector<Constituent> rhs;
      if (step.flank && step.flank->first) rhs.push_back(step.flank->second);
      rhs.push_back(Constituent::primary(next, push));
      if (step.flank && !step.flank->first) rhs.push_back(step.flank->second);

      emit(i == 0 ? p.id : npos32, fresh_name(p.name, i), head, true, pop, std::move(rhs));
      head = next;
    }
  }

  const LigGrammar& src_;
  LigGrammar out_;
  std::vector<std::uint32_t> origin_;
  std::size_t counter_ = 0;
};

}  // namespace

NormalizeResult normalize(const LigGrammar& g) { return Normalizer(g).run(); }

}  // namespace ligforge
