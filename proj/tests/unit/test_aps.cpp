#include <gtest/gtest.h>

#include "grid.hpp"
#include "htlg/aps.hpp"
#include "htlg/error.hpp"
#include "htlg/prover.hpp"
#include "htlg/selftest.hpp"
#include "htlg/sequent.hpp"
#include "term_oracle.hpp"

using namespace htlg;

namespace {

const ProsType st = ProsType::st();

Term parse(const std::string& text, const TermEnv& env = {}) { return parseTerm(text, env); }

Lexicon demo() { return Lexicon::load(defaultDataDir() + "/lexica/demo.lex"); }

std::vector<Hyp> everyoneSleeps() {
  Lexicon lex = demo();
  return {lex.lookup("everyone")[0].hyp(), lex.lookup("sleeps")[0].hyp()};
}

std::vector<ProofStructure> linkedStructures(const std::vector<Hyp>& hyps, const Formula& goal) {
  std::vector<ProofStructure> out;
  LinkingEnumerator e{ProofStructure(hyps, goal)};
  e.forEach([&](const Linking& l) { return out.push_back(e.apply(l)), true; });
  return out;
}

int violatedCondition(const APS& g) {
  int c = 0;
  lambdaGraphViolation(g, &c);
  return c;
}

}  // namespace

TEST(TermGraph, RoundTrip) {
  for (const char* text : {"everyone + sleeps", "\\P.P everyone", "\\Q.\\P.\\y.(P eps) + and + (Q y)", "eps",
                           "\\x.the + x"}) {
    Term t = parse(text);
    APS g = termToGraph(t);
    EXPECT_FALSE(lambdaGraphViolation(g)) << text;
    EXPECT_TRUE(equivalent(graphToTerm(g), t)) << text;
    EXPECT_EQ(g.parCount(), 0u);
  }
}

TEST(TermGraph, FreeVariablesBecomeHypotheses) {
  APS g = termToGraph(parse("f x", {{"f", ProsType::arrow(st, st)}, {"x", st}}));
  EXPECT_EQ(g.hypotheses().size(), 2u);
  EXPECT_EQ(g.conclusions().size(), 1u);
}

TEST(TermGraph, RandomNormalTermsRoundTrip) {
  oracle::TermGenerator gen(99);
  for (int i = 0; i < 300; ++i) {
    Term t = normalForm(gen.next(12));
    EXPECT_TRUE(equivalent(graphToTerm(termToGraph(t)), t)) << print(t);
  }
}

TEST(LambdaGraph, TwoConclusions) {
  APS g = termToGraph(parse("a"));
  addTermGraph(g, parse("b"));
  EXPECT_EQ(violatedCondition(g), 1);
  EXPECT_THROW(graphToTerm(g), NotALambdaGraph);
}

TEST(LambdaGraph, ParLinkRemains) {
  ProofStructure ps = linkedStructures(everyoneSleeps(), Formula::atom("s")).at(0);
  EXPECT_EQ(violatedCondition(toAPS(ps)), 2);
}

TEST(LambdaGraph, BoundVertexOutsideItsBody) {
  // (\x.a) (x + w): the bound vertex is used outside the abstraction.
  APS g;
  auto vertex = [&](std::optional<std::string> word = std::nullopt) {
    AVertex v;
    v.word = std::move(word);
    return g.addVertex(v);
  };
  int a = vertex("a"), w = vertex("w"), abs = vertex(), x = vertex(), r = vertex(), res = vertex();
  g.addLink(ALink{LinkType::tensor, LinkIndex::lambda, {a}, {abs, x}});
  g.addLink(ALink{LinkType::tensor, LinkIndex::plus, {x, w}, {r}});
  g.addLink(ALink{LinkType::tensor, LinkIndex::app, {abs, r}, {res}});
  EXPECT_EQ(violatedCondition(g), 3);
  try {
    graphToTerm(g);
    FAIL();
  } catch (const NotALambdaGraph& e) {
    EXPECT_EQ(e.condition(), 3);
  }
}

TEST(Rewrite, BetaOnTermGraphMatchesTermReduction) {
  Term t = parse("(\\P.P everyone) (\\z.z + sleeps)");
  APS g = termToGraph(t);
  auto sites = g.sites(RewriteRule::Beta, Mode::associative);
  ASSERT_EQ(sites.size(), 1u);
  std::size_t before = g.size();
  g.apply(RewriteRule::Beta, sites[0], Mode::associative);
  EXPECT_LT(g.size(), before);
  EXPECT_TRUE(equivalent(graphToTerm(g), *betaStep(t)));
}

TEST(Rewrite, WrongSiteThrows) {
  APS g = termToGraph(parse("everyone + sleeps"));
  EXPECT_TRUE(g.sites(RewriteRule::Beta, Mode::associative).empty());
  EXPECT_THROW(g.apply(RewriteRule::Beta, 0, Mode::associative), SiteMismatch);
  EXPECT_TRUE(g.whyNot(RewriteRule::Beta, 0, Mode::associative));
}

TEST(Rewrite, UnitRulesInNonAssociativeMode) {
  APS g = termToGraph(parse("eps + a"));
  auto sites = g.sites(RewriteRule::EpsL, Mode::nonassociative);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_TRUE(g.whyNot(RewriteRule::EpsL, sites[0], Mode::associative));
  g.apply(RewriteRule::EpsL, sites[0], Mode::nonassociative);
  EXPECT_TRUE(alphaEq(graphToTerm(g), parse("a")));
  EXPECT_TRUE(g.sites(RewriteRule::EpsR, Mode::nonassociative).empty());
}

TEST(Contraction, EveryoneSleepsTrace) {
  ParseRequest req;
  req.tokens = {"everyone", "sleeps"};
  req.goal = Formula::atom("s");
  ParseResult r = parse(req, demo());
  ASSERT_EQ(r.derivations.size(), 1u);
  const Derivation& d = r.derivations[0];
  std::vector<RewriteRule> rules;
  for (const auto& s : d.trace) rules.push_back(s.rule);
  EXPECT_EQ(rules, (std::vector<RewriteRule>{RewriteRule::Beta, RewriteRule::Beta, RewriteRule::LimpI,
                                             RewriteRule::Beta}));
  EXPECT_TRUE(alphaEq(d.term, parse("everyone + sleeps")));
  APS g = toAPS(d.net);
  // Par contractions turn a par into a tensor; every other step shrinks the graph.
  for (const auto& s : d.trace) {
    std::size_t before = g.size(), pars = g.parCount();
    g.apply(s.rule, s.site, Mode::associative);
    if (isParContraction(s.rule)) {
      EXPECT_EQ(g.size(), before);
      EXPECT_EQ(g.parCount(), pars - 1);
    } else {
      EXPECT_LT(g.size(), before);
    }
  }
  EXPECT_FALSE(lambdaGraphViolation(g));
}

TEST(Contraction, OnlyOneLinkingContracts) {
  auto nets = linkedStructures(everyoneSleeps(), Formula::atom("s"));
  ASSERT_EQ(nets.size(), 2u);
  std::size_t good = 0;
  for (const auto& ps : nets) {
    auto outcomes = allStrategyOutcomes(toAPS(ps), Mode::associative, false);
    ASSERT_EQ(outcomes.size(), 1u);
    ContractionResult c = contractToLambdaGraph(toAPS(ps));
    EXPECT_EQ(outcomes[0].success, c.success);
    if (c.success) {
      ++good;
      EXPECT_EQ(outcomes[0].termKey, termKey(*c.term));
      EXPECT_LE(c.trace.size(), c.initialSize);
    } else {
      EXPECT_FALSE(c.stuckPars.empty());
      EXPECT_FALSE(c.diagnostics.empty());
    }
  }
  EXPECT_EQ(good, 1u);
}

TEST(Contraction, ReplayReproducesTheResult) {
  for (const auto& ps : linkedStructures(everyoneSleeps(), Formula::atom("s"))) {
    ContractionResult c = contractToLambdaGraph(toAPS(ps));
    if (!c.success) continue;
    APS again = replayTrace(toAPS(ps), c.trace);
    EXPECT_EQ(termKey(canonical(graphToTerm(again))), termKey(*c.term));
  }
}

TEST(Contraction, InvalidTraceRejected) {
  auto nets = linkedStructures(everyoneSleeps(), Formula::atom("s"));
  std::vector<TraceStep> bogus{{RewriteRule::LimpI, 12345}};
  EXPECT_THROW(replayTrace(toAPS(nets[0]), bogus), Error);
}

TEST(Properties, RandomTermGraphsContractToNormalForm) {
  oracle::TermGenerator gen(4242);
  std::size_t withBeta = 0;
  for (int i = 0; i < 300; ++i) {
    Term t = gen.next(12);
    APS g = termToGraph(t);
    withBeta += !g.sites(RewriteRule::Beta, Mode::associative).empty();
    ContractionResult c = contractToLambdaGraph(g);
    ASSERT_TRUE(c.success) << print(t);
    EXPECT_EQ(termKey(*c.term), termKey(canonical(normalForm(t)))) << print(t);
    EXPECT_LE(c.trace.size(), c.initialSize);
  }
  EXPECT_GT(withBeta, 50u);
}

TEST(Properties, RewriteOrderDoesNotMatter) {
  const std::vector<std::string> atoms{"np", "s"};
  auto pool = grid::formulas(atoms, 1, false);
  std::size_t checked = 0;
  grid::forEachMultiset(pool.size(), 3, [&](const std::vector<std::size_t>& idx) {
    std::vector<Formula> ante;
    for (auto i : idx) ante.push_back(pool[i]);
    for (const auto& goal : pool) {
      if (!balanced(ante, goal)) continue;
      for (const auto& ps : linkedStructures(grid::hypotheses(ante), goal)) {
        APS g = toAPS(ps);
        if (g.links().size() > 12) continue;
        for (bool eta : {false, true}) {
          auto outcomes = allStrategyOutcomes(g, Mode::associative, eta);
          EXPECT_EQ(outcomes.size(), 1u);
          ContractionResult c = contractToLambdaGraph(g, Mode::associative, eta);
          EXPECT_EQ(outcomes.at(0).success, c.success);
          if (c.success) {
            EXPECT_EQ(outcomes[0].termKey, termKey(*c.term));
          }
        }
        ++checked;
      }
    }
  });
  EXPECT_GT(checked, 100u);
}
