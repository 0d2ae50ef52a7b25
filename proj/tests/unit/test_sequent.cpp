#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cut_gen.hpp"
#include "htlg/error.hpp"
#include "htlg/io.hpp"
#include "htlg/selftest.hpp"
#include "htlg/sequent.hpp"
#include "nd_gen.hpp"

using namespace htlg;

namespace {

const Formula np = Formula::atom("np");
const Formula s = Formula::atom("s");
const ProsType st = ProsType::st();

Formula f(const char* text) { return parseFormula(text); }

std::vector<Hyp> hyps(const std::vector<Formula>& fs) {
  std::vector<Hyp> out;
  for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(Hyp::logical("x" + std::to_string(i + 1), fs[i]));
  return out;
}

bool usesRule(const SeqProof& p, SeqRule r) {
  bool found = false;
  forEachNode<SeqRule>(p, [&](const SeqNode& n, const std::string&) { found = found || n.rule == r; });
  return found;
}

ProofFile fixture(const std::string& name) {
  std::ifstream in(defaultDataDir() + "/fixtures/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return readProofFile(buf.str());
}

// x:np, f:np -o s => f x : s by LimpL on an axiom pair.
SeqProof applyToAxiom() { return seq::limpL(seq::ax("x", np), seq::ax("r", s), "r", "f"); }

}  // namespace

TEST(Rules, LimpLeftBuildsApplication) {
  SeqProof p = applyToAxiom();
  EXPECT_TRUE(equivalent(p->conclusion.term, parseTerm("f x", {{"f", ProsType::arrow(st, st)}, {"x", st}})));
  EXPECT_EQ(p->conclusion.formula, s);
  EXPECT_FALSE(checkSeq(p));
}

TEST(Rules, OverLeftConcatenatesOnTheRight) {
  SeqProof p = seq::overL(seq::ax("x", np), seq::ax("r", s), "r", "v");
  EXPECT_TRUE(equivalent(p->conclusion.term, parseTerm("v + x", {{"v", st}, {"x", st}})));
  SeqProof q = seq::underL(seq::ax("x", np), seq::ax("r", s), "r", "v");
  EXPECT_TRUE(equivalent(q->conclusion.term, parseTerm("x + v", {{"v", st}, {"x", st}})));
}

TEST(Rules, RightRulesDischargeAtTheEdge) {
  SeqProof body = seq::overL(seq::ax("x", np), seq::ax("r", s), "r", "v");
  EXPECT_EQ(seq::overR(body, "x")->conclusion.formula, f("s/np"));
  EXPECT_THROW(seq::underR(body, "x"), RuleError);
  EXPECT_EQ(seq::limpR(body, "x")->conclusion.formula, f("np -o s"));
}

TEST(Rules, PrincipalVariableMustBeFresh) {
  EXPECT_THROW(seq::limpL(seq::ax("x", np), seq::ax("r", s), "r", "x"), RuleError);
}

TEST(Rules, CutSubstitutes) {
  Lexicon lex = Lexicon::load(defaultDataDir() + "/lexica/demo.lex");
  SeqProof left = seq::lex(seq::ax("y", f("np -o s")), "y", lex.lookup("sleeps")[0]);
  SeqProof p = seq::cut(left, applyToAxiom(), "f");
  EXPECT_FALSE(checkSeq(p));
  EXPECT_FALSE(cutFree(p));
  EXPECT_TRUE(equivalent(p->conclusion.term, parseTerm("x + sleeps", {{"x", st}})));
}

TEST(Check, TamperedNodeIsReported) {
  auto bad = std::make_shared<SeqNode>(*applyToAxiom());
  bad->conclusion.formula = np;
  auto v = checkSeq(bad);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->path, "root");
}

TEST(CutCases, Classification) {
  SeqProof axiomLeft = seq::cut(seq::ax("z", np), applyToAxiom(), "x");
  EXPECT_EQ(classifyCut(axiomLeft), CutCase::axiom);

  // Principal -o cut: LimpR against LimpL on the cut formula.
  SeqProof fn = seq::limpR(applyToAxiom(), "x");  // f => \x.f x : np -o s
  SeqProof use = seq::limpL(seq::ax("a", np), seq::ax("r", s), "r", "g");
  SeqProof principal = seq::cut(fn, use, "g");
  EXPECT_EQ(classifyCut(principal), CutCase::principal);

  SeqProof leftComm = seq::cut(applyToAxiom(), seq::ax("w", s), "w");
  EXPECT_NE(classifyCut(leftComm), CutCase::principal);
}

TEST(CutElimination, PrincipalLimpCut) {
  SeqProof fn = seq::limpR(applyToAxiom(), "x");
  SeqProof use = seq::limpL(seq::ax("a", np), seq::ax("r", s), "r", "g");
  SeqProof p = seq::cut(fn, use, "g");
  CutStats stats;
  SeqProof q = eliminateCuts(p, Mode::associative, &stats);
  EXPECT_TRUE(cutFree(q));
  EXPECT_FALSE(checkSeq(q));
  EXPECT_TRUE(equivalent(q->conclusion.term, p->conclusion.term));
  EXPECT_TRUE(sameAntecedent(q->conclusion.antecedent, p->conclusion.antecedent));
  EXPECT_GE(stats.byCase[CutCase::principal], 1u);
  EXPECT_EQ(stats.measureViolations, 0u);
}

TEST(CutElimination, AxiomCutDisappears) {
  SeqProof p = seq::cut(seq::ax("z", np), applyToAxiom(), "x");
  CutStats stats;
  SeqProof q = eliminateCuts(p, Mode::associative, &stats);
  EXPECT_TRUE(cutFree(q));
  EXPECT_EQ(stats.steps, 1u);
  EXPECT_EQ(proofSize(q), 3u);
}

TEST(CutElimination, CutFreeProofUnchanged) {
  CutStats stats;
  SeqProof q = eliminateCuts(applyToAxiom(), Mode::associative, &stats);
  EXPECT_EQ(stats.steps, 0u);
  EXPECT_EQ(proofSize(q), 3u);
}

TEST(Search, ApplicationInBothOrders) {
  EXPECT_EQ(proveSeq(hyps({np, f("np\\s")}), s).size(), 1u);
  EXPECT_TRUE(proveSeq(hyps({f("np\\s"), np}), s).size() == 1u);  // antecedents are multisets
  EXPECT_EQ(proveSeq(hyps({f("np -o s"), np}), s).size(), 1u);
}

TEST(Search, TypeRaising) {
  auto ps = proveSeq(hyps({np}), f("s/(np\\s)"));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_FALSE(checkSeq(ps[0]));
  EXPECT_TRUE(cutFree(ps[0]));
}

TEST(Search, Unprovable) {
  EXPECT_TRUE(proveSeq(hyps({np, np}), s).empty());
  EXPECT_TRUE(proveSeq(hyps({f("s/np")}), f("np\\s")).empty());
}

TEST(Search, TwoQuantifierScopes) {
  Formula q = f("(np -o s) -o s");
  auto ps = proveSeq(hyps({q, q, f("np -o np -o s")}), s);
  // Two scope orders times two ways of filling the verb's argument slots.
  EXPECT_EQ(ps.size(), 4u);
  auto first = proveSeq(hyps({q, q, f("np -o np -o s")}), s, SearchOptions{Mode::associative, true, 0});
  EXPECT_EQ(first.size(), 1u);
}

TEST(Search, LambekSequentsUseNoLinearRules) {
  for (const auto& p : proveSeq(hyps({f("s/(np\\s)"), f("(np\\s)/np"), np}), s)) {
    EXPECT_FALSE(usesRule(p, SeqRule::LimpL));
    EXPECT_FALSE(usesRule(p, SeqRule::LimpR));
  }
}

TEST(Balance, CountsOccurrences) {
  auto b = atomBalance({np, f("np\\s")}, s);
  EXPECT_EQ(b["np"], 0);
  EXPECT_EQ(b["s"], 0);
  EXPECT_TRUE(balanced({np, f("np\\s")}, s));
  EXPECT_FALSE(balanced({np}, s));
}

TEST(Translation, FixturesToSequentsAndBack) {
  for (const char* name : {"scope_nd.json", "coordination_nd.json"}) {
    NDProof p = fixture(name).nd;
    SeqProof q = ndToSeq(p);
    EXPECT_FALSE(checkSeq(q)) << name;
    EXPECT_TRUE(cutFree(eliminateCuts(q))) << name;
    NDProof back = seqToND(q);
    EXPECT_FALSE(checkND(back)) << name;
    EXPECT_TRUE(equivalent(back->conclusion.term, p->conclusion.term)) << name;
    EXPECT_EQ(ndCanonicalKey(back), ndCanonicalKey(normalizeND(p))) << name;
  }
}

TEST(Translation, RandomProofsRoundTrip) {
  gen::NDGenerator g(11, gen::shippedEntries(defaultDataDir()), gen::NDGenOptions{12, 2, 24});
  std::size_t n = 0;
  while (n < 300) {
    for (const auto& p : g.round()) {
      SeqProof q = ndToSeq(p);
      ASSERT_FALSE(checkSeq(q));
      NDProof back = seqToND(q);
      ASSERT_FALSE(checkND(back));
      EXPECT_TRUE(sameAntecedent(back->conclusion.antecedent, p->conclusion.antecedent));
      EXPECT_EQ(back->conclusion.formula, p->conclusion.formula);
      EXPECT_TRUE(equivalent(back->conclusion.term, p->conclusion.term));
      SeqProof again = ndToSeq(back);
      EXPECT_TRUE(equivalent(again->conclusion.term, q->conclusion.term));
      ++n;
    }
  }
}

TEST(CutElimination, InjectedCutsDisappear) {
  gen::CutInjector inj(3, gen::shippedEntries(defaultDataDir()));
  std::map<CutCase, int> seen;
  for (int i = 0; i < 150; ++i) {
    gen::CutSample c = inj.next();
    ASSERT_FALSE(checkSeq(c.proof));
    ASSERT_GE(c.cuts, 1);
    CutStats stats;
    SeqProof q = eliminateCuts(c.proof, Mode::associative, &stats);
    EXPECT_TRUE(cutFree(q));
    EXPECT_FALSE(checkSeq(q));
    EXPECT_TRUE(sameAntecedent(q->conclusion.antecedent, c.proof->conclusion.antecedent));
    EXPECT_EQ(q->conclusion.formula, c.proof->conclusion.formula);
    EXPECT_TRUE(equivalent(q->conclusion.term, c.proof->conclusion.term));
    EXPECT_EQ(stats.measureViolations, 0u);
    ++seen[c.injectedCase];
  }
  EXPECT_GT(seen[CutCase::principal], 0);
  EXPECT_GT(seen[CutCase::axiom], 0);
}

TEST(Freshen, KeepsEndsequentNames) {
  SeqProof p = seq::limpR(applyToAxiom(), "x");
  SeqProof q = freshenVariables(p);
  EXPECT_FALSE(checkSeq(q));
  EXPECT_TRUE(sameAntecedent(q->conclusion.antecedent, p->conclusion.antecedent));
  SeqProof r = renameFreeVariables(p, {{"f", "g"}});
  EXPECT_EQ(r->conclusion.antecedent.at(0).name, "g");
  EXPECT_FALSE(checkSeq(r));
}
