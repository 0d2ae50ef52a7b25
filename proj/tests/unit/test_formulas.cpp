#include <gtest/gtest.h>

#include <random>

#include "grid.hpp"
#include "htlg/error.hpp"
#include "htlg/formula.hpp"

using namespace htlg;

namespace {

const ProsType st = ProsType::st();

Formula f(const char* text) { return parseFormula(text); }

Formula randomFormula(std::mt19937& rng, int depth, bool lambek) {
  if (depth == 0 || rng() % 5 == 0) return Formula::atom(rng() % 2 ? "np" : "s");
  unsigned op = lambek ? rng() % 2 : rng() % 3;
  if (op == 2) return Formula::limp(randomFormula(rng, depth - 1, false), randomFormula(rng, depth - 1, false));
  Formula a = randomFormula(rng, depth - 1, true), b = randomFormula(rng, depth - 1, true);
  return op == 0 ? Formula::over(a, b) : Formula::under(a, b);
}

}  // namespace

TEST(Pros, LambekVerbIsString) { EXPECT_EQ(pros(f("(np\\s)/np")), st); }

TEST(Pros, QuantifierIsHigherOrder) {
  EXPECT_EQ(pros(f("(np -o s) -o s")), ProsType::arrow(ProsType::arrow(st, st), st));
}

TEST(Pros, AtomIsString) { EXPECT_EQ(pros(f("np")), st); }

TEST(IsLambek, Examples) {
  EXPECT_TRUE(f("((np\\s)/np)/np").isLambek());
  EXPECT_FALSE(f("np -o (np -o s)").isLambek());
  EXPECT_TRUE(f("s").isLambek());
}

TEST(ParseFormula, SlashesBuildOverAndUnder) {
  Formula v = f("(np\\s)/np");
  ASSERT_EQ(v.kind(), FormulaKind::Over);
  EXPECT_EQ(v.arg(), Formula::atom("np"));
  ASSERT_EQ(v.result().kind(), FormulaKind::Under);
  EXPECT_EQ(v.result().arg(), Formula::atom("np"));
  EXPECT_EQ(v.result().result(), Formula::atom("s"));
}

TEST(ParseFormula, LinearImplication) { EXPECT_EQ(f("np -o s"), Formula::limp(Formula::atom("np"), Formula::atom("s"))); }

TEST(ParseFormula, LimpAssociatesRight) {
  EXPECT_EQ(f("np -o np -o s"), f("np -o (np -o s)"));
  EXPECT_NE(f("np -o np -o s"), f("(np -o np) -o s"));
}

TEST(ParseFormula, LimpUnderSlashIsRejected) {
  EXPECT_THROW(f("(np -o s)/np"), WellFormednessError);
  EXPECT_THROW(f("np\\(np -o s)"), WellFormednessError);
}

TEST(ParseFormula, NestedSlashesNeedParentheses) {
  EXPECT_THROW(f("a/b/c"), SyntaxError);
  EXPECT_THROW(f("np\\s/np"), SyntaxError);
}

TEST(ParseFormula, UndeclaredAtomRejectedWhenAtomsGiven) {
  std::set<std::string> atoms{"np", "s"};
  EXPECT_NO_THROW(parseFormula("np/s", &atoms));
  EXPECT_THROW(parseFormula("np/n", &atoms), WellFormednessError);
}

TEST(ParseFormula, SyntaxErrors) {
  EXPECT_THROW(f(""), SyntaxError);
  EXPECT_THROW(f("(np"), SyntaxError);
  EXPECT_THROW(f("np -o"), SyntaxError);
  EXPECT_THROW(f("np s"), SyntaxError);
}

TEST(Stratification, SlashAcceptsExactlyLambekOperands) {
  auto pool = grid::formulas({"np", "s"}, 1, false);
  for (const auto& a : pool)
    for (const auto& b : pool) {
      bool ok = a.isLambek() && b.isLambek();
      for (const std::string op : {"/", "\\"}) {
        std::string text = "(" + a.str() + ")" + op + "(" + b.str() + ")";
        if (ok) EXPECT_NO_THROW(parseFormula(text)) << text;
        else EXPECT_THROW(parseFormula(text), WellFormednessError) << text;
      }
      EXPECT_NO_THROW(parseFormula("(" + a.str() + ") -o (" + b.str() + ")"));
    }
}

TEST(Properties, PrintParseRoundTripExhaustiveToDepthThree) {
  auto all = grid::formulas({"np", "s"}, 3, false);
  EXPECT_EQ(grid::formulas({"np", "s"}, 2, false).size(), 398u);
  for (const auto& x : all) {
    Formula back = parseFormula(x.str());
    ASSERT_EQ(back, x) << x.str();
  }
}

TEST(Properties, PrintParseRoundTripSampledToDepthSix) {
  std::mt19937 rng(5);
  for (int i = 0; i < 20000; ++i) {
    Formula x = randomFormula(rng, 6, rng() % 2);
    ASSERT_EQ(parseFormula(x.str()), x) << x.str();
  }
}

TEST(Properties, StringTypeExactlyForLambekFormulas) {
  for (const auto& x : grid::formulas({"np", "s"}, 2, false)) EXPECT_EQ(pros(x) == st, x.isLambek()) << x.str();
}

TEST(Properties, SubformulasAreClosedAndContainTheFormula) {
  for (const auto& x : grid::formulas({"np", "s"}, 2, false)) {
    auto subs = subformulas(x);
    EXPECT_NE(std::find(subs.begin(), subs.end(), x), subs.end());
    for (const auto& s : subs)
      if (!s.isAtom()) {
        EXPECT_NE(std::find(subs.begin(), subs.end(), s.arg()), subs.end());
        EXPECT_NE(std::find(subs.begin(), subs.end(), s.result()), subs.end());
      }
    EXPECT_LE(subs.size(), static_cast<std::size_t>(2 * x.degree() + 1));
  }
}

TEST(Instantiate, SchemaAtSlashType) {
  Formula schema = parseFormula("(X\\X)/X", nullptr, {"X"});
  Formula inst = instantiate(schema, "X", f("s/np"));
  EXPECT_EQ(inst, f("((s/np)\\(s/np))/(s/np)"));
  EXPECT_THROW(instantiate(schema, "X", f("np -o s")), WellFormednessError);
}
