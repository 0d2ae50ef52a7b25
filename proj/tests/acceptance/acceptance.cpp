#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cut_gen.hpp"
#include "grid.hpp"
#include "htlg/aps.hpp"
#include "htlg/io.hpp"
#include "htlg/nd.hpp"
#include "htlg/proof_net.hpp"
#include "htlg/prover.hpp"
#include "htlg/selftest.hpp"
#include "htlg/sequent.hpp"
#include "lambek_oracle.hpp"
#include "nd_gen.hpp"

using namespace htlg;

namespace {

struct Bounds {
  int gridDegree = 5;
  std::size_t gridSample = 20000;
  int lambekDegree = 6;
  std::size_t lambekSample = 20000;
  std::size_t ndProofs = 1000;
  std::size_t cutProofs = 500;
  int contractionDegree = 4;
};

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::string sequentText(const std::vector<Formula>& ante, const Formula& goal) {
  std::string out;
  for (std::size_t i = 0; i < ante.size(); ++i) out += (i ? ", " : "") + ante[i].str();
  return out + " => " + goal.str();
}

int degreeOf(const std::vector<Formula>& ante, const Formula& goal) {
  int d = goal.degree();
  for (const auto& f : ante) d += f.degree();
  return d;
}

// Formulas of depth <= 2 over np and s, cheapest first.
std::vector<Formula> pool(bool lambekOnly) {
  auto out = grid::formulas({"np", "s"}, 2, lambekOnly);
  std::stable_sort(out.begin(), out.end(), [](const Formula& a, const Formula& b) { return a.degree() < b.degree(); });
  return out;
}

// Antecedents of 1 to 3 formulas and a goal, all from `formulas`, total degree <= maxDegree.
// Multisets when `ordered` is false, sequences otherwise.
void forEachSequent(const std::vector<Formula>& formulas, int maxDegree, bool ordered,
                    const std::function<void(const std::vector<Formula>&, const Formula&)>& f) {
  std::vector<Formula> ante;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int budget) {
    if (!ante.empty())
      for (const auto& goal : formulas) {
        if (goal.degree() > budget) break;
        f(ante, goal);
      }
    if (ante.size() == 3) return;
    for (std::size_t i = ordered ? 0 : from; i < formulas.size(); ++i) {
      if (formulas[i].degree() > budget) break;
      ante.push_back(formulas[i]);
      rec(i, budget - formulas[i].degree());
      ante.pop_back();
    }
  };
  rec(0, maxDegree);
}

// Random balanced sequents of total degree above `minDegree`.
void forEachSampled(const std::vector<Formula>& formulas, int minDegree, std::size_t count, unsigned seed,
                    const std::function<void(const std::vector<Formula>&, const Formula&)>& f) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, formulas.size() - 1);
  std::uniform_int_distribution<int> length(1, 3);
  for (std::size_t done = 0; done < count;) {
    std::vector<Formula> ante;
    for (int n = length(rng); n > 0; --n) ante.push_back(formulas[pick(rng)]);
    const Formula& goal = formulas[pick(rng)];
    if (degreeOf(ante, goal) <= minDegree || !balanced(ante, goal)) continue;
    f(ante, goal);
    ++done;
  }
}

Outcome fromSelftest(int criterion) {
  for (const auto& line : runSelftest(defaultDataDir()))
    if (line.criterion == criterion) return {line.pass, line.detail};
  return {false, "no selftest line"};
}

// Derivability by proof nets and by sequent search on logical hypotheses.
Outcome calculusEquivalence(const Bounds& b) {
  auto start = Clock::now();
  auto formulas = pool(false);
  std::size_t checked = 0, derivable = 0, disagreements = 0;
  std::string first;
  auto compare = [&](const std::vector<Formula>& ante, const Formula& goal) {
    auto hyps = grid::hypotheses(ante);
    NetSearchOptions opts;
    opts.maxResults = 1;
    opts.sequentialise = false;
    bool byNets = !proveNets(hyps, goal, opts).empty();
    bool bySequents = !proveSeq(hyps, goal, SearchOptions{Mode::associative, true, 0}).empty();
    ++checked;
    derivable += bySequents;
    if (byNets != bySequents) {
      if (!disagreements++) first = sequentText(ante, goal) + (byNets ? " (nets only)" : " (sequents only)");
    }
  };
  forEachSequent(formulas, b.gridDegree, false, compare);
  std::size_t exhaustive = checked;
  forEachSampled(formulas, b.gridDegree, b.gridSample, 4, compare);
  double t = since(start);
  std::ostringstream out;
  out << exhaustive << " sequents of degree <= " << b.gridDegree << " and " << checked - exhaustive
      << " sampled above, " << derivable << " derivable, " << disagreements << " disagreements";
  if (disagreements) out << ", first " << first;
  out << ", " << seconds(t);
  return {disagreements == 0 && t < 600, out.str()};
}

// Longest conversion sequence and the set of normal forms reachable from `p`.
struct Reach {
  std::size_t longest;
  std::set<std::string> normals;
};

Reach explore(const NDProof& p, std::map<std::string, Reach>& memo) {
  std::string key = ndCanonicalKey(p);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Reach r{0, {}};
  auto redexes = ndRedexes(p);
  if (redexes.empty()) r.normals.insert(key);
  for (const auto& x : redexes) {
    Reach next = explore(ndConvertAt(p, x), memo);
    r.longest = std::max(r.longest, next.longest + 1);
    r.normals.insert(next.normals.begin(), next.normals.end());
  }
  return memo[key] = r;
}

Outcome normalization(const Bounds& b) {
  gen::NDGenerator g(5, gen::shippedEntries(defaultDataDir()), gen::NDGenOptions{15, 2, 24});
  std::size_t checked = 0, withDetours = 0, totalSteps = 0, failures = 0;
  std::string first;
  auto fail = [&](const NDProof& p, const std::string& why) {
    if (!failures++) first = why + " on " + renderText(p);
  };
  while (checked < b.ndProofs)
    for (const auto& p : g.round()) {
      if (checked >= b.ndProofs) break;
      ++checked;
      if (checkND(p)) {
        fail(p, "generated proof does not check");
        continue;
      }
      std::size_t size = proofSize(p);
      withDetours += gen::hasDetour(p);
      NormalizeStats stats;
      NDProof n = normalizeND(p, Mode::associative, &stats);
      totalSteps += stats.steps;
      if (stats.steps > size) fail(p, "more steps than nodes");
      if (!isNormal(n)) fail(p, "result not normal");
      if (checkND(n)) fail(p, "result does not check");
      if (!sameAntecedent(n->conclusion.antecedent, p->conclusion.antecedent) ||
          n->conclusion.formula != p->conclusion.formula)
        fail(p, "endsequent changed");
      if (!equivalent(n->conclusion.term, p->conclusion.term)) fail(p, "term changed");
      if (subformulaCheck(n)) fail(p, "subformula property violated");
      std::map<std::string, Reach> memo;
      Reach r = explore(p, memo);
      if (r.longest > size) fail(p, "a conversion sequence is longer than the proof");
      if (r.normals.size() != 1 || *r.normals.begin() != ndCanonicalKey(n)) fail(p, "strategies disagree");
    }
  std::ostringstream out;
  out << checked << " proofs, " << withDetours << " with detours, " << totalSteps << " conversions, " << failures
      << " failures";
  if (failures) out << ", first: " << first;
  return {failures == 0 && checked >= 1000 && withDetours > 0, out.str()};
}

std::string caseName(CutCase c) {
  switch (c) {
    case CutCase::axiom: return "axiom";
    case CutCase::leftCommutative: return "left-commutative";
    case CutCase::rightCommutative: return "right-commutative";
    case CutCase::principal: return "principal";
  }
  return "?";
}

std::string kindName(FormulaKind k) {
  switch (k) {
    case FormulaKind::Atom: return "atom";
    case FormulaKind::Over: return "/";
    case FormulaKind::Under: return "\\";
    case FormulaKind::Limp: return "-o";
  }
  return "?";
}

Outcome cutElimination(const Bounds& b) {
  gen::CutInjector inj(6, gen::shippedEntries(defaultDataDir()));
  std::map<CutCase, std::size_t> injected, reduced;
  std::set<FormulaKind> principalKinds;
  std::size_t failures = 0, steps = 0;
  std::string first;
  for (std::size_t i = 0; i < b.cutProofs; ++i) {
    gen::CutSample c = inj.next();
    auto fail = [&](const std::string& why) {
      if (!failures++) first = why + " on " + renderText(c.proof);
    };
    ++injected[c.injectedCase];
    if (c.injectedCase == CutCase::principal) principalKinds.insert(c.cutKind);
    if (checkSeq(c.proof) || c.cuts < 1) {
      fail("bad input");
      continue;
    }
    CutStats stats;
    SeqProof q = eliminateCuts(c.proof, Mode::associative, &stats);
    steps += stats.steps;
    for (const auto& [k, n] : stats.byCase) reduced[k] += n;
    if (!cutFree(q)) fail("cut remains");
    if (checkSeq(q)) fail("result does not check");
    if (!sameAntecedent(q->conclusion.antecedent, c.proof->conclusion.antecedent) ||
        q->conclusion.formula != c.proof->conclusion.formula)
      fail("endsequent changed");
    if (!equivalent(q->conclusion.term, c.proof->conclusion.term)) fail("term changed");
    if (stats.measureViolations) fail("measure did not decrease");
  }
  bool covered = injected[CutCase::axiom] && reduced[CutCase::leftCommutative] &&
                 reduced[CutCase::rightCommutative] && principalKinds.count(FormulaKind::Over) &&
                 principalKinds.count(FormulaKind::Under) && principalKinds.count(FormulaKind::Limp);
  std::ostringstream out;
  out << b.cutProofs << " proofs, " << steps << " reductions (";
  bool sep = false;
  for (const auto& [k, n] : reduced) out << (sep ? ", " : "") << caseName(k) << " " << n, sep = true;
  out << "), principal cuts on";
  for (auto k : principalKinds) out << " " << kindName(k);
  out << ", " << failures << " failures";
  if (!covered) out << ", coverage incomplete";
  if (failures) out << ", first: " << first;
  return {failures == 0 && covered && b.cutProofs >= 500, out.str()};
}

// Right rules are invertible in the Lambek calculus: move the goal's arguments into the
// antecedent until the goal is atomic, so that the yield check applies.
void uncurry(std::vector<Formula>& ante, Formula& goal) {
  while (!goal.isAtom()) {
    if (goal.kind() == FormulaKind::Over)
      ante.push_back(goal.arg());
    else
      ante.insert(ante.begin(), goal.arg());
    goal = goal.result();
  }
}

Outcome conservativity(const Bounds& b) {
  auto start = Clock::now();
  auto formulas = pool(true);
  std::size_t checked = 0, derivable = 0, disagreements = 0;
  std::string first;
  std::unique_ptr<oracle::LambekProver> lambek;
  auto compare = [&](const std::vector<Formula>& ante, const Formula& goal) {
    if (checked % 20000 == 0) lambek = std::make_unique<oracle::LambekProver>();
    ++checked;
    bool expected = lambek->derivable(ante, goal);
    derivable += expected;
    std::vector<Formula> flat = ante;
    Formula atomic = goal;
    uncurry(flat, atomic);
    NetSearchOptions opts;
    opts.maxResults = 1;
    opts.sequentialise = false;
    opts.expectedYield = grid::names(flat.size());
    bool byNets = !proveNets(grid::hypotheses(flat), atomic, opts).empty();
    if (byNets != expected)
      if (!disagreements++) first = sequentText(ante, goal) + (byNets ? " (nets only)" : " (oracle only)");
  };
  forEachSequent(formulas, b.lambekDegree, true, compare);
  std::size_t exhaustive = checked;
  forEachSampled(formulas, b.lambekDegree, b.lambekSample, 7, compare);
  std::ostringstream out;
  out << exhaustive << " ordered sequents of degree <= " << b.lambekDegree << " and " << checked - exhaustive
      << " sampled above, " << derivable << " derivable, " << disagreements << " disagreements";
  if (disagreements) out << ", first " << first;
  out << ", " << seconds(since(start));
  return {disagreements == 0, out.str()};
}

struct ContractionTally {
  std::size_t runs = 0, contracted = 0, worst = 0, over = 0;
  double worstRatio = 0;
  std::string first;

  void add(const ContractionResult& c, const std::string& what) {
    ++runs;
    contracted += c.success;
    worst = std::max(worst, c.trace.size());
    if (c.initialSize) worstRatio = std::max(worstRatio, double(c.trace.size()) / double(c.initialSize));
    if (c.trace.size() > c.initialSize && !over++) first = what;
  }
};

// Every linking of `hyps => goal`, contracted in both modes with and without eta.
void contractAll(const std::vector<Hyp>& hyps, const Formula& goal, const std::string& what, ContractionTally& t) {
  LinkingEnumerator e{ProofStructure(hyps, goal)};
  if (e.mismatch()) return;
  e.forEach([&](const Linking& l) {
    APS g = toAPS(e.apply(l));
    for (Mode m : {Mode::associative, Mode::nonassociative})
      for (bool eta : {false, true}) t.add(contractToLambdaGraph(g, m, eta), what);
    return true;
  });
}

Outcome contractionBound(const Bounds& b) {
  const std::string dir = defaultDataDir();
  const std::vector<std::pair<std::string, std::string>> sentences{
      {"demo.lex", "everyone sleeps"},
      {"demo.lex", "sleeps everyone"},
      {"scope.lex", "someone delivers everything to its destination"},
      {"scope_printed.lex", "someone delivers everything to its destination"},
      {"linear_coord.lex", "Ahmed loves and Johani dislikes the pizza"},
      {"linear_coord.lex", "Ahmed loves and the pizza dislikes Johani"},
      {"lambek_coord.lex", "Ahmed loves and Johani dislikes the pizza"},
      {"lambek_coord.lex", "Ahmed loves and the pizza dislikes Johani"},
  };
  ContractionTally t;
  for (const auto& [lexicon, sentence] : sentences) {
    Lexicon lex = Lexicon::load(dir + "/lexica/" + lexicon);
    std::vector<std::vector<LexEntry>> choices;
    std::istringstream in(sentence);
    for (std::string w; in >> w;) choices.push_back(lex.lookup(w));
    std::vector<Hyp> hyps;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == choices.size()) return contractAll(hyps, Formula::atom("s"), lexicon + ": " + sentence, t);
      for (const auto& entry : choices[i]) {
        hyps.push_back(entry.hyp());
        rec(i + 1);
        hyps.pop_back();
      }
    };
    rec(0);
  }
  std::size_t sentenceRuns = t.runs;
  forEachSequent(pool(false), b.contractionDegree, false, [&](const std::vector<Formula>& ante, const Formula& goal) {
    if (balanced(ante, goal)) contractAll(grid::hypotheses(ante), goal, sequentText(ante, goal), t);
  });
  for (const char* name : {"scope_nd.json", "coordination_nd.json"}) {
    std::ifstream file(dir + "/fixtures/" + name);
    std::stringstream buf;
    buf << file.rdbuf();
    NetFromND n = netFromND(readProofFile(buf.str()).nd);
    t.add(contractToLambdaGraph(toAPS(n.net)), name);
  }
  std::ostringstream out;
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.2f", t.worstRatio);
  out << t.runs << " contractions (" << sentenceRuns << " from sentences), " << t.contracted
      << " reached a lambda graph, longest " << t.worst << " steps, worst steps/size " << ratio << ", " << t.over
      << " over the bound";
  if (t.over) out << ", first " << t.first;
  return {t.over == 0, out.str()};
}

Outcome run(int criterion, const Bounds& b) {
  switch (criterion) {
    case 1:
    case 2:
    case 3: return fromSelftest(criterion);
    case 4: return calculusEquivalence(b);
    case 5: return normalization(b);
    case 6: return cutElimination(b);
    case 7: return conservativity(b);
    case 8: return contractionBound(b);
  }
  return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> criteria;
  Bounds b;
  app.add_option("--criterion", criteria, "Criteria to run (default all)")->check(CLI::Range(1, 8));
  app.add_option("--grid-degree", b.gridDegree, "Exhaustive total degree for the calculus grid");
  app.add_option("--grid-sample", b.gridSample, "Sampled sequents above the exhaustive degree");
  app.add_option("--lambek-degree", b.lambekDegree, "Exhaustive total degree for the Lambek grid");
  app.add_option("--lambek-sample", b.lambekSample, "Sampled Lambek sequents above the exhaustive degree");
  app.add_option("--nd-proofs", b.ndProofs, "Random natural deduction proofs");
  app.add_option("--cut-proofs", b.cutProofs, "Sequent proofs with injected cuts");
  app.add_option("--contraction-degree", b.contractionDegree, "Total degree of grid sequents contracted");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8};

  bool ok = true;
  for (int c : criteria) {
    Outcome o;
    try {
      o = run(c, b);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
