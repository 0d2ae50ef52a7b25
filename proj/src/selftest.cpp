#include "htlg/selftest.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "htlg/error.hpp"
#include "htlg/io.hpp"
#include "htlg/prover.hpp"

#ifndef HTLG_DATA_DIR
#define HTLG_DATA_DIR "data"
#endif

namespace htlg {

std::string defaultDataDir() { return HTLG_DATA_DIR; }

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

ParseResult run(const Lexicon& lex, const std::string& sentence) {
  ParseRequest req;
  req.tokens = words(sentence);
  req.goal = Formula::atom("s");
  return parse(req, lex);
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SelftestLine everyoneSleeps(const std::string& dir) {
  auto start = Clock::now();
  Lexicon lex = Lexicon::load(dir + "/lexica/demo.lex");
  ParseResult r = run(lex, "everyone sleeps");
  double secs = since(start);
  std::ostringstream d;
  d << r.derivations.size() << " derivation(s)";
  bool ok = r.derivations.size() == 1;
  if (ok) {
    const Derivation& der = r.derivations[0];
    d << ", term " << print(der.term) << ", trace";
    std::vector<RewriteRule> rules;
    for (const auto& s : der.trace) {
      rules.push_back(s.rule);
      d << " " << toString(s.rule);
    }
    ok = yieldMatches(der.term, {"everyone", "sleeps"}) &&
         rules == std::vector<RewriteRule>{RewriteRule::Beta, RewriteRule::Beta, RewriteRule::LimpI, RewriteRule::Beta};
    APS replayed = replayTrace(toAPS(der.net), der.trace);
    ok = ok && termKey(canonical(graphToTerm(replayed))) == termKey(der.term);
  }
  d << ", " << secs << " s";
  return {1, ok && secs < 1.0, d.str()};
}

SelftestLine scopeAmbiguity(const std::string& dir) {
  auto start = Clock::now();
  const std::string sentence = "someone delivers everything to its destination";
  Lexicon lex = Lexicon::load(dir + "/lexica/scope.lex");
  ParseResult r = run(lex, sentence);
  std::ostringstream d;
  d << r.derivations.size() << " derivation(s)";
  bool ok = r.derivations.size() == 2;
  for (const auto& der : r.derivations) ok = ok && yieldMatches(der.term, words(sentence));
  ProofFile fixture = readProofFile(readFile(dir + "/fixtures/scope_nd.json"));
  std::string want = ndCanonicalKey(normalizeND(fixture.nd));
  int matches = 0;
  for (const auto& der : r.derivations) {
    if (checkND(der.ndProof, &lex)) ok = false;
    if (ndCanonicalKey(normalizeND(der.ndProof)) == want) ++matches;
  }
  d << ", " << matches << " match the fixture";
  ok = ok && matches == 1;
  Lexicon printed = Lexicon::load(dir + "/lexica/scope_printed.lex");
  ParseResult asPrinted = run(printed, sentence);
  d << "; types as printed: " << asPrinted.derivations.size() << " derivation(s)";
  double secs = since(start);
  d << ", " << secs << " s";
  return {2, ok && secs < 30.0, d.str()};
}

SelftestLine directionality(const std::string& dir) {
  auto start = Clock::now();
  const std::string parallel = "Ahmed loves and Johani dislikes the pizza";
  const std::string crossed = "Ahmed loves and the pizza dislikes Johani";
  Lexicon lambek = Lexicon::load(dir + "/lexica/lambek_coord.lex");
  Lexicon linear = Lexicon::load(dir + "/lexica/linear_coord.lex");
  ParseResult a = run(lambek, parallel);
  ParseResult b = run(lambek, crossed);
  ParseResult c = run(linear, crossed);
  bool ok = !a.derivations.empty() && b.derivations.empty() && !c.derivations.empty();
  for (const auto& der : a.derivations) ok = ok && yieldMatches(der.term, words(parallel));
  for (const auto& der : c.derivations) ok = ok && yieldMatches(der.term, words(crossed));
  double secs = since(start);
  std::ostringstream d;
  d << "directional, parallel order: " << a.derivations.size() << ", directional, crossed order: " << b.derivations.size()
    << ", linear, crossed order: " << c.derivations.size() << ", " << secs << " s";
  return {3, ok && secs < 30.0, d.str()};
}

template <class F>
SelftestLine guarded(int criterion, F f, const std::string& dir) {
  try {
    return f(dir);
  } catch (const std::exception& e) {
    return {criterion, false, std::string("error: ") + e.what()};
  }
}

}  // namespace

std::vector<SelftestLine> runSelftest(const std::string& dataDir) {
  return {guarded(1, everyoneSleeps, dataDir), guarded(2, scopeAmbiguity, dataDir),
          guarded(3, directionality, dataDir)};
}

}  // namespace htlg
