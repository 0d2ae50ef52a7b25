// htlg: parse sentences, check and transform proofs, run the fixture self-test.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "htlg/error.hpp"
#include "htlg/io.hpp"
#include "htlg/selftest.hpp"

using namespace htlg;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2 };

struct Common {
  std::string lexicon;
  std::string mode = "associative";
  std::string format = "json";
  bool laxPros = false;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> splitWords(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    std::istringstream in(a);
    for (std::string w; in >> w;) out.push_back(w);
  }
  return out;
}

int cmdParse(const Common& c, const std::string& goal, const std::vector<std::string>& sentence, bool eta,
             bool noOrderCheck, std::size_t max, unsigned jobs) {
  std::string path = c.lexicon;
  if (path.empty())
    if (const char* env = std::getenv("HTLG_LEXICON")) path = env;
  if (path.empty()) throw CLI::ValidationError("--lexicon", "no lexicon given and HTLG_LEXICON is unset");
  Lexicon lex = Lexicon::load(path, LexiconOptions{c.laxPros});
  ParseRequest req;
  req.tokens = splitWords(sentence);
  if (req.tokens.empty()) throw CLI::ValidationError("sentence", "empty sentence");
  req.goal = lex.parseFormula(goal);
  req.mode = modeFromString(c.mode);
  req.useEta = eta;
  req.orderCheck = !noOrderCheck;
  if (max) req.maxDerivations = max;
  req.jobs = jobs;
  ParseResult r = parse(req, lex);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";

  std::ostringstream out;
  if (c.format == "json") {
    Json j;
    j["count"] = r.derivations.size();
    j["derivations"] = Json::array();
    for (const auto& d : r.derivations) j["derivations"].push_back(derivationToJson(d, req, r.stats));
    j["warnings"] = r.warnings;
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < r.derivations.size(); ++i) {
      if (c.format == "text") out << renderDerivationText(r.derivations[i], i);
      else if (c.format == "latex") out << renderDerivationLatex(r.derivations[i], i);
      else out << renderDerivationDot(r.derivations[i], i, req.mode);
    }
    if (c.format == "text") out << r.derivations.size() << " derivation(s)\n";
  }
  std::cout << out.str();
  return r.derivations.empty() ? failed : ok;
}

std::optional<RuleViolation> check(const ProofFile& f, const Lexicon* lex) {
  return f.kind == ProofKind::nd ? checkND(f.nd, lex, f.mode) : checkSeq(f.seq, lex, f.mode);
}

int cmdCheck(const Common& c, const std::string& file, const std::string& kind) {
  std::string text = readFile(file);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw SyntaxError("empty proof file", 0);
  ProofFile f = readProofFile(text);
  if (!kind.empty() && kind != (f.kind == ProofKind::nd ? "nd" : "seq"))
    throw SyntaxError("file holds a " + std::string(f.kind == ProofKind::nd ? "nd" : "seq") + " proof", 0);
  std::optional<Lexicon> lex;
  if (!c.lexicon.empty()) lex = Lexicon::load(c.lexicon, LexiconOptions{c.laxPros});
  if (auto v = check(f, lex ? &*lex : nullptr)) {
    std::cout << "invalid at " << v->path << ": " << v->reason << "\n";
    return failed;
  }
  const Judgment& j = f.kind == ProofKind::nd ? f.nd->conclusion : f.seq->conclusion;
  std::cout << "valid: " << j.str() << "\n";
  return ok;
}

int cmdTransform(const Common& c, const std::string& file, const std::string& transform, const std::string& output) {
  std::string text = readFile(file);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw SyntaxError("empty proof file", 0);
  ProofFile f = readProofFile(text);
  if (auto v = check(f, nullptr)) {
    std::cerr << "input proof is invalid at " << v->path << ": " << v->reason << "\n";
    return failed;
  }
  auto needs = [&](ProofKind k) {
    if (f.kind != k)
      throw CLI::ValidationError("transform", transform + " needs a" + (k == ProofKind::nd ? "n nd" : " seq") + " proof");
  };
  auto emit = [&](const ProofFile& g) {
    if (c.format == "text") writeOutput(output, g.kind == ProofKind::nd ? renderText(g.nd) : renderText(g.seq));
    else if (c.format == "latex") writeOutput(output, g.kind == ProofKind::nd ? renderLatex(g.nd) : renderLatex(g.seq));
    else writeOutput(output, writeProofFile(g));
  };
  ProofFile g = f;
  if (transform == "normalize") {
    needs(ProofKind::nd);
    g.nd = normalizeND(f.nd, f.mode);
  } else if (transform == "cut-eliminate") {
    needs(ProofKind::seq);
    g.seq = eliminateCuts(f.seq, f.mode);
  } else if (transform == "nd2seq") {
    needs(ProofKind::nd);
    g.kind = ProofKind::seq;
    g.seq = ndToSeq(f.nd, f.mode);
  } else if (transform == "seq2nd") {
    needs(ProofKind::seq);
    g.kind = ProofKind::nd;
    g.nd = seqToND(f.seq, f.mode);
  } else if (transform == "to-net") {
    NDProof p = f.kind == ProofKind::nd ? f.nd : seqToND(f.seq, f.mode);
    NetFromND n = netFromND(p, f.mode);
    if (c.format == "dot") {
      writeOutput(output, n.net.toDot() + replayTrace(toAPS(n.net), n.trace, f.mode).toDot());
    } else {
      Json j{{"contracted", n.contracted}, {"trace", traceToJson(n.trace)}, {"dot", n.net.toDot()}};
      if (n.term) j["term"] = print(*n.term);
      writeOutput(output, j.dump(2) + "\n");
    }
    return n.contracted ? ok : failed;
  } else {
    throw CLI::ValidationError("transform", "unknown transform '" + transform + "'");
  }
  emit(g);
  return ok;
}

int cmdSelftest(const std::string& dataDir) {
  bool all = true;
  for (const auto& line : runSelftest(dataDir)) {
    std::cout << "criterion " << line.criterion << ": " << (line.pass ? "PASS" : "FAIL") << "  " << line.detail << "\n";
    all = all && line.pass;
  }
  return all ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid type-logical grammar prover"};
  app.require_subcommand(1);
  Common common;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("-l,--lexicon", common.lexicon, "Lexicon file (default: $HTLG_LEXICON)");
    sub->add_option("--mode", common.mode, "associative or nonassociative")
        ->check(CLI::IsMember({"associative", "nonassociative", "assoc", "nonassoc"}));
    sub->add_option("--format", common.format, "json, latex, dot or text")
        ->check(CLI::IsMember({"json", "latex", "dot", "text"}));
    sub->add_flag("--lax-pros", common.laxPros, "Accept lexical terms whose type differs from the formula's");
  };

  auto* parseCmd = app.add_subcommand("parse", "Parse a sentence");
  addCommon(parseCmd);
  std::string goal = "s";
  std::vector<std::string> sentence;
  bool eta = false, noOrderCheck = false;
  std::size_t max = 0;
  unsigned jobs = 1;
  parseCmd->add_option("-g,--goal", goal, "Goal formula");
  parseCmd->add_flag("--eta", eta, "Enable eta contraction");
  parseCmd->add_flag("--no-order-check", noOrderCheck, "Accept any word order");
  parseCmd->add_option("--max", max, "Stop after this many derivations");
  parseCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  parseCmd->add_option("sentence", sentence, "Words of the sentence")->required();

  auto* checkCmd = app.add_subcommand("check", "Validate a proof file");
  addCommon(checkCmd);
  std::string checkFile, kind;
  checkCmd->add_option("file", checkFile, "Proof file")->required();
  checkCmd->add_option("--kind", kind, "Expected kind")->check(CLI::IsMember({"nd", "seq"}));

  auto* transformCmd = app.add_subcommand("transform", "Transform a proof file");
  addCommon(transformCmd);
  std::string transformFile, transform, output;
  transformCmd->add_option("transform", transform, "normalize, cut-eliminate, nd2seq, seq2nd or to-net")->required();
  transformCmd->add_option("file", transformFile, "Proof file")->required();
  transformCmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* selftestCmd = app.add_subcommand("selftest", "Run the fixture checks");
  std::string dataDir = defaultDataDir();
  selftestCmd->add_option("--data", dataDir, "Data directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*parseCmd) return cmdParse(common, goal, sentence, eta, noOrderCheck, max, jobs);
    if (*checkCmd) return cmdCheck(common, checkFile, kind);
    if (*transformCmd) return cmdTransform(common, transformFile, transform, output);
    if (*selftestCmd) return cmdSelftest(dataDir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const UnknownWord& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
