#pragma once

#include <optional>
#include <string>
#include <vector>

#include "htlg/formula.hpp"
#include "htlg/proof_net.hpp"
#include "htlg/term.hpp"

namespace htlg {

// Vertex of an abstract proof structure. Hypothesis vertices carry a word (lexical leaf)
// or a variable name and formula; conclusion vertices may carry the goal formula.
struct AVertex {
  ProsType type;
  int inLink = -1;
  int outLink = -1;
  std::optional<std::string> word;
  std::optional<std::string> varName;
  std::optional<Formula> hypFormula;
  std::optional<Formula> conclFormula;
  bool alive = true;
};

// Links keep the proof-structure conventions. Term-graph links: @ tensor [fn, arg] -> [res],
// lambda tensor [body] -> [abs, var], + tensor [x1..xn] -> [res], eps tensor [] -> [res].
struct ALink {
  LinkType type;
  LinkIndex index;
  std::vector<int> premisses;
  std::vector<int> conclusions;
  int main = -1;  // par links: index of the main conclusion
  bool alive = true;
};

enum class RewriteRule { Beta, Eta, EpsL, EpsR, Assoc, OverI, UnderI, LimpI };

std::string toString(RewriteRule r);
std::optional<RewriteRule> rewriteRuleFromString(const std::string& s);
bool isParContraction(RewriteRule r);

struct TraceStep {
  RewriteRule rule;
  int site;  // link id; par contractions keep the proof-structure link id
  friend bool operator==(const TraceStep& a, const TraceStep& b) { return a.rule == b.rule && a.site == b.site; }
};

class AbstractProofStructure {
 public:
  const std::vector<AVertex>& vertices() const { return vertices_; }
  const std::vector<ALink>& links() const { return links_; }

  int addVertex(AVertex v);
  int addLink(ALink l);

  // Merges conclusion `up` with hypothesis `down`: the result keeps up's in-link and
  // down's out-link. Returns the surviving vertex.
  int identify(int up, int down);

  std::vector<int> hypotheses() const;
  std::vector<int> conclusions() const;
  std::size_t size() const;  // live vertices plus live links
  std::size_t parCount() const;

  // Sites where `rule` applies in `mode`.
  std::vector<int> sites(RewriteRule rule, Mode mode) const;
  // Reason the rule does not apply at `site`, or nullopt when it does.
  std::optional<std::string> whyNot(RewriteRule rule, int site, Mode mode) const;
  // Throws SiteMismatch when the rule does not apply.
  void apply(RewriteRule rule, int site, Mode mode);

  std::string toDot() const;

 private:
  void kill(int link);
  void killVertex(int v);
  void collapseUnary(int link);
  // Tensor-connected component of `start`, par links excluded.
  std::vector<int> tensorComponent(int start) const;
  bool tensorAncestor(int target, int from) const;
  bool componentHasOtherHypothesis(int premiss, int aux) const;

  std::vector<AVertex> vertices_;
  std::vector<ALink> links_;
};

using APS = AbstractProofStructure;

// Lexical hypotheses are replaced by the graphs of their terms.
APS toAPS(const ProofStructure& ps);

// Graph of a term; free variables and words become hypotheses.
APS termToGraph(const Term& t);
// Splices the graph of `t` into `g`, returning its root vertex.
int addTermGraph(APS& g, const Term& t);

std::optional<std::string> lambdaGraphViolation(const APS& g, int* condition = nullptr);
// Reads a lambda graph back as a term; throws NotALambdaGraph.
Term graphToTerm(const APS& g);

struct ContractionResult {
  bool success = false;
  APS final;
  std::vector<TraceStep> trace;
  std::optional<Term> term;
  std::size_t initialSize = 0;
  std::string diagnostics;
  std::vector<int> stuckPars;
};

ContractionResult contractToLambdaGraph(APS g, Mode mode = Mode::associative, bool useEta = false);
APS replayTrace(APS g, const std::vector<TraceStep>& trace, Mode mode = Mode::associative);

// Outcomes of every maximal rewrite order (success flags and readback keys), for
// checking order independence on small structures.
struct StrategyOutcome {
  bool success;
  std::string termKey;
  friend bool operator<(const StrategyOutcome& a, const StrategyOutcome& b) {
    return a.success != b.success ? a.success < b.success : a.termKey < b.termKey;
  }
};

std::vector<StrategyOutcome> allStrategyOutcomes(const APS& g, Mode mode, bool useEta, std::size_t maxStates = 20000);

}  // namespace htlg
