#pragma once

#include <optional>
#include <string>
#include <vector>

#include "htlg/aps.hpp"
#include "htlg/lexicon.hpp"
#include "htlg/nd.hpp"
#include "htlg/proof_net.hpp"

namespace htlg {

struct ParseRequest {
  std::vector<std::string> tokens;
  Formula goal;
  Mode mode = Mode::associative;
  bool useEta = false;
  bool orderCheck = true;
  std::optional<std::size_t> maxDerivations;
  unsigned jobs = 1;
};

struct ParseStats {
  std::size_t lexicalChoices = 0;
  std::size_t linkingsExamined = 0;
  std::size_t countMismatches = 0;
  std::size_t switchingRejected = 0;  // linkings dropped before contraction
  std::size_t contractionSteps = 0;
  std::size_t contracted = 0;   // linkings that reached a lambda graph
  std::size_t orderRejected = 0;
  double wallSeconds = 0;
};

struct Derivation {
  std::vector<LexEntry> lexChoice;  // empty for purely logical sequents
  ProofStructure net;               // the linked proof structure
  Linking linking;
  std::vector<TraceStep> trace;
  std::size_t initialSize = 0;  // live vertices plus links of the initial abstract structure
  Term term;                    // canonical readback
  NDProof ndProof;
};

struct ParseResult {
  std::vector<Derivation> derivations;
  ParseStats stats;
  std::vector<std::string> warnings;
};

// Throws UnknownWord when a token has no entry.
ParseResult parse(const ParseRequest& req, const Lexicon& lex);

struct NetSearchOptions {
  Mode mode = Mode::associative;
  bool useEta = false;
  // When set and the goal has string type, the flattened readback must list exactly
  // these word or variable names.
  std::optional<std::vector<std::string>> expectedYield;
  std::optional<std::size_t> maxResults;
  bool sequentialise = true;
  // Skip linkings that fail passesSwitchingTest without contracting them.
  bool switchingFilter = true;
  unsigned jobs = 1;
};

// Proof-net search over one fixed antecedent.
std::vector<Derivation> proveNets(const std::vector<Hyp>& hypotheses, const Formula& goal,
                                  const NetSearchOptions& opts = {}, ParseStats* stats = nullptr);

// True when the flattened readback of `term` is exactly `names`.
bool yieldMatches(const Term& term, const std::vector<std::string>& names);

// Natural deduction proof of a linked proof structure whose abstract structure the
// trace contracts to a lambda graph. Throws InvalidTrace.
NDProof sequentialise(const ProofStructure& net, const std::vector<TraceStep>& trace, Mode mode = Mode::associative);

struct NetFromND {
  ProofStructure net;
  std::vector<TraceStep> trace;
  bool contracted = false;
  std::optional<Term> term;
};

// Net of the normal form of `p` (axioms expanded to atoms) and its contraction trace.
NetFromND netFromND(const NDProof& p, Mode mode = Mode::associative);

}  // namespace htlg
