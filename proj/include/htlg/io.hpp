#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "htlg/nd.hpp"
#include "htlg/prover.hpp"
#include "htlg/sequent.hpp"

namespace htlg {

using Json = nlohmann::json;

// Proof files: {"kind": "nd"|"seq", "mode": ..., "proof": node}. A node holds
// rule, antecedent, term, formula, var, var2, entry and premisses. Reading does not
// validate rules; use checkND or checkSeq.
Json ndToJson(const NDProof& p);
Json seqToJson(const SeqProof& p);
NDProof ndFromJson(const Json& node);
SeqProof seqFromJson(const Json& node);

enum class ProofKind { nd, seq };

struct ProofFile {
  ProofKind kind = ProofKind::nd;
  Mode mode = Mode::associative;
  NDProof nd;
  SeqProof seq;
};

// Throws SyntaxError on malformed input.
ProofFile readProofFile(const std::string& text);
std::string writeProofFile(const ProofFile& f);
std::string writeProofFile(const NDProof& p, Mode mode = Mode::associative);
std::string writeProofFile(const SeqProof& p, Mode mode = Mode::associative);

std::string toString(Mode m);
Mode modeFromString(const std::string& s);

Json derivationToJson(const Derivation& d, const ParseRequest& req, const ParseStats& stats);
Json traceToJson(const std::vector<TraceStep>& trace);
std::vector<TraceStep> traceFromJson(const Json& j);

// Human-readable renderings.
std::string renderText(const NDProof& p);
std::string renderText(const SeqProof& p);
std::string renderLatex(const NDProof& p);
std::string renderLatex(const SeqProof& p);
std::string renderDerivationText(const Derivation& d, std::size_t index);
std::string renderDerivationLatex(const Derivation& d, std::size_t index);
std::string renderDerivationDot(const Derivation& d, std::size_t index, Mode mode);

}  // namespace htlg
