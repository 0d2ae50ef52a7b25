#pragma once

#include <optional>
#include <string>
#include <vector>

#include "htlg/proof.hpp"

namespace htlg {

// Premiss order per rule:
//   LimpE   [argument, function]      OverE  [major A/B, minor B]
//   UnderE  [minor B, major B\A]      *I     [body], var = discharged variable
//   Ax      var = variable            Lex    entry = lexical entry
//   BetaEta [premiss], conclusion term = converted term
enum class NDRule { Lex, Ax, LimpE, LimpI, OverE, OverI, UnderE, UnderI, BetaEta };

using NDNode = ProofNode<NDRule>;
using NDProof = std::shared_ptr<const NDNode>;

std::string toString(NDRule r);
std::optional<NDRule> ndRuleFromString(const std::string& s);

namespace nd {

NDProof lex(const LexEntry& e, const BuildOptions& o = {});
NDProof ax(const std::string& x, const Formula& a);
NDProof limpE(NDProof arg, NDProof fn, const BuildOptions& o = {});
NDProof limpI(NDProof body, const std::string& x, const BuildOptions& o = {});
NDProof overE(NDProof major, NDProof minor, const BuildOptions& o = {});
NDProof overI(NDProof body, const std::string& p, const BuildOptions& o = {});
NDProof underE(NDProof minor, NDProof major, const BuildOptions& o = {});
NDProof underI(NDProof body, const std::string& p, const BuildOptions& o = {});
NDProof betaEta(NDProof premiss, const Term& term, const BuildOptions& o = {});

// Generic constructor used by readers and rewriters; throws RuleError.
// `term` is read by BetaEta only, `formula` by Ax only.
NDProof make(NDRule rule, std::vector<NDProof> premisses, const std::string& var,
             const std::optional<LexEntry>& entry, const Term& term, const Formula& formula,
             const BuildOptions& o = {});

}  // namespace nd

// Verifies every node; compares terms up to beta-eta and the monoid laws.
std::optional<RuleViolation> checkND(const NDProof& p, const Lexicon* lexicon = nullptr, Mode mode = Mode::associative);

// Substitution: replaces the Ax leaf for `x` in `outer` by `inner`.
// Throws VariableClash or FormulaMismatch.
NDProof substitute(const NDProof& outer, const std::string& x, const NDProof& inner, Mode mode = Mode::associative);

// Rebuilds every conclusion with canonical terms.
NDProof canonicalize(const NDProof& p, Mode mode = Mode::associative);

enum class NDRedexKind { Detour, BetaEtaChain, BetaEtaNoop };

struct NDRedex {
  std::vector<int> path;
  NDRedexKind kind;
};

std::vector<NDRedex> ndRedexes(const NDProof& p);
NDProof ndConvertAt(const NDProof& p, const NDRedex& r, Mode mode = Mode::associative);

struct NormalizeStats {
  std::size_t steps = 0;
};

NDProof normalizeND(const NDProof& p, Mode mode = Mode::associative, NormalizeStats* stats = nullptr);
bool isNormal(const NDProof& p);

struct SubformulaViolation {
  std::string path;
  Formula formula;
};

std::optional<SubformulaViolation> subformulaCheck(const NDProof& p);

// Serialisation independent of discharged-variable names; alpha-equal proofs share a key.
std::string ndCanonicalKey(const NDProof& p, Mode mode = Mode::associative);

}  // namespace htlg
