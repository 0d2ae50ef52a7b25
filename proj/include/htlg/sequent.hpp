#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htlg/nd.hpp"
#include "htlg/proof.hpp"

namespace htlg {

// Premisses and variables per rule:
//   Ax      var = x
//   Cut     [left D => M:A, right G,x:A => N:C], var = x
//   OverL   [minor D => M:A, major G,q:B => N:C], var = principal p (B/A), var2 = q
//   UnderL  as OverL with principal A\B
//   LimpL   as OverL with principal A -o B
//   *R      [body], var = discharged variable
//   Lex     [body G,x:A => M:C], var = x, entry = lexical entry for A
//   BetaEta [premiss], conclusion term = converted term
enum class SeqRule { Ax, Cut, OverL, OverR, UnderL, UnderR, LimpL, LimpR, Lex, BetaEta };

using SeqNode = ProofNode<SeqRule>;
using SeqProof = std::shared_ptr<const SeqNode>;

std::string toString(SeqRule r);
std::optional<SeqRule> seqRuleFromString(const std::string& s);

namespace seq {

SeqProof ax(const std::string& x, const Formula& a);
SeqProof cut(SeqProof left, SeqProof right, const std::string& x, const BuildOptions& o = {});
SeqProof overL(SeqProof minor, SeqProof major, const std::string& q, const std::string& p, const BuildOptions& o = {});
SeqProof underL(SeqProof minor, SeqProof major, const std::string& q, const std::string& p, const BuildOptions& o = {});
SeqProof limpL(SeqProof minor, SeqProof major, const std::string& y, const std::string& x, const BuildOptions& o = {});
SeqProof overR(SeqProof body, const std::string& p, const BuildOptions& o = {});
SeqProof underR(SeqProof body, const std::string& p, const BuildOptions& o = {});
SeqProof limpR(SeqProof body, const std::string& x, const BuildOptions& o = {});
SeqProof lex(SeqProof body, const std::string& x, const LexEntry& e, const BuildOptions& o = {});
SeqProof betaEta(SeqProof premiss, const Term& term, const BuildOptions& o = {});

// `term` is read by BetaEta only, `formula` by Ax only.
SeqProof make(SeqRule rule, std::vector<SeqProof> premisses, const std::string& var, const std::string& var2,
              const std::optional<LexEntry>& entry, const Term& term, const Formula& formula,
              const BuildOptions& o = {});

}  // namespace seq

std::optional<RuleViolation> checkSeq(const SeqProof& p, const Lexicon* lexicon = nullptr, Mode mode = Mode::associative);

bool cutFree(const SeqProof& p);

SeqProof ndToSeq(const NDProof& p, Mode mode = Mode::associative);
NDProof seqToND(const SeqProof& p, Mode mode = Mode::associative);

// Gives every internal variable a distinct name; endsequent names are kept.
SeqProof freshenVariables(const SeqProof& p, Mode mode = Mode::associative);
// Renames free antecedent variables according to `names` without touching internal ones.
SeqProof renameFreeVariables(const SeqProof& p, const std::map<std::string, std::string>& names,
                             Mode mode = Mode::associative);

enum class CutCase { axiom, leftCommutative, rightCommutative, principal };

struct CutMeasure {
  int degree;
  int depth;
  friend bool operator<(const CutMeasure& a, const CutMeasure& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.depth < b.depth;
  }
};

struct CutStats {
  std::size_t steps = 0;
  std::map<CutCase, std::size_t> byCase;
  // Reductions whose cut did not have a smaller measure than the cut that created it.
  std::size_t measureViolations = 0;
};

CutCase classifyCut(const SeqProof& cut);
CutMeasure cutMeasure(const SeqProof& cut);

SeqProof eliminateCuts(const SeqProof& p, Mode mode = Mode::associative, CutStats* stats = nullptr);

struct SearchOptions {
  Mode mode = Mode::associative;
  bool firstOnly = false;
  std::size_t maxResults = 0;  // 0 = unbounded
};

// Backward cut-free proof search; results are distinct up to the canonical term.
std::vector<SeqProof> proveSeq(const std::vector<Hyp>& antecedent, const Formula& goal,
                               const SearchOptions& opts = {});

// Per-atom difference between positive and negative occurrences of a sequent.
std::map<std::string, int> atomBalance(const std::vector<Formula>& antecedent, const Formula& goal);
bool balanced(const std::vector<Formula>& antecedent, const Formula& goal);

}  // namespace htlg
