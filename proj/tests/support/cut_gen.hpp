#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "htlg/sequent.hpp"

namespace gen {

struct CutSample {
  htlg::SeqProof proof;
  // Case and cut-formula connective of the first injected cut; a second cut may sit
  // above it at the root.
  htlg::CutCase injectedCase;
  htlg::FormulaKind cutKind;
  int cuts;                   // Cut nodes in the proof
};

// Sequent proofs with injected cuts. Cut-free material comes from proveSeq over small
// logical and lexical sequents; cuts are placed at the root and sometimes nested.
class CutInjector {
 public:
  CutInjector(unsigned seed, const std::vector<htlg::LexEntry>& entries);

  CutSample next();

  std::size_t poolSize() const { return withHyp_.size(); }

 private:
  htlg::SeqProof principal(htlg::FormulaKind kind);
  htlg::SeqProof axiomCut();
  htlg::SeqProof randomCut();
  std::optional<htlg::SeqProof> proofOf(const htlg::Formula& goal);
  // Renames every free logical variable apart; `keep` maps a name to a chosen one.
  htlg::SeqProof apart(const htlg::SeqProof& p, const std::map<std::string, std::string>& keep = {});
  std::string fresh(const std::string& base);

  std::mt19937 rng_;
  std::map<std::string, std::vector<htlg::SeqProof>> byGoal_;  // keyed by formula text
  std::vector<htlg::SeqProof> withHyp_;                        // proofs with a logical hypothesis
  std::vector<htlg::Formula> complexGoals_;
  int counter_ = 0;
};

int countCuts(const htlg::SeqProof& p);

}  // namespace gen
