#pragma once

#include <random>
#include <vector>

#include "htlg/lexicon.hpp"
#include "htlg/nd.hpp"

namespace gen {

struct NDGenOptions {
  std::size_t maxSize = 15;
  int formulaDepth = 2;
  int stepsPerRound = 24;
};

// Random checked natural deduction proofs, built bottom-up from axioms and lexical
// leaves by the rule builders. Elimination over a fresh introduction is favoured so
// that many proofs carry detours.
class NDGenerator {
 public:
  NDGenerator(unsigned seed, std::vector<htlg::LexEntry> entries, NDGenOptions opts = {});

  // One round of random construction; returns every proof built in it.
  std::vector<htlg::NDProof> round();

 private:
  htlg::NDProof leaf();
  std::optional<htlg::NDProof> intro(const htlg::NDProof& body);
  std::optional<htlg::NDProof> elim(const htlg::NDProof& a, const htlg::NDProof& b);
  std::optional<htlg::NDProof> detour(const htlg::NDProof& body);
  htlg::NDProof minorFor(const htlg::Formula& f, const std::vector<htlg::NDProof>& pool);
  std::string fresh();

  std::mt19937 rng_;
  std::vector<htlg::LexEntry> entries_;
  NDGenOptions opts_;
  std::vector<htlg::Formula> formulas_;
  int counter_ = 0;
};

// Lexical entries of every shipped lexicon, one per word.
std::vector<htlg::LexEntry> shippedEntries(const std::string& dataDir);

bool hasDetour(const htlg::NDProof& p);

}  // namespace gen
