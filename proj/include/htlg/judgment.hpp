#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htlg/formula.hpp"
#include "htlg/term.hpp"

namespace htlg {

// An antecedent entry: a logical variable x:A, or a lexical hypothesis w:A carrying
// the lexical term.
struct Hyp {
  std::string name;
  Formula formula;
  std::optional<Term> lexTerm;

  static Hyp logical(std::string name, Formula f) { return Hyp{std::move(name), std::move(f), std::nullopt}; }
  static Hyp lexical(std::string word, Formula f, Term term) {
    return Hyp{std::move(word), std::move(f), std::move(term)};
  }

  bool lexical() const { return lexTerm.has_value(); }
  // The leaf this hypothesis contributes to terms: Var(x) or Word(w).
  Term leaf() const;
  std::string str() const;
};

bool sameHyp(const Hyp& a, const Hyp& b);
bool sameAntecedent(const std::vector<Hyp>& a, const std::vector<Hyp>& b);
std::set<std::string> logicalNames(const std::vector<Hyp>& ante);

struct Judgment {
  std::vector<Hyp> antecedent;
  Term term;
  Formula formula;

  std::string str() const;
};

}  // namespace htlg
