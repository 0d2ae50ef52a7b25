#pragma once

// Helpers shared by the natural deduction and sequent rule implementations.

#include <string>
#include <vector>

#include "htlg/error.hpp"
#include "htlg/judgment.hpp"
#include "htlg/proof.hpp"

namespace htlg::detail {

inline Term finish(const Term& t, const BuildOptions& o) { return o.canonicalTerms ? canonical(t, o.mode) : t; }

inline int findLogical(const std::vector<Hyp>& ante, const std::string& x) {
  int found = -1;
  for (std::size_t i = 0; i < ante.size(); ++i) {
    if (!ante[i].lexical() && ante[i].name == x) {
      if (found >= 0) throw RuleError("variable '" + x + "' occurs twice in the antecedent");
      found = static_cast<int>(i);
    }
  }
  return found;
}

inline std::vector<Hyp> without(const std::vector<Hyp>& ante, int index) {
  std::vector<Hyp> out;
  for (std::size_t i = 0; i < ante.size(); ++i)
    if (static_cast<int>(i) != index) out.push_back(ante[i]);
  return out;
}

inline std::vector<Hyp> joinDisjoint(const std::vector<Hyp>& a, const std::vector<Hyp>& b) {
  auto na = logicalNames(a);
  for (const auto& h : b)
    if (!h.lexical() && na.count(h.name)) throw RuleError("premisses share variable '" + h.name + "'");
  std::vector<Hyp> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Locates the discharged Lambek hypothesis `p` of a slash introduction.
inline const Hyp& slashHypothesis(const std::vector<Hyp>& ante, const std::string& p, int& index) {
  index = findLogical(ante, p);
  if (index < 0) throw RuleError("discharged variable '" + p + "' is not in the antecedent");
  if (ante.size() < 2) throw RuleError("introduction would leave an empty antecedent");
  const Hyp& h = ante[index];
  if (!h.formula.isLambek()) throw RuleError("slash introduction needs a Lambek hypothesis");
  return h;
}

// For T = M + p (atEnd) or T = p + M, returns M; throws when p is on the wrong side.
inline Term stripSlashVariable(const Term& body, const std::string& p, bool atEnd, Mode mode) {
  Term c = canonical(body, mode);
  if (mode == Mode::nonassociative) {
    if (!c.is(TermKind::Plus)) throw RuleError("premiss term is not a concatenation");
    const Term& side = atEnd ? c.right() : c.left();
    if (!side.is(TermKind::Var) || side.name() != p)
      throw RuleError("discharged variable '" + p + "' is not the " + (atEnd ? "last" : "first") + " item");
    return atEnd ? c.left() : c.right();
  }
  std::vector<Term> parts = spine(c);
  if (parts.size() < 2) throw RuleError("premiss term has fewer than two items");
  const Term& side = atEnd ? parts.back() : parts.front();
  if (!side.is(TermKind::Var) || side.name() != p)
    throw RuleError("discharged variable '" + p + "' is not the " + (atEnd ? "last" : "first") + " item");
  if (atEnd) parts.pop_back();
  else parts.erase(parts.begin());
  return fromSpine(parts);
}

inline Formula overFormula(const Formula& result, const Formula& arg) {
  try {
    return Formula::over(result, arg);
  } catch (const WellFormednessError& e) {
    throw RuleError(e.what());
  }
}

inline Formula underFormula(const Formula& arg, const Formula& result) {
  try {
    return Formula::under(arg, result);
  } catch (const WellFormednessError& e) {
    throw RuleError(e.what());
  }
}

inline bool sameConclusion(const Judgment& a, const Judgment& b, Mode mode) {
  return a.formula == b.formula && sameAntecedent(a.antecedent, b.antecedent) && equivalent(a.term, b.term, mode);
}

}  // namespace htlg::detail
