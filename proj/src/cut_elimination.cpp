#include <algorithm>

#include "htlg/error.hpp"
#include "htlg/sequent.hpp"

namespace htlg {

namespace {

bool isLeftRule(SeqRule r) { return r == SeqRule::OverL || r == SeqRule::UnderL || r == SeqRule::LimpL; }
bool isRightRule(SeqRule r) { return r == SeqRule::OverR || r == SeqRule::UnderR || r == SeqRule::LimpR; }

bool hasLogical(const Judgment& j, const std::string& x) {
  return std::any_of(j.antecedent.begin(), j.antecedent.end(),
                     [&](const Hyp& h) { return !h.lexical() && h.name == x; });
}

// Distance from the root of the left premiss to the rule introducing its succedent.
int leftDepth(const SeqProof& p) {
  if (p->rule == SeqRule::Ax || isRightRule(p->rule)) return 0;
  if (isLeftRule(p->rule)) return 1 + leftDepth(p->premisses[1]);
  return 1 + leftDepth(p->premisses[0]);
}

// Distance from the root of the right premiss to the rule introducing x.
int rightDepth(const SeqProof& p, const std::string& x) {
  if (p->rule == SeqRule::Ax) return 0;
  if (isLeftRule(p->rule) && p->var == x) return 0;
  for (const auto& c : p->premisses)
    if (hasLogical(c->conclusion, x)) return 1 + rightDepth(c, x);
  throw RuleError("cut variable '" + x + "' vanished from the right premiss");
}

class Eliminator {
 public:
  Eliminator(Mode mode, CutStats& stats) : o_{mode, true}, stats_(stats) {}

  SeqProof all(const SeqProof& p, const std::optional<CutMeasure>& parent) {
    std::vector<SeqProof> prem;
    bool changed = false;
    for (const auto& c : p->premisses) {
      prem.push_back(all(c, parent));
      changed |= prem.back() != c;
    }
    SeqProof node = changed ? remake(*p, std::move(prem)) : p;
    if (node->rule == SeqRule::Cut) return reduce(node, parent);
    return node;
  }

 private:
  SeqProof remake(const SeqNode& n, std::vector<SeqProof> prem) {
    Term t = n.rule == SeqRule::BetaEta ? prem[0]->conclusion.term : n.conclusion.term;
    return seq::make(n.rule, std::move(prem), n.var, n.var2, n.entry, t, n.conclusion.formula, o_);
  }

  SeqProof cut(SeqProof l, SeqProof r, const std::string& x) { return seq::cut(std::move(l), std::move(r), x, o_); }

  SeqProof reduce(const SeqProof& c, const std::optional<CutMeasure>& parent) {
    CutMeasure m = cutMeasure(c);
    if (parent && !(m < *parent)) ++stats_.measureViolations;
    CutCase kind = classifyCut(c);
    ++stats_.steps;
    ++stats_.byCase[kind];
    SeqProof next = step(c, kind);
    return all(next, m);
  }

  SeqProof step(const SeqProof& c, CutCase kind) {
    const SeqProof& left = c->premisses[0];
    const SeqProof& right = c->premisses[1];
    const std::string& x = c->var;
    switch (kind) {
      case CutCase::axiom:
        if (left->rule == SeqRule::Ax) return renameFreeVariables(right, {{x, left->var}}, o_.mode);
        return left;
      case CutCase::leftCommutative: {
        const auto& lp = left->premisses;
        if (isLeftRule(left->rule))
          return seq::make(left->rule, {lp[0], cut(lp[1], right, x)}, left->var, left->var2, std::nullopt, {}, {}, o_);
        if (left->rule == SeqRule::Lex)
          return seq::lex(cut(lp[0], right, x), left->var, *left->entry, o_);
        SeqProof inner = cut(lp[0], right, x);
        return seq::betaEta(inner, inner->conclusion.term, o_);
      }
      case CutCase::rightCommutative: {
        const auto& rp = right->premisses;
        if (isRightRule(right->rule))
          return seq::make(right->rule, {cut(left, rp[0], x)}, right->var, {}, std::nullopt, {}, {}, o_);
        if (isLeftRule(right->rule)) {
          if (hasLogical(rp[1]->conclusion, x))
            return seq::make(right->rule, {rp[0], cut(left, rp[1], x)}, right->var, right->var2, std::nullopt, {}, {},
                             o_);
          return seq::make(right->rule, {cut(left, rp[0], x), rp[1]}, right->var, right->var2, std::nullopt, {}, {}, o_);
        }
        if (right->rule == SeqRule::Lex) return seq::lex(cut(left, rp[0], x), right->var, *right->entry, o_);
        SeqProof inner = cut(left, rp[0], x);
        return seq::betaEta(inner, inner->conclusion.term, o_);
      }
      case CutCase::principal: {
        // left: R-rule discharging v from body; right: L-rule with minor, major(r).
        const SeqProof& body = left->premisses[0];
        const SeqProof& minor = right->premisses[0];
        const SeqProof& major = right->premisses[1];
        return cut(cut(minor, body, left->var), major, right->var2);
      }
    }
    throw RuleError("unknown cut case");
  }

  BuildOptions o_;
  CutStats& stats_;
};

}  // namespace

CutCase classifyCut(const SeqProof& c) {
  if (c->rule != SeqRule::Cut) throw RuleError("not a cut");
  const SeqProof& left = c->premisses[0];
  const SeqProof& right = c->premisses[1];
  if (left->rule == SeqRule::Ax || right->rule == SeqRule::Ax) return CutCase::axiom;
  if (!isRightRule(left->rule)) return CutCase::leftCommutative;
  if (!(isLeftRule(right->rule) && right->var == c->var)) return CutCase::rightCommutative;
  return CutCase::principal;
}

CutMeasure cutMeasure(const SeqProof& c) {
  return CutMeasure{c->premisses[0]->conclusion.formula.degree(),
                    leftDepth(c->premisses[0]) + rightDepth(c->premisses[1], c->var)};
}

SeqProof eliminateCuts(const SeqProof& p, Mode mode, CutStats* stats) {
  CutStats local;
  CutStats& s = stats ? *stats : local;
  Eliminator e(mode, s);
  return e.all(freshenVariables(p, mode), std::nullopt);
}

}  // namespace htlg
