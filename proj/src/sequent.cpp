#include "htlg/sequent.hpp"

#include <algorithm>

#include "rules_common.hpp"

namespace htlg {

using namespace detail;

std::string toString(SeqRule r) {
  switch (r) {
    case SeqRule::Ax: return "Ax";
    case SeqRule::Cut: return "Cut";
    case SeqRule::OverL: return "OverL";
    case SeqRule::OverR: return "OverR";
    case SeqRule::UnderL: return "UnderL";
    case SeqRule::UnderR: return "UnderR";
    case SeqRule::LimpL: return "LimpL";
    case SeqRule::LimpR: return "LimpR";
    case SeqRule::Lex: return "Lex";
    case SeqRule::BetaEta: return "BetaEta";
  }
  return "?";
}

std::optional<SeqRule> seqRuleFromString(const std::string& s) {
  for (SeqRule r : {SeqRule::Ax, SeqRule::Cut, SeqRule::OverL, SeqRule::OverR, SeqRule::UnderL, SeqRule::UnderR,
                    SeqRule::LimpL, SeqRule::LimpR, SeqRule::Lex, SeqRule::BetaEta})
    if (toString(r) == s) return r;
  return std::nullopt;
}

namespace {

std::size_t arity(SeqRule r) {
  switch (r) {
    case SeqRule::Ax: return 0;
    case SeqRule::Cut:
    case SeqRule::OverL:
    case SeqRule::UnderL:
    case SeqRule::LimpL: return 2;
    default: return 1;
  }
}

bool isLeftRule(SeqRule r) { return r == SeqRule::OverL || r == SeqRule::UnderL || r == SeqRule::LimpL; }

Judgment derive(SeqRule rule, const std::vector<SeqProof>& prem, const std::string& var, const std::string& var2,
                const std::optional<LexEntry>& entry, const Term& term, const Formula& formula,
                const BuildOptions& o) {
  if (prem.size() != arity(rule))
    throw RuleError(toString(rule) + " expects " + std::to_string(arity(rule)) + " premisses");
  auto J = [&](std::size_t i) -> const Judgment& { return prem[i]->conclusion; };
  switch (rule) {
    case SeqRule::Ax:
      if (var.empty() || !formula) throw RuleError("Ax needs a variable and a formula");
      return Judgment{{Hyp::logical(var, formula)}, Term::var(var, pros(formula)), formula};
    case SeqRule::Cut: {
      const Judgment& left = J(0);
      const Judgment& right = J(1);
      int i = findLogical(right.antecedent, var);
      if (i < 0) throw RuleError("cut variable '" + var + "' is not in the right premiss");
      if (!(right.antecedent[i].formula == left.formula))
        throw RuleError("cut formula mismatch: " + right.antecedent[i].formula.str() + " vs " + left.formula.str());
      return Judgment{joinDisjoint(without(right.antecedent, i), left.antecedent),
                      finish(substitute(right.term, var, left.term), o), right.formula};
    }
    case SeqRule::OverL:
    case SeqRule::UnderL:
    case SeqRule::LimpL: {
      const Judgment& minor = J(0);
      const Judgment& major = J(1);
      int i = findLogical(major.antecedent, var2);
      if (i < 0) throw RuleError("premiss variable '" + var2 + "' is not in the major premiss");
      const Formula& b = major.antecedent[i].formula;
      const Formula& a = minor.formula;
      Formula principal = rule == SeqRule::OverL    ? overFormula(b, a)
                          : rule == SeqRule::UnderL ? underFormula(a, b)
                                                    : Formula::limp(a, b);
      std::vector<Hyp> ante = joinDisjoint(without(major.antecedent, i), minor.antecedent);
      if (var.empty() || logicalNames(ante).count(var)) throw RuleError("principal variable '" + var + "' is not fresh");
      Term pv = Term::var(var, pros(principal));
      Term replacement = rule == SeqRule::OverL    ? Term::plus(pv, minor.term)
                         : rule == SeqRule::UnderL ? Term::plus(minor.term, pv)
                                                   : Term::app(pv, minor.term);
      ante.push_back(Hyp::logical(var, principal));
      return Judgment{ante, finish(substitute(major.term, var2, replacement), o), major.formula};
    }
    case SeqRule::OverR:
    case SeqRule::UnderR: {
      const Judgment& body = J(0);
      int i = 0;
      const Hyp& h = slashHypothesis(body.antecedent, var, i);
      bool over = rule == SeqRule::OverR;
      Formula f = over ? overFormula(body.formula, h.formula) : underFormula(h.formula, body.formula);
      return Judgment{without(body.antecedent, i), finish(stripSlashVariable(body.term, var, over, o.mode), o), f};
    }
    case SeqRule::LimpR: {
      const Judgment& body = J(0);
      int i = findLogical(body.antecedent, var);
      if (i < 0) throw RuleError("discharged variable '" + var + "' is not in the antecedent");
      if (body.antecedent.size() < 2) throw RuleError("introduction would leave an empty antecedent");
      const Formula& a = body.antecedent[i].formula;
      return Judgment{without(body.antecedent, i), finish(Term::abs(var, pros(a), body.term), o),
                      Formula::limp(a, body.formula)};
    }
    case SeqRule::Lex: {
      const Judgment& body = J(0);
      if (!entry) throw RuleError("Lex node without a lexical entry");
      int i = findLogical(body.antecedent, var);
      if (i < 0) throw RuleError("lexical variable '" + var + "' is not in the antecedent");
      if (!(body.antecedent[i].formula == entry->formula))
        throw RuleError("lexical entry type " + entry->formula.str() + " does not match " +
                        body.antecedent[i].formula.str());
      std::vector<Hyp> ante = without(body.antecedent, i);
      ante.push_back(entry->hyp());
      return Judgment{ante, finish(substitute(body.term, var, entry->term), o), body.formula};
    }
    case SeqRule::BetaEta: {
      const Judgment& p = J(0);
      if (!term) throw RuleError("BetaEta node without a term");
      if (!equivalent(p.term, term, o.mode)) throw RuleError("terms are not beta-eta equivalent");
      return Judgment{p.antecedent, term, p.formula};
    }
  }
  throw RuleError("unknown rule");
}

}  // namespace

namespace seq {

SeqProof make(SeqRule rule, std::vector<SeqProof> premisses, const std::string& var, const std::string& var2,
              const std::optional<LexEntry>& entry, const Term& term, const Formula& formula, const BuildOptions& o) {
  Judgment j = derive(rule, premisses, var, var2, entry, term, formula, o);
  auto node = std::make_shared<SeqNode>();
  node->rule = rule;
  node->premisses = std::move(premisses);
  node->conclusion = std::move(j);
  if (rule != SeqRule::BetaEta) node->var = var;
  if (isLeftRule(rule)) node->var2 = var2;
  if (rule == SeqRule::Lex) node->entry = entry;
  return node;
}

SeqProof ax(const std::string& x, const Formula& a) { return make(SeqRule::Ax, {}, x, {}, std::nullopt, {}, a); }
SeqProof cut(SeqProof left, SeqProof right, const std::string& x, const BuildOptions& o) {
  return make(SeqRule::Cut, {std::move(left), std::move(right)}, x, {}, std::nullopt, {}, {}, o);
}
SeqProof overL(SeqProof minor, SeqProof major, const std::string& q, const std::string& p, const BuildOptions& o) {
  return make(SeqRule::OverL, {std::move(minor), std::move(major)}, p, q, std::nullopt, {}, {}, o);
}
SeqProof underL(SeqProof minor, SeqProof major, const std::string& q, const std::string& p, const BuildOptions& o) {
  return make(SeqRule::UnderL, {std::move(minor), std::move(major)}, p, q, std::nullopt, {}, {}, o);
}
SeqProof limpL(SeqProof minor, SeqProof major, const std::string& y, const std::string& x, const BuildOptions& o) {
  return make(SeqRule::LimpL, {std::move(minor), std::move(major)}, x, y, std::nullopt, {}, {}, o);
}
SeqProof overR(SeqProof body, const std::string& p, const BuildOptions& o) {
  return make(SeqRule::OverR, {std::move(body)}, p, {}, std::nullopt, {}, {}, o);
}
SeqProof underR(SeqProof body, const std::string& p, const BuildOptions& o) {
  return make(SeqRule::UnderR, {std::move(body)}, p, {}, std::nullopt, {}, {}, o);
}
SeqProof limpR(SeqProof body, const std::string& x, const BuildOptions& o) {
  return make(SeqRule::LimpR, {std::move(body)}, x, {}, std::nullopt, {}, {}, o);
}
SeqProof lex(SeqProof body, const std::string& x, const LexEntry& e, const BuildOptions& o) {
  return make(SeqRule::Lex, {std::move(body)}, x, {}, e, {}, {}, o);
}
SeqProof betaEta(SeqProof premiss, const Term& term, const BuildOptions& o) {
  return make(SeqRule::BetaEta, {std::move(premiss)}, {}, {}, std::nullopt, term, {}, o);
}

}  // namespace seq

namespace {

std::optional<RuleViolation> checkNode(const SeqProof& p, const Lexicon* lexicon, Mode mode, const std::string& path) {
  for (std::size_t i = 0; i < p->premisses.size(); ++i)
    if (auto v = checkNode(p->premisses[i], lexicon, mode, path + "/" + std::to_string(i))) return v;
  BuildOptions o{mode, false};
  try {
    Judgment expect =
        derive(p->rule, p->premisses, p->var, p->var2, p->entry, p->conclusion.term, p->conclusion.formula, o);
    if (!sameConclusion(expect, p->conclusion, mode))
      return RuleViolation{path, toString(p->rule) + ": conclusion " + p->conclusion.str() +
                                     " does not follow; expected " + expect.str()};
  } catch (const Error& e) {
    return RuleViolation{path, toString(p->rule) + ": " + e.what()};
  }
  if (p->rule == SeqRule::Lex && lexicon) {
    bool found = false;
    for (const auto& e : lexicon->lookup(p->entry->word))
      if (e.formula == p->entry->formula && equivalent(e.term, p->entry->term, mode)) found = true;
    if (!found) return RuleViolation{path, "Lex: no lexicon entry " + p->entry->word + " : " + p->entry->formula.str()};
  }
  return std::nullopt;
}

class Fresh {
 public:
  explicit Fresh(std::set<std::string> used) : used_(std::move(used)) {}
  std::string operator()(const std::string& base) {
    std::string n = freshName(base, used_);
    used_.insert(n);
    return n;
  }

 private:
  std::set<std::string> used_;
};

SeqProof toSeq(const NDProof& p, Fresh& fresh, const BuildOptions& o) {
  const Judgment& j = p->conclusion;
  switch (p->rule) {
    case NDRule::Ax:
      return seq::ax(p->var, j.formula);
    case NDRule::Lex: {
      std::string x = fresh("x");
      return seq::lex(seq::ax(x, j.formula), x, *p->entry, o);
    }
    case NDRule::LimpI: return seq::limpR(toSeq(p->premisses[0], fresh, o), p->var, o);
    case NDRule::OverI: return seq::overR(toSeq(p->premisses[0], fresh, o), p->var, o);
    case NDRule::UnderI: return seq::underR(toSeq(p->premisses[0], fresh, o), p->var, o);
    case NDRule::BetaEta: return seq::betaEta(toSeq(p->premisses[0], fresh, o), j.term, o);
    case NDRule::OverE: {
      SeqProof major = toSeq(p->premisses[0], fresh, o);
      SeqProof minor = toSeq(p->premisses[1], fresh, o);
      std::string x = fresh("x"), z = fresh("z");
      SeqProof left = seq::overL(minor, seq::ax(z, j.formula), z, x, o);
      return seq::cut(major, left, x, o);
    }
    case NDRule::UnderE: {
      SeqProof minor = toSeq(p->premisses[0], fresh, o);
      SeqProof major = toSeq(p->premisses[1], fresh, o);
      std::string x = fresh("x"), z = fresh("z");
      SeqProof right = seq::underL(minor, seq::ax(z, j.formula), z, x, o);
      return seq::cut(major, right, x, o);
    }
    case NDRule::LimpE: {
      SeqProof arg = toSeq(p->premisses[0], fresh, o);
      SeqProof fn = toSeq(p->premisses[1], fresh, o);
      std::string x = fresh("x"), z = fresh("z");
      SeqProof right = seq::limpL(arg, seq::ax(z, j.formula), z, x, o);
      return seq::cut(fn, right, x, o);
    }
  }
  throw RuleError("unknown ND rule");
}

NDProof toND(const SeqProof& p, Mode mode) {
  BuildOptions o{mode, true};
  const Judgment& j = p->conclusion;
  switch (p->rule) {
    case SeqRule::Ax: return nd::ax(p->var, j.formula);
    case SeqRule::Cut:
      return substitute(toND(p->premisses[1], mode), p->var, toND(p->premisses[0], mode), mode);
    case SeqRule::OverL: {
      const Formula& f = std::find_if(j.antecedent.begin(), j.antecedent.end(), [&](const Hyp& h) {
                           return !h.lexical() && h.name == p->var;
                         })->formula;
      NDProof inner = nd::overE(nd::ax(p->var, f), toND(p->premisses[0], mode), o);
      return substitute(toND(p->premisses[1], mode), p->var2, inner, mode);
    }
    case SeqRule::UnderL: {
      const Formula& f = std::find_if(j.antecedent.begin(), j.antecedent.end(), [&](const Hyp& h) {
                           return !h.lexical() && h.name == p->var;
                         })->formula;
      NDProof inner = nd::underE(toND(p->premisses[0], mode), nd::ax(p->var, f), o);
      return substitute(toND(p->premisses[1], mode), p->var2, inner, mode);
    }
    case SeqRule::LimpL: {
      const Formula& f = std::find_if(j.antecedent.begin(), j.antecedent.end(), [&](const Hyp& h) {
                           return !h.lexical() && h.name == p->var;
                         })->formula;
      NDProof inner = nd::limpE(toND(p->premisses[0], mode), nd::ax(p->var, f), o);
      return substitute(toND(p->premisses[1], mode), p->var2, inner, mode);
    }
    case SeqRule::OverR: return nd::overI(toND(p->premisses[0], mode), p->var, o);
    case SeqRule::UnderR: return nd::underI(toND(p->premisses[0], mode), p->var, o);
    case SeqRule::LimpR: return nd::limpI(toND(p->premisses[0], mode), p->var, o);
    case SeqRule::Lex:
      return substitute(toND(p->premisses[0], mode), p->var, nd::lex(*p->entry, o), mode);
    case SeqRule::BetaEta: return nd::betaEta(toND(p->premisses[0], mode), j.term, o);
  }
  throw RuleError("unknown sequent rule");
}

std::string lookupName(const std::map<std::string, std::string>& env, const std::string& n) {
  auto it = env.find(n);
  return it == env.end() ? n : it->second;
}

std::map<std::string, std::string> restrict(const std::map<std::string, std::string>& env, const Judgment& j) {
  std::map<std::string, std::string> out;
  for (const auto& h : j.antecedent)
    if (!h.lexical())
      if (auto it = env.find(h.name); it != env.end()) out.insert(*it);
  return out;
}

// Top-down renaming: `env` maps the node's antecedent variables to new names; variables
// introduced above the node get fresh names when `fresh` is set, otherwise keep theirs.
SeqProof rename(const SeqProof& p, const std::map<std::string, std::string>& env, Fresh* fresh,
                const BuildOptions& o) {
  auto newName = [&](const std::string& n) { return fresh ? (*fresh)(n) : n; };
  const auto& prem = p->premisses;
  switch (p->rule) {
    case SeqRule::Ax:
      return seq::ax(lookupName(env, p->var), p->conclusion.formula);
    case SeqRule::Cut: {
      auto leftEnv = restrict(env, prem[0]->conclusion);
      auto rightEnv = restrict(env, prem[1]->conclusion);
      std::string x = newName(p->var);
      rightEnv[p->var] = x;
      return seq::cut(rename(prem[0], leftEnv, fresh, o), rename(prem[1], rightEnv, fresh, o), x, o);
    }
    case SeqRule::OverL:
    case SeqRule::UnderL:
    case SeqRule::LimpL: {
      auto minorEnv = restrict(env, prem[0]->conclusion);
      auto majorEnv = restrict(env, prem[1]->conclusion);
      std::string q = newName(p->var2);
      majorEnv[p->var2] = q;
      SeqProof minor = rename(prem[0], minorEnv, fresh, o);
      SeqProof major = rename(prem[1], majorEnv, fresh, o);
      return seq::make(p->rule, {minor, major}, lookupName(env, p->var), q, std::nullopt, {}, {}, o);
    }
    case SeqRule::OverR:
    case SeqRule::UnderR:
    case SeqRule::LimpR:
    case SeqRule::Lex: {
      auto bodyEnv = restrict(env, prem[0]->conclusion);
      std::string v = newName(p->var);
      bodyEnv[p->var] = v;
      return seq::make(p->rule, {rename(prem[0], bodyEnv, fresh, o)}, v, {}, p->entry, {}, {}, o);
    }
    case SeqRule::BetaEta: {
      SeqProof c = rename(prem[0], restrict(env, prem[0]->conclusion), fresh, o);
      return seq::betaEta(c, c->conclusion.term, o);
    }
  }
  throw RuleError("unknown sequent rule");
}

}  // namespace

std::optional<RuleViolation> checkSeq(const SeqProof& p, const Lexicon* lexicon, Mode mode) {
  return checkNode(p, lexicon, mode, "root");
}

bool cutFree(const SeqProof& p) {
  if (p->rule == SeqRule::Cut) return false;
  return std::all_of(p->premisses.begin(), p->premisses.end(), [](const SeqProof& c) { return cutFree(c); });
}

SeqProof ndToSeq(const NDProof& p, Mode mode) {
  Fresh fresh(proofNames(p));
  return toSeq(p, fresh, BuildOptions{mode, true});
}

NDProof seqToND(const SeqProof& p, Mode mode) { return toND(p, mode); }

SeqProof freshenVariables(const SeqProof& p, Mode mode) {
  Fresh fresh(proofNames(p));
  return rename(p, {}, &fresh, BuildOptions{mode, true});
}

SeqProof renameFreeVariables(const SeqProof& p, const std::map<std::string, std::string>& names, Mode mode) {
  return rename(p, names, nullptr, BuildOptions{mode, true});
}

namespace {

void balanceOf(const Formula& f, Polarity pol, std::map<std::string, int>& out) {
  if (f.isAtom()) {
    out[f.name()] += pol == Polarity::positive ? 1 : -1;
    return;
  }
  balanceOf(f.result(), pol, out);
  balanceOf(f.arg(), flip(pol), out);
}

}  // namespace

std::map<std::string, int> atomBalance(const std::vector<Formula>& antecedent, const Formula& goal) {
  std::map<std::string, int> out;
  for (const auto& f : antecedent) balanceOf(f, Polarity::positive, out);
  balanceOf(goal, Polarity::negative, out);
  return out;
}

bool balanced(const std::vector<Formula>& antecedent, const Formula& goal) {
  for (const auto& [atom, n] : atomBalance(antecedent, goal))
    if (n != 0) return false;
  return true;
}

}  // namespace htlg
