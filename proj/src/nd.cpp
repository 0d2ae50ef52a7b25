#include "htlg/nd.hpp"

#include <algorithm>
#include <map>

#include "rules_common.hpp"

namespace htlg {

using namespace detail;

std::string toString(NDRule r) {
  switch (r) {
    case NDRule::Lex: return "Lex";
    case NDRule::Ax: return "Ax";
    case NDRule::LimpE: return "LimpE";
    case NDRule::LimpI: return "LimpI";
    case NDRule::OverE: return "OverE";
    case NDRule::OverI: return "OverI";
    case NDRule::UnderE: return "UnderE";
    case NDRule::UnderI: return "UnderI";
    case NDRule::BetaEta: return "BetaEta";
  }
  return "?";
}

std::optional<NDRule> ndRuleFromString(const std::string& s) {
  for (NDRule r : {NDRule::Lex, NDRule::Ax, NDRule::LimpE, NDRule::LimpI, NDRule::OverE, NDRule::OverI,
                   NDRule::UnderE, NDRule::UnderI, NDRule::BetaEta})
    if (toString(r) == s) return r;
  return std::nullopt;
}

namespace {

std::size_t arity(NDRule r) {
  switch (r) {
    case NDRule::Lex:
    case NDRule::Ax: return 0;
    case NDRule::LimpI:
    case NDRule::OverI:
    case NDRule::UnderI:
    case NDRule::BetaEta: return 1;
    default: return 2;
  }
}

Judgment derive(NDRule rule, const std::vector<NDProof>& prem, const std::string& var,
                const std::optional<LexEntry>& entry, const Term& term, const Formula& formula,
                const BuildOptions& o) {
  if (prem.size() != arity(rule))
    throw RuleError(toString(rule) + " expects " + std::to_string(arity(rule)) + " premisses");
  auto J = [&](std::size_t i) -> const Judgment& { return prem[i]->conclusion; };
  switch (rule) {
    case NDRule::Lex: {
      if (!entry) throw RuleError("Lex node without a lexical entry");
      return Judgment{{entry->hyp()}, finish(entry->term, o), entry->formula};
    }
    case NDRule::Ax: {
      if (var.empty() || !formula) throw RuleError("Ax needs a variable and a formula");
      return Judgment{{Hyp::logical(var, formula)}, Term::var(var, pros(formula)), formula};
    }
    case NDRule::LimpE: {
      const Judgment& arg = J(0);
      const Judgment& fn = J(1);
      if (fn.formula.kind() != FormulaKind::Limp) throw RuleError("function premiss is not a -o formula");
      if (!(fn.formula.arg() == arg.formula))
        throw RuleError("argument has type " + arg.formula.str() + ", function expects " + fn.formula.arg().str());
      return Judgment{joinDisjoint(arg.antecedent, fn.antecedent), finish(Term::app(fn.term, arg.term), o),
                      fn.formula.result()};
    }
    case NDRule::OverE: {
      const Judgment& major = J(0);
      const Judgment& minor = J(1);
      if (major.formula.kind() != FormulaKind::Over) throw RuleError("major premiss is not a / formula");
      if (!(major.formula.arg() == minor.formula))
        throw RuleError("minor premiss has type " + minor.formula.str() + ", expected " + major.formula.arg().str());
      return Judgment{joinDisjoint(major.antecedent, minor.antecedent), finish(Term::plus(major.term, minor.term), o),
                      major.formula.result()};
    }
    case NDRule::UnderE: {
      const Judgment& minor = J(0);
      const Judgment& major = J(1);
      if (major.formula.kind() != FormulaKind::Under) throw RuleError("major premiss is not a \\ formula");
      if (!(major.formula.arg() == minor.formula))
        throw RuleError("minor premiss has type " + minor.formula.str() + ", expected " + major.formula.arg().str());
      return Judgment{joinDisjoint(minor.antecedent, major.antecedent), finish(Term::plus(minor.term, major.term), o),
                      major.formula.result()};
    }
    case NDRule::LimpI: {
      const Judgment& body = J(0);
      int i = findLogical(body.antecedent, var);
      if (i < 0) throw RuleError("discharged variable '" + var + "' is not in the antecedent");
      if (body.antecedent.size() < 2) throw RuleError("introduction would leave an empty antecedent");
      const Formula& a = body.antecedent[i].formula;
      return Judgment{without(body.antecedent, i), finish(Term::abs(var, pros(a), body.term), o),
                      Formula::limp(a, body.formula)};
    }
    case NDRule::OverI:
    case NDRule::UnderI: {
      const Judgment& body = J(0);
      int i = 0;
      const Hyp& h = slashHypothesis(body.antecedent, var, i);
      bool over = rule == NDRule::OverI;
      Formula f = over ? overFormula(body.formula, h.formula) : underFormula(h.formula, body.formula);
      Term m = stripSlashVariable(body.term, var, over, o.mode);
      return Judgment{without(body.antecedent, i), finish(m, o), f};
    }
    case NDRule::BetaEta: {
      const Judgment& p = J(0);
      if (!term) throw RuleError("BetaEta node without a term");
      if (!equivalent(p.term, term, o.mode)) throw RuleError("terms are not beta-eta equivalent");
      return Judgment{p.antecedent, term, p.formula};
    }
  }
  throw RuleError("unknown rule");
}

}  // namespace

namespace nd {

NDProof make(NDRule rule, std::vector<NDProof> premisses, const std::string& var,
             const std::optional<LexEntry>& entry, const Term& term, const Formula& formula,
             const BuildOptions& o) {
  Judgment j = derive(rule, premisses, var, entry, term, formula, o);
  auto node = std::make_shared<NDNode>();
  node->rule = rule;
  node->premisses = std::move(premisses);
  node->conclusion = std::move(j);
  if (rule == NDRule::Ax || rule == NDRule::LimpI || rule == NDRule::OverI || rule == NDRule::UnderI) node->var = var;
  if (rule == NDRule::Lex) node->entry = entry;
  return node;
}

NDProof lex(const LexEntry& e, const BuildOptions& o) { return make(NDRule::Lex, {}, {}, e, {}, {}, o); }
NDProof ax(const std::string& x, const Formula& a) { return make(NDRule::Ax, {}, x, std::nullopt, {}, a); }
NDProof limpE(NDProof arg, NDProof fn, const BuildOptions& o) {
  return make(NDRule::LimpE, {std::move(arg), std::move(fn)}, {}, std::nullopt, {}, {}, o);
}
NDProof limpI(NDProof body, const std::string& x, const BuildOptions& o) {
  return make(NDRule::LimpI, {std::move(body)}, x, std::nullopt, {}, {}, o);
}
NDProof overE(NDProof major, NDProof minor, const BuildOptions& o) {
  return make(NDRule::OverE, {std::move(major), std::move(minor)}, {}, std::nullopt, {}, {}, o);
}
NDProof overI(NDProof body, const std::string& p, const BuildOptions& o) {
  return make(NDRule::OverI, {std::move(body)}, p, std::nullopt, {}, {}, o);
}
NDProof underE(NDProof minor, NDProof major, const BuildOptions& o) {
  return make(NDRule::UnderE, {std::move(minor), std::move(major)}, {}, std::nullopt, {}, {}, o);
}
NDProof underI(NDProof body, const std::string& p, const BuildOptions& o) {
  return make(NDRule::UnderI, {std::move(body)}, p, std::nullopt, {}, {}, o);
}
NDProof betaEta(NDProof premiss, const Term& term, const BuildOptions& o) {
  return make(NDRule::BetaEta, {std::move(premiss)}, {}, std::nullopt, term, {}, o);
}

}  // namespace nd

namespace {

NDProof remake(const NDNode& n, std::vector<NDProof> premisses, const BuildOptions& o) {
  return nd::make(n.rule, std::move(premisses), n.var, n.entry, n.conclusion.term, n.conclusion.formula, o);
}

bool isIntro(NDRule r) { return r == NDRule::LimpI || r == NDRule::OverI || r == NDRule::UnderI; }

std::optional<RuleViolation> checkNode(const NDProof& p, const Lexicon* lexicon, Mode mode, const std::string& path) {
  for (std::size_t i = 0; i < p->premisses.size(); ++i)
    if (auto v = checkNode(p->premisses[i], lexicon, mode, path + "/" + std::to_string(i))) return v;
  BuildOptions o{mode, false};
  try {
    Judgment expect = derive(p->rule, p->premisses, p->var, p->entry, p->conclusion.term, p->conclusion.formula, o);
    if (!sameConclusion(expect, p->conclusion, mode))
      return RuleViolation{path, toString(p->rule) + ": conclusion " + p->conclusion.str() + " does not follow; expected " +
                                     expect.str()};
  } catch (const Error& e) {
    return RuleViolation{path, toString(p->rule) + ": " + e.what()};
  }
  if (p->rule == NDRule::Lex && lexicon) {
    bool found = false;
    for (const auto& e : lexicon->lookup(p->entry->word))
      if (e.formula == p->entry->formula && equivalent(e.term, p->entry->term, mode)) found = true;
    if (!found) return RuleViolation{path, "Lex: no lexicon entry " + p->entry->word + " : " + p->entry->formula.str()};
  }
  return std::nullopt;
}

bool holdsLogical(const Judgment& j, const std::string& x) {
  return std::any_of(j.antecedent.begin(), j.antecedent.end(),
                     [&](const Hyp& h) { return !h.lexical() && h.name == x; });
}

NDProof graft(const NDProof& n, const std::string& x, const NDProof& inner, const BuildOptions& o) {
  if (n->rule == NDRule::Ax && n->var == x) return inner;
  std::vector<NDProof> prem;
  for (const auto& c : n->premisses) prem.push_back(holdsLogical(c->conclusion, x) ? graft(c, x, inner, o) : c);
  Term t = n->rule == NDRule::BetaEta ? substitute(n->conclusion.term, x, inner->conclusion.term) : Term{};
  return nd::make(n->rule, std::move(prem), n->var, n->entry, t, n->conclusion.formula, o);
}

// Renames discharged variables of `p` that occur in `avoid`.
NDProof renameDischarged(const NDProof& p, const std::set<std::string>& avoid, const BuildOptions& o) {
  std::vector<NDProof> prem;
  bool changed = false;
  for (const auto& c : p->premisses) {
    prem.push_back(renameDischarged(c, avoid, o));
    changed |= prem.back() != c;
  }
  if (isIntro(p->rule) && avoid.count(p->var)) {
    std::set<std::string> used = avoid;
    for (const auto& s : proofNames(p)) used.insert(s);
    std::string fresh = freshName(p->var, used);
    int i = findLogical(prem[0]->conclusion.antecedent, p->var);
    NDProof leaf = nd::ax(fresh, prem[0]->conclusion.antecedent[i].formula);
    NDProof body = graft(prem[0], p->var, leaf, o);
    return nd::make(p->rule, {body}, fresh, std::nullopt, {}, {}, o);
  }
  if (!changed) return p;
  return remake(*p, std::move(prem), o);
}

const NDNode& skipBetaEta(const NDNode& n) {
  const NDNode* cur = &n;
  while (cur->rule == NDRule::BetaEta) cur = cur->premisses[0].get();
  return *cur;
}

const NDNode* detourIntro(const NDNode& n) {
  const NDNode* major = nullptr;
  NDRule want;
  switch (n.rule) {
    case NDRule::LimpE: major = n.premisses[1].get(); want = NDRule::LimpI; break;
    case NDRule::OverE: major = n.premisses[0].get(); want = NDRule::OverI; break;
    case NDRule::UnderE: major = n.premisses[1].get(); want = NDRule::UnderI; break;
    default: return nullptr;
  }
  const NDNode& core = skipBetaEta(*major);
  return core.rule == want ? &core : nullptr;
}

void collectRedexes(const NDProof& p, std::vector<int>& path, std::vector<NDRedex>& out) {
  if (detourIntro(*p)) out.push_back({path, NDRedexKind::Detour});
  if (p->rule == NDRule::BetaEta) {
    const NDProof& c = p->premisses[0];
    if (c->rule == NDRule::BetaEta) out.push_back({path, NDRedexKind::BetaEtaChain});
    if (termKey(canonical(c->conclusion.term)) == termKey(canonical(p->conclusion.term)))
      out.push_back({path, NDRedexKind::BetaEtaNoop});
  }
  for (std::size_t i = 0; i < p->premisses.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collectRedexes(p->premisses[i], path, out);
    path.pop_back();
  }
}

NDProof convert(const NDProof& p, NDRedexKind kind, const BuildOptions& o) {
  switch (kind) {
    case NDRedexKind::Detour: {
      const NDNode* intro = detourIntro(*p);
      if (!intro) throw RuleError("no detour at this node");
      const NDProof& minor = p->rule == NDRule::OverE ? p->premisses[1] : p->premisses[0];
      return substitute(intro->premisses[0], intro->var, minor, o.mode);
    }
    case NDRedexKind::BetaEtaChain:
      return nd::betaEta(p->premisses[0]->premisses[0], p->conclusion.term, o);
    case NDRedexKind::BetaEtaNoop:
      return p->premisses[0];
  }
  return p;
}

NDProof replaceAt(const NDProof& p, const std::vector<int>& path, std::size_t i, const NDProof& repl,
                  const BuildOptions& o) {
  if (i == path.size()) return repl;
  std::vector<NDProof> prem = p->premisses;
  prem[path[i]] = replaceAt(prem[path[i]], path, i + 1, repl, o);
  return remake(*p, std::move(prem), o);
}

NDProof atPath(const NDProof& p, const std::vector<int>& path) {
  NDProof cur = p;
  for (int i : path) cur = cur->premisses.at(i);
  return cur;
}

}  // namespace

std::optional<RuleViolation> checkND(const NDProof& p, const Lexicon* lexicon, Mode mode) {
  return checkNode(p, lexicon, mode, "root");
}

NDProof substitute(const NDProof& outer, const std::string& x, const NDProof& inner, Mode mode) {
  BuildOptions o{mode, true};
  const auto& ante = outer->conclusion.antecedent;
  int i = -1;
  for (std::size_t k = 0; k < ante.size(); ++k)
    if (!ante[k].lexical() && ante[k].name == x) i = static_cast<int>(k);
  if (i < 0) throw RuleError("variable '" + x + "' is not a hypothesis of the outer proof");
  if (!(ante[i].formula == inner->conclusion.formula))
    throw FormulaMismatch("hypothesis " + x + " has type " + ante[i].formula.str() + " but the proof concludes " +
                          inner->conclusion.formula.str());
  auto innerNames = logicalNames(inner->conclusion.antecedent);
  for (std::size_t k = 0; k < ante.size(); ++k)
    if (static_cast<int>(k) != i && !ante[k].lexical() && innerNames.count(ante[k].name))
      throw VariableClash("variable '" + ante[k].name + "' is free in both proofs");
  NDProof renamed = renameDischarged(outer, innerNames, o);
  return graft(renamed, x, inner, o);
}

NDProof canonicalize(const NDProof& p, Mode mode) {
  BuildOptions o{mode, true};
  std::vector<NDProof> prem;
  for (const auto& c : p->premisses) prem.push_back(canonicalize(c, mode));
  Term t = p->rule == NDRule::BetaEta ? canonical(p->conclusion.term, mode) : p->conclusion.term;
  return nd::make(p->rule, std::move(prem), p->var, p->entry, t, p->conclusion.formula, o);
}

std::vector<NDRedex> ndRedexes(const NDProof& p) {
  std::vector<NDRedex> out;
  std::vector<int> path;
  collectRedexes(p, path, out);
  return out;
}

NDProof ndConvertAt(const NDProof& p, const NDRedex& r, Mode mode) {
  BuildOptions o{mode, true};
  NDProof target = atPath(p, r.path);
  return replaceAt(p, r.path, 0, convert(target, r.kind, o), o);
}

NDProof normalizeND(const NDProof& p, Mode mode, NormalizeStats* stats) {
  NDProof cur = canonicalize(p, mode);
  std::size_t steps = 0;
  for (;;) {
    auto rs = ndRedexes(cur);
    if (rs.empty()) break;
    cur = ndConvertAt(cur, rs.front(), mode);
    ++steps;
  }
  if (stats) stats->steps = steps;
  return cur;
}

bool isNormal(const NDProof& p) { return ndRedexes(p).empty(); }

std::optional<SubformulaViolation> subformulaCheck(const NDProof& p) {
  std::set<std::string> allowed;
  for (const auto& f : subformulas(p->conclusion.formula)) allowed.insert(f.str());
  for (const auto& h : p->conclusion.antecedent)
    for (const auto& f : subformulas(h.formula)) allowed.insert(f.str());
  std::optional<SubformulaViolation> out;
  forEachNode<NDRule>(p, [&](const NDNode& n, const std::string& path) {
    if (out) return;
    if (!allowed.count(n.conclusion.formula.str())) {
      out = SubformulaViolation{path, n.conclusion.formula};
      return;
    }
    for (const auto& h : n.conclusion.antecedent)
      if (!allowed.count(h.formula.str())) {
        out = SubformulaViolation{path, h.formula};
        return;
      }
  });
  return out;
}

namespace {

Term renameAll(Term t, const std::map<std::string, std::string>& names) {
  for (const auto& [from, to] : names) t = renameFree(t, from, to);
  return t;
}

void keyOf(const NDProof& p, std::map<std::string, std::string> names, int& counter, Mode mode, std::string& out) {
  out += "(" + toString(p->rule);
  std::vector<std::string> ante;
  for (const auto& h : p->conclusion.antecedent) {
    auto it = names.find(h.name);
    std::string name = h.lexical() ? "w:" + h.name : "v:" + (it != names.end() ? it->second : h.name);
    ante.push_back(name + ":" + h.formula.str());
  }
  std::sort(ante.begin(), ante.end());
  out += " [";
  for (const auto& a : ante) out += a + ";";
  out += "] " + termKey(renameAll(canonical(p->conclusion.term, mode), names)) + " : " + p->conclusion.formula.str();
  if (p->rule == NDRule::Ax) {
    auto it = names.find(p->var);
    out += " ax=" + (it != names.end() ? it->second : p->var);
  }
  if (isIntro(p->rule)) {
    std::string fresh = "#d" + std::to_string(counter++);
    names[p->var] = fresh;
    out += " d=" + fresh;
  }
  for (const auto& c : p->premisses) {
    out += " ";
    keyOf(c, names, counter, mode, out);
  }
  out += ")";
}

}  // namespace

std::string ndCanonicalKey(const NDProof& p, Mode mode) {
  std::string out;
  int counter = 0;
  keyOf(p, {}, counter, mode, out);
  return out;
}

}  // namespace htlg
