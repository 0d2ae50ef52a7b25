#include "nd_gen.hpp"

#include <algorithm>
#include <set>

#include "grid.hpp"
#include "htlg/error.hpp"

namespace gen {

using namespace htlg;

NDGenerator::NDGenerator(unsigned seed, std::vector<LexEntry> entries, NDGenOptions opts)
    : rng_(seed), entries_(std::move(entries)), opts_(opts) {
  formulas_ = grid::formulas({"np", "s"}, 1, false);
  // A handful of depth-two shapes keeps axioms from dominating.
  for (const char* text : {"(np -o s) -o s", "(np\\s)/np", "np\\(s/np)", "(s/np)\\s", "np -o (np -o s)"})
    formulas_.push_back(parseFormula(text));
}

std::string NDGenerator::fresh() { return "v" + std::to_string(++counter_); }

NDProof NDGenerator::leaf() {
  if (!entries_.empty() && rng_() % 4 == 0) return nd::lex(entries_[rng_() % entries_.size()]);
  return nd::ax(fresh(), formulas_[rng_() % formulas_.size()]);
}

std::optional<NDProof> NDGenerator::intro(const NDProof& body) {
  std::vector<std::string> logical;
  for (const auto& h : body->conclusion.antecedent)
    if (!h.lexical()) logical.push_back(h.name);
  if (logical.empty()) return std::nullopt;
  const std::string x = logical[rng_() % logical.size()];
  try {
    switch (rng_() % 3) {
      case 0: return nd::limpI(body, x);
      case 1: return nd::overI(body, x);
      default: return nd::underI(body, x);
    }
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<NDProof> NDGenerator::elim(const NDProof& a, const NDProof& b) {
  const Formula& fa = a->conclusion.formula;
  const Formula& fb = b->conclusion.formula;
  try {
    if (fa.kind() == FormulaKind::Limp && fa.arg() == fb) return nd::limpE(b, a);
    if (fa.kind() == FormulaKind::Over && fa.arg() == fb) return nd::overE(a, b);
    if (fa.kind() == FormulaKind::Under && fa.arg() == fb) return nd::underE(b, a);
  } catch (const Error&) {
  }
  return std::nullopt;
}

NDProof NDGenerator::minorFor(const Formula& f, const std::vector<NDProof>& pool) {
  std::vector<NDProof> matching;
  for (const auto& p : pool)
    if (p->conclusion.formula == f) matching.push_back(p);
  for (const auto& e : entries_)
    if (e.formula == f) matching.push_back(nd::lex(e));
  if (!matching.empty() && rng_() % 2 == 0) return matching[rng_() % matching.size()];
  return nd::ax(fresh(), f);
}

std::optional<NDProof> NDGenerator::detour(const NDProof& body) {
  auto i = intro(body);
  if (!i) return std::nullopt;
  NDProof minor = minorFor((*i)->conclusion.formula.arg(), {});
  return elim(*i, minor);
}

std::vector<NDProof> NDGenerator::round() {
  std::vector<NDProof> pool;
  for (int k = 0; k < 3; ++k) pool.push_back(leaf());
  // Recent proofs are the larger ones; prefer them so rounds grow deep proofs.
  auto pick = [&]() -> const NDProof& {
    if (rng_() % 4 != 0) return pool[pool.size() - 1 - rng_() % std::min<std::size_t>(3, pool.size())];
    return pool[rng_() % pool.size()];
  };
  for (int step = 0; step < opts_.stepsPerRound; ++step) {
    std::optional<NDProof> made;
    switch (rng_() % 8) {
      case 0: made = leaf(); break;
      case 1: made = intro(pick()); break;
      case 2:
      case 3:
      case 4: {
        const NDProof& major = pick();
        const Formula& f = major->conclusion.formula;
        if (!f.isAtom()) made = elim(major, minorFor(f.arg(), pool));
        break;
      }
      case 5:
      case 6: made = detour(pick()); break;
      default: {
        const NDProof& p = pick();
        made = nd::betaEta(p, p->conclusion.term);
        break;
      }
    }
    if (made && proofSize(*made) <= opts_.maxSize) pool.push_back(*made);
  }
  return pool;
}

std::vector<LexEntry> shippedEntries(const std::string& dataDir) {
  std::vector<LexEntry> out;
  std::set<std::string> seen;
  for (const char* name : {"demo.lex", "scope.lex", "linear_coord.lex", "lambek_coord.lex"}) {
    Lexicon lex = Lexicon::load(dataDir + "/lexica/" + name);
    for (const auto& e : lex.entries())
      if (seen.insert(e.word).second) out.push_back(e);
  }
  return out;
}

bool hasDetour(const NDProof& p) {
  for (const auto& r : ndRedexes(p))
    if (r.kind == NDRedexKind::Detour) return true;
  return false;
}

}  // namespace gen
