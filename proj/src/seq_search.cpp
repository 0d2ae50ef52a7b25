#include <unordered_set>

#include "htlg/error.hpp"
#include "htlg/sequent.hpp"

namespace htlg {

namespace {

class Search {
 public:
  Search(const SearchOptions& opts, std::set<std::string> used) : opts_(opts), used_(std::move(used)) {}

  std::vector<SeqProof> run(const std::vector<Hyp>& ctx, const Formula& goal, std::size_t limit) {
    std::vector<Formula> forms;
    for (const auto& h : ctx) forms.push_back(h.formula);
    if (ctx.empty() || !balanced(forms, goal)) return {};

    std::vector<SeqProof> out;
    std::unordered_set<std::string> seen;
    auto add = [&](SeqProof p) {
      if (seen.insert(termKey(canonical(p->conclusion.term, opts_.mode))).second) out.push_back(std::move(p));
      return limit && out.size() >= limit;
    };

    if (ctx.size() == 1 && goal.isAtom() && ctx[0].formula == goal)
      if (add(seq::ax(ctx[0].name, goal))) return out;

    // Right rules.
    if (!goal.isAtom()) {
      std::string v = fresh(goal.kind() == FormulaKind::Limp ? "x" : "p");
      std::vector<Hyp> next = ctx;
      next.push_back(Hyp::logical(v, goal.arg()));
      for (const auto& body : run(next, goal.result(), 0)) {
        try {
          SeqProof p = goal.kind() == FormulaKind::Over    ? seq::overR(body, v, o())
                       : goal.kind() == FormulaKind::Under ? seq::underR(body, v, o())
                                                           : seq::limpR(body, v, o());
          if (add(p)) return out;
        } catch (const RuleError&) {
          // word order does not put v at the required edge
        }
      }
    }

    // Left rules.
    const std::size_t n = ctx.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Hyp& h = ctx[i];
      if (h.formula.isAtom()) continue;
      std::vector<Hyp> others;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) others.push_back(ctx[k]);
      const std::size_t m = others.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        std::vector<Hyp> delta, gamma;
        std::vector<Formula> deltaForms, gammaForms;
        for (std::size_t k = 0; k < m; ++k) {
          if (mask & (std::size_t{1} << k)) {
            delta.push_back(others[k]);
            deltaForms.push_back(others[k].formula);
          } else {
            gamma.push_back(others[k]);
            gammaForms.push_back(others[k].formula);
          }
        }
        const Formula& a = h.formula.arg();
        const Formula& b = h.formula.result();
        if (!balanced(deltaForms, a)) continue;
        gammaForms.push_back(b);
        if (!balanced(gammaForms, goal)) continue;
        auto minors = run(delta, a, 0);
        if (minors.empty()) continue;
        std::string q = fresh(h.formula.kind() == FormulaKind::Limp ? "y" : "q");
        gamma.push_back(Hyp::logical(q, b));
        auto majors = run(gamma, goal, 0);
        for (const auto& minor : minors)
          for (const auto& major : majors) {
            SeqProof p = h.formula.kind() == FormulaKind::Over    ? seq::overL(minor, major, q, h.name, o())
                         : h.formula.kind() == FormulaKind::Under ? seq::underL(minor, major, q, h.name, o())
                                                                  : seq::limpL(minor, major, q, h.name, o());
            if (add(p)) return out;
          }
      }
    }
    return out;
  }

 private:
  BuildOptions o() const { return BuildOptions{opts_.mode, true}; }
  std::string fresh(const std::string& base) {
    std::string n = base + std::to_string(++counter_);
    while (used_.count(n)) n = base + std::to_string(++counter_);
    used_.insert(n);
    return n;
  }

  SearchOptions opts_;
  std::set<std::string> used_;
  int counter_ = 0;
};

}  // namespace

std::vector<SeqProof> proveSeq(const std::vector<Hyp>& antecedent, const Formula& goal, const SearchOptions& opts) {
  std::set<std::string> used;
  for (const auto& h : antecedent) used.insert(h.name);
  Search search(opts, used);

  // Lexical hypotheses become logical ones; their Lex rules go at the bottom.
  std::vector<Hyp> ctx;
  std::vector<std::pair<std::string, LexEntry>> lexical;
  int k = 0;
  for (const auto& h : antecedent) {
    if (h.lexical()) {
      std::string x = "_l" + std::to_string(k++);
      while (used.count(x)) x = "_l" + std::to_string(k++);
      used.insert(x);
      lexical.emplace_back(x, LexEntry{h.name, h.formula, *h.lexTerm});
      ctx.push_back(Hyp::logical(x, h.formula));
    } else {
      ctx.push_back(h);
    }
  }

  std::size_t limit = opts.firstOnly ? 1 : opts.maxResults;
  std::vector<SeqProof> logical = search.run(ctx, goal, lexical.empty() ? limit : 0);

  std::vector<SeqProof> out;
  std::unordered_set<std::string> seen;
  BuildOptions o{opts.mode, true};
  for (auto p : logical) {
    for (const auto& [x, entry] : lexical) p = seq::lex(p, x, entry, o);
    if (seen.insert(termKey(canonical(p->conclusion.term, opts.mode))).second) out.push_back(p);
    if (limit && out.size() >= limit) break;
  }
  return out;
}

}  // namespace htlg
