#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htlg/judgment.hpp"
#include "htlg/lexicon.hpp"

namespace htlg {

// A proof tree node shared by the natural deduction and sequent calculi.
// `var` and `var2` name the variables a rule introduces, consumes or discharges;
// their meaning per rule is documented next to each rule enum.
template <class Rule>
struct ProofNode {
  Rule rule;
  std::vector<std::shared_ptr<const ProofNode>> premisses;
  Judgment conclusion;
  std::string var;
  std::string var2;
  std::optional<LexEntry> entry;
};

struct RuleViolation {
  std::string path;
  std::string reason;
};

struct BuildOptions {
  Mode mode = Mode::associative;
  // Store every conclusion term in canonical form (beta-eta and monoid normal).
  bool canonicalTerms = true;
};

template <class Rule>
std::size_t proofSize(const std::shared_ptr<const ProofNode<Rule>>& p) {
  std::size_t n = 1;
  for (const auto& c : p->premisses) n += proofSize(c);
  return n;
}

template <class Rule>
std::size_t proofHeight(const std::shared_ptr<const ProofNode<Rule>>& p) {
  std::size_t h = 0;
  for (const auto& c : p->premisses) h = std::max(h, proofHeight(c));
  return h + 1;
}

template <class Rule>
void forEachNode(const std::shared_ptr<const ProofNode<Rule>>& p,
                 const std::function<void(const ProofNode<Rule>&, const std::string&)>& f,
                 const std::string& path = "root") {
  f(*p, path);
  for (std::size_t i = 0; i < p->premisses.size(); ++i)
    forEachNode(p->premisses[i], f, path + "/" + std::to_string(i));
}

// Every variable or word name mentioned anywhere in the proof.
template <class Rule>
std::set<std::string> proofNames(const std::shared_ptr<const ProofNode<Rule>>& p) {
  std::set<std::string> out;
  forEachNode<Rule>(p, [&](const ProofNode<Rule>& n, const std::string&) {
    if (!n.var.empty()) out.insert(n.var);
    if (!n.var2.empty()) out.insert(n.var2);
    for (const auto& h : n.conclusion.antecedent) out.insert(h.name);
    for (const auto& s : namesIn(n.conclusion.term)) out.insert(s);
  });
  return out;
}

}  // namespace htlg
