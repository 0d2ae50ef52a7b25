#include <set>

#include "htlg/aps.hpp"
#include "htlg/error.hpp"

namespace htlg {

namespace {

std::optional<RewriteRule> parRule(const ALink& l) {
  if (l.type != LinkType::par) return std::nullopt;
  if (l.index == LinkIndex::lambda) return RewriteRule::LimpI;
  if (l.index == LinkIndex::plus) return l.main == 0 ? RewriteRule::OverI : RewriteRule::UnderI;
  return std::nullopt;
}

std::optional<TraceStep> nextStep(const APS& g, Mode mode, bool useEta) {
  for (RewriteRule r : {RewriteRule::Beta, RewriteRule::EpsL, RewriteRule::EpsR, RewriteRule::Assoc}) {
    auto s = g.sites(r, mode);
    if (!s.empty()) return TraceStep{r, s.front()};
  }
  const auto& links = g.links();
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (!links[i].alive) continue;
    auto r = parRule(links[i]);
    if (r && !g.whyNot(*r, static_cast<int>(i), mode)) return TraceStep{*r, static_cast<int>(i)};
  }
  if (useEta) {
    auto s = g.sites(RewriteRule::Eta, mode);
    if (!s.empty()) return TraceStep{RewriteRule::Eta, s.front()};
  }
  return std::nullopt;
}

std::vector<TraceStep> allSteps(const APS& g, Mode mode, bool useEta) {
  std::vector<TraceStep> out;
  for (RewriteRule r : {RewriteRule::Beta, RewriteRule::EpsL, RewriteRule::EpsR, RewriteRule::Assoc, RewriteRule::OverI,
                        RewriteRule::UnderI, RewriteRule::LimpI, RewriteRule::Eta}) {
    if (r == RewriteRule::Eta && !useEta) continue;
    for (int s : g.sites(r, mode)) out.push_back({r, s});
  }
  return out;
}

StrategyOutcome outcomeOf(const APS& g) {
  if (g.parCount() != 0 || lambdaGraphViolation(g)) return {false, ""};
  return {true, termKey(graphToTerm(g))};
}

}  // namespace

ContractionResult contractToLambdaGraph(APS g, Mode mode, bool useEta) {
  ContractionResult r;
  r.initialSize = g.size();
  while (auto step = nextStep(g, mode, useEta)) {
    try {
      g.apply(step->rule, step->site, mode);
    } catch (const SiteMismatch& e) {
      r.diagnostics = toString(step->rule) + " at link " + std::to_string(step->site) + " failed: " + e.what() + "\n";
      r.final = std::move(g);
      return r;
    }
    r.trace.push_back(*step);
  }
  for (std::size_t i = 0; i < g.links().size(); ++i) {
    const ALink& l = g.links()[i];
    if (!l.alive || l.type != LinkType::par) continue;
    r.stuckPars.push_back(static_cast<int>(i));
    if (auto rule = parRule(l))
      if (auto why = g.whyNot(*rule, static_cast<int>(i), mode))
        r.diagnostics += toString(*rule) + " at link " + std::to_string(i) + ": " + *why + "\n";
  }
  if (r.stuckPars.empty()) {
    int cond = 0;
    if (auto why = lambdaGraphViolation(g, &cond)) {
      r.diagnostics += "condition " + std::to_string(cond) + ": " + *why + "\n";
    } else {
      r.term = graphToTerm(g);
      r.success = true;
    }
  }
  r.final = std::move(g);
  return r;
}

APS replayTrace(APS g, const std::vector<TraceStep>& trace, Mode mode) {
  for (const auto& s : trace) g.apply(s.rule, s.site, mode);
  return g;
}

std::vector<StrategyOutcome> allStrategyOutcomes(const APS& g, Mode mode, bool useEta, std::size_t maxStates) {
  std::set<StrategyOutcome> outcomes;
  std::size_t visited = 0;
  std::vector<APS> stack{g};
  while (!stack.empty() && visited < maxStates) {
    APS cur = std::move(stack.back());
    stack.pop_back();
    ++visited;
    auto steps = allSteps(cur, mode, useEta);
    if (steps.empty()) {
      outcomes.insert(outcomeOf(cur));
      continue;
    }
    for (const auto& s : steps) {
      APS next = cur;
      try {
        next.apply(s.rule, s.site, mode);
      } catch (const SiteMismatch&) {
        outcomes.insert({false, ""});
        continue;
      }
      stack.push_back(std::move(next));
    }
  }
  return {outcomes.begin(), outcomes.end()};
}

}  // namespace htlg
