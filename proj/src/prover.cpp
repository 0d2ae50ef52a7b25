#include "htlg/prover.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <set>
#include <thread>

#include "htlg/error.hpp"

namespace htlg {

bool yieldMatches(const Term& term, const std::vector<std::string>& names) {
  std::vector<Term> parts = spine(canonical(term, Mode::associative));
  if (parts.size() == 1 && parts[0].is(TermKind::Eps)) parts.clear();
  if (parts.size() != names.size()) return false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].is(TermKind::Word) && !parts[i].is(TermKind::Var)) return false;
    if (parts[i].name() != names[i]) return false;
  }
  return true;
}

namespace {

struct Candidate {
  std::size_t order;
  Derivation derivation;
  std::string key;
};

struct LinkingOutcome {
  bool contracted = false;
  bool orderRejected = false;
  bool switchingRejected = false;
  std::size_t steps = 0;
  std::optional<Derivation> derivation;
};

LinkingOutcome tryLinking(const LinkingEnumerator& e, const Linking& l, const Formula& goal,
                          const NetSearchOptions& opts) {
  LinkingOutcome out;
  ProofStructure ps;
  try {
    ps = e.apply(l);
  } catch (const NotContractible&) {
    return out;
  }
  if (opts.switchingFilter && !passesSwitchingTest(ps)) {
    out.switchingRejected = true;
    return out;
  }
  APS g = toAPS(ps);
  ContractionResult r = contractToLambdaGraph(g, opts.mode, opts.useEta);
  out.steps = r.trace.size();
  if (!r.success) return out;
  out.contracted = true;
  Term term = canonical(*r.term, opts.mode);
  if (opts.expectedYield && pros(goal) == ProsType::st() && !yieldMatches(term, *opts.expectedYield)) {
    out.orderRejected = true;
    return out;
  }
  Derivation d{{}, ps, l, r.trace, r.initialSize, term, nullptr};
  if (opts.sequentialise) d.ndProof = sequentialise(ps, r.trace, opts.mode);
  out.derivation = std::move(d);
  return out;
}

std::string derivationKey(const Derivation& d, Mode mode) {
  std::string key = termKey(d.term);
  if (d.ndProof) key += "|" + ndCanonicalKey(normalizeND(d.ndProof, mode), mode);
  else
    for (const auto& [x, y] : d.linking) key += "|" + std::to_string(x) + "-" + std::to_string(y);
  return key;
}

}  // namespace

std::vector<Derivation> proveNets(const std::vector<Hyp>& hypotheses, const Formula& goal, const NetSearchOptions& opts,
                                  ParseStats* stats) {
  ParseStats local;
  ParseStats& st = stats ? *stats : local;
  if (hypotheses.empty()) return {};
  LinkingEnumerator e{ProofStructure(hypotheses, goal)};
  if (e.mismatch()) {
    ++st.countMismatches;
    return {};
  }

  std::vector<Candidate> found;
  std::set<std::string> keys;
  auto accept = [&](std::size_t order, LinkingOutcome&& o) {
    ++st.linkingsExamined;
    st.contractionSteps += o.steps;
    st.contracted += o.contracted;
    st.orderRejected += o.orderRejected;
    st.switchingRejected += o.switchingRejected;
    if (!o.derivation) return;
    std::string key = derivationKey(*o.derivation, opts.mode);
    if (!keys.insert(key).second) return;
    found.push_back({order, std::move(*o.derivation), key});
  };
  auto enough = [&] { return opts.maxResults && found.size() >= *opts.maxResults; };

  if (opts.jobs <= 1) {
    std::size_t order = 0;
    e.forEach([&](const Linking& l) {
      accept(order++, tryLinking(e, l, goal, opts));
      return !enough();
    });
  } else {
    std::vector<Linking> all;
    e.forEach([&](const Linking& l) {
      all.push_back(l);
      return true;
    });
    std::vector<LinkingOutcome> outcomes(all.size());
    std::vector<std::thread> workers;
    std::mutex failMutex;
    std::exception_ptr failure;
    for (unsigned w = 0; w < opts.jobs; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < all.size(); i += opts.jobs) {
          try {
            outcomes[i] = tryLinking(e, all[i], goal, opts);
          } catch (...) {
            std::lock_guard lock(failMutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < outcomes.size() && !enough(); ++i) accept(i, std::move(outcomes[i]));
  }

  std::vector<Derivation> out;
  for (auto& c : found) out.push_back(std::move(c.derivation));
  return out;
}

ParseResult parse(const ParseRequest& req, const Lexicon& lex) {
  auto start = std::chrono::steady_clock::now();
  ParseResult result;
  if (req.tokens.empty()) return result;
  std::vector<std::vector<LexEntry>> choices;
  for (const auto& t : req.tokens) {
    auto entries = lex.lookup(t);
    if (entries.empty()) throw UnknownWord(t);
    choices.push_back(std::move(entries));
  }
  if (req.orderCheck && !(pros(req.goal) == ProsType::st()))
    result.warnings.push_back("goal " + req.goal.str() + " is not of string type; word order is not checked");

  NetSearchOptions opts;
  opts.mode = req.mode;
  opts.useEta = req.useEta;
  if (req.orderCheck) opts.expectedYield = req.tokens;
  opts.jobs = std::max(1u, req.jobs);

  std::set<std::string> keys;
  std::vector<std::size_t> index(req.tokens.size(), 0);
  while (true) {
    ++result.stats.lexicalChoices;
    std::vector<LexEntry> choice;
    std::vector<Hyp> hyps;
    for (std::size_t i = 0; i < index.size(); ++i) {
      choice.push_back(choices[i][index[i]]);
      hyps.push_back(choice.back().hyp());
    }
    if (req.maxDerivations) opts.maxResults = *req.maxDerivations - result.derivations.size();
    for (auto& d : proveNets(hyps, req.goal, opts, &result.stats)) {
      if (!keys.insert(derivationKey(d, req.mode)).second) continue;
      d.lexChoice = choice;
      result.derivations.push_back(std::move(d));
    }
    if (req.maxDerivations && result.derivations.size() >= *req.maxDerivations) break;
    bool carried = true;
    for (std::size_t k = index.size(); carried && k-- > 0;) {
      if (++index[k] < choices[k].size()) carried = false;
      else index[k] = 0;
    }
    if (carried) break;
  }
  result.stats.wallSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace htlg
