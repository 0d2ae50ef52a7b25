#include <functional>
#include <map>
#include <set>

#include "htlg/error.hpp"
#include "htlg/prover.hpp"

namespace htlg {

NDProof sequentialise(const ProofStructure& net, const std::vector<TraceStep>& trace, Mode mode) {
  APS final;
  try {
    final = replayTrace(toAPS(net), trace, mode);
  } catch (const Error& e) {
    throw InvalidTrace(std::string("trace does not replay: ") + e.what());
  }
  if (final.parCount() != 0) throw InvalidTrace("trace leaves par links");
  int cond = 0;
  if (auto why = lambdaGraphViolation(final, &cond))
    throw InvalidTrace("trace does not end in a lambda graph: condition " + std::to_string(cond) + ": " + *why);
  Term expected = graphToTerm(final);

  const auto& verts = net.vertices();
  const auto& links = net.links();
  std::set<std::string> used;
  for (const auto& h : net.hypotheses()) {
    used.insert(h.name);
    if (h.lexTerm)
      for (const auto& n : namesIn(*h.lexTerm)) used.insert(n);
  }
  std::map<int, std::string> discharged;  // par link -> variable name
  auto nameFor = [&](int link) {
    auto it = discharged.find(link);
    if (it != discharged.end()) return it->second;
    std::string x = freshName(links[link].index == LinkIndex::lambda ? "x" : "p", used);
    used.insert(x);
    discharged.emplace(link, x);
    return x;
  };

  BuildOptions o{mode, true};
  std::set<int> visiting;
  std::function<NDProof(int)> read = [&](int v) -> NDProof {
    if (!visiting.insert(v).second) throw InvalidTrace("cycle through vertex " + std::to_string(v));
    const PSVertex& pv = verts[v];
    if (pv.inLink < 0) {
      if (pv.hypothesis < 0) throw InvalidTrace("vertex " + std::to_string(v) + " is an unlabelled hypothesis");
      const Hyp& h = net.hypotheses()[pv.hypothesis];
      if (h.lexical()) return nd::lex(LexEntry{h.name, h.formula, *h.lexTerm}, o);
      return nd::ax(h.name, h.formula);
    }
    const Link& l = links[pv.inLink];
    if (l.type == LinkType::par) {
      std::string x = nameFor(pv.inLink);
      if (v != l.mainVertex()) return nd::ax(x, pv.formula);
      NDProof body = read(l.premisses[0]);
      if (l.index == LinkIndex::lambda) return nd::limpI(body, x, o);
      return l.main == 0 ? nd::overI(body, x, o) : nd::underI(body, x, o);
    }
    int minorIndex = l.main == 0 ? 1 : 0;
    NDProof major = read(l.premisses[l.main]);
    NDProof minor = read(l.premisses[minorIndex]);
    if (l.index == LinkIndex::app) return nd::limpE(minor, major, o);
    return l.main == 0 ? nd::overE(major, minor, o) : nd::underE(minor, major, o);
  };

  NDProof p;
  try {
    p = read(net.goalVertex());
  } catch (const RuleError& e) {
    throw InvalidTrace(std::string("net does not sequentialise: ") + e.what());
  }
  if (!sameAntecedent(p->conclusion.antecedent, net.hypotheses()))
    throw InvalidTrace("proof does not use every hypothesis exactly once");
  if (!equivalent(p->conclusion.term, expected, mode))
    throw InvalidTrace("proof term " + print(p->conclusion.term) + " differs from readback " + print(expected));
  return p;
}

namespace {

class NetBuilder {
 public:
  explicit NetBuilder(Mode mode) : mode_(mode) {}

  NetFromND run(const NDProof& p) {
    int root = build(p);
    vertices_[root].goal = true;
    goalVertex_ = root;
    for (const auto& [name, v] : axioms_) {
      vertices_[v].hypothesis = static_cast<int>(hyps_.size());
      hyps_.push_back(Hyp::logical(name, vertices_[v].formula));
      hypVertex_.push_back(v);
    }
    std::vector<int> pending;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (needsExpansion(static_cast<int>(v))) pending.push_back(static_cast<int>(v));
    for (int v : pending) {
      int c = addVertex(vertices_[v].formula);
      moveDown(v, c);
      connect(v, c);
    }
    NetFromND out{ProofStructure::fromParts(vertices_, links_, hyps_, hypVertex_, goalVertex_, p->conclusion.formula),
                  {}, false, std::nullopt};
    ContractionResult r = contractToLambdaGraph(toAPS(out.net), mode_);
    out.trace = r.trace;
    out.contracted = r.success;
    out.term = r.term;
    return out;
  }

 private:
  int addVertex(const Formula& f) {
    vertices_.push_back(PSVertex{f});
    return static_cast<int>(vertices_.size()) - 1;
  }
  int addLink(Link l) {
    int id = static_cast<int>(links_.size());
    for (int p : l.premisses) vertices_[p].outLink = id;
    for (int c : l.conclusions) vertices_[c].inLink = id;
    links_.push_back(std::move(l));
    return id;
  }

  int build(const NDProof& p) {
    const NDNode& n = *p;
    switch (n.rule) {
      case NDRule::Ax: {
        int v = addVertex(n.conclusion.formula);
        axioms_[n.var] = v;
        return v;
      }
      case NDRule::Lex: {
        int v = addVertex(n.conclusion.formula);
        vertices_[v].hypothesis = static_cast<int>(hyps_.size());
        hyps_.push_back(n.entry->hyp());
        hypVertex_.push_back(v);
        return v;
      }
      case NDRule::BetaEta: return build(n.premisses[0]);
      case NDRule::OverE:
      case NDRule::UnderE:
      case NDRule::LimpE: {
        int a = build(n.premisses[0]);
        int b = build(n.premisses[1]);
        int r = addVertex(n.conclusion.formula);
        if (n.rule == NDRule::OverE) addLink(Link{LinkType::tensor, LinkIndex::plus, {a, b}, {r}, 0});
        else if (n.rule == NDRule::UnderE) addLink(Link{LinkType::tensor, LinkIndex::plus, {a, b}, {r}, 1});
        else addLink(Link{LinkType::tensor, LinkIndex::app, {b, a}, {r}, 0});
        return r;
      }
      case NDRule::OverI:
      case NDRule::UnderI:
      case NDRule::LimpI: {
        int body = build(n.premisses[0]);
        auto it = axioms_.find(n.var);
        if (it == axioms_.end()) throw RuleError("discharged variable '" + n.var + "' has no axiom");
        int aux = it->second;
        axioms_.erase(it);
        int c = addVertex(n.conclusion.formula);
        if (n.rule == NDRule::OverI) addLink(Link{LinkType::par, LinkIndex::plus, {body}, {c, aux}, 0});
        else if (n.rule == NDRule::UnderI) addLink(Link{LinkType::par, LinkIndex::plus, {body}, {aux, c}, 1});
        else addLink(Link{LinkType::par, LinkIndex::lambda, {body}, {c, aux}, 0});
        return c;
      }
    }
    throw RuleError("unknown rule");
  }

  bool isParMain(int v) const {
    int l = vertices_[v].inLink;
    return l >= 0 && links_[l].type == LinkType::par && links_[l].mainVertex() == v;
  }
  bool isTensorMain(int v) const {
    int l = vertices_[v].outLink;
    return l >= 0 && links_[l].type == LinkType::tensor && links_[l].mainVertex() == v;
  }
  bool needsExpansion(int v) const {
    return vertices_[v].alive && !vertices_[v].formula.isAtom() && !isParMain(v) && !isTensorMain(v);
  }

  // Hands the out-link and goal flag of `from` to `to`.
  void moveDown(int from, int to) {
    int l = vertices_[from].outLink;
    vertices_[to].outLink = l;
    if (l >= 0)
      for (int& p : links_[l].premisses)
        if (p == from) p = to;
    vertices_[from].outLink = -1;
    if (vertices_[from].goal) {
      vertices_[from].goal = false;
      vertices_[to].goal = true;
      goalVertex_ = to;
    }
  }

  // Joins an upper occurrence `up` of A to a lower occurrence `down` of A through the
  // expanded identity on A.
  void connect(int up, int down) {
    const Formula f = vertices_[up].formula;
    if (f.isAtom()) {
      moveDown(down, up);
      vertices_[down].alive = false;
      return;
    }
    int hc = addVertex(f.result()), cc = addVertex(f.result());
    int ha = addVertex(f.arg()), ca = addVertex(f.arg());
    switch (f.kind()) {
      case FormulaKind::Over:
        addLink(Link{LinkType::tensor, LinkIndex::plus, {up, ca}, {hc}, 0});
        addLink(Link{LinkType::par, LinkIndex::plus, {cc}, {down, ha}, 0});
        break;
      case FormulaKind::Under:
        addLink(Link{LinkType::tensor, LinkIndex::plus, {ca, up}, {hc}, 1});
        addLink(Link{LinkType::par, LinkIndex::plus, {cc}, {ha, down}, 1});
        break;
      default:
        addLink(Link{LinkType::tensor, LinkIndex::app, {up, ca}, {hc}, 0});
        addLink(Link{LinkType::par, LinkIndex::lambda, {cc}, {down, ha}, 0});
        break;
    }
    connect(hc, cc);
    connect(ha, ca);
  }

  Mode mode_;
  std::vector<PSVertex> vertices_;
  std::vector<Link> links_;
  std::vector<Hyp> hyps_;
  std::vector<int> hypVertex_;
  std::map<std::string, int> axioms_;
  int goalVertex_ = -1;
};

}  // namespace

NetFromND netFromND(const NDProof& p, Mode mode) {
  return NetBuilder(mode).run(normalizeND(p, mode));
}

}  // namespace htlg
