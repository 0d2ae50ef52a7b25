#include "htlg/proof_net.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace htlg {

std::string toString(LinkType t) { return t == LinkType::tensor ? "tensor" : "par"; }

std::string toString(LinkIndex i) {
  switch (i) {
    case LinkIndex::eps: return "eps";
    case LinkIndex::plus: return "+";
    case LinkIndex::app: return "@";
    case LinkIndex::lambda: return "lambda";
  }
  return "?";
}

ProofStructure::ProofStructure(std::vector<Hyp> hypotheses, Formula goal)
    : hyps_(std::move(hypotheses)), goal_(std::move(goal)) {
  for (std::size_t i = 0; i < hyps_.size(); ++i) {
    int v = unfold(hyps_[i].formula, Polarity::positive);
    vertices_[v].hypothesis = static_cast<int>(i);
    hypVertex_.push_back(v);
  }
  goalVertex_ = unfold(goal_, Polarity::negative);
  vertices_[goalVertex_].goal = true;
}

int ProofStructure::addVertex(PSVertex v) {
  vertices_.push_back(std::move(v));
  return static_cast<int>(vertices_.size()) - 1;
}

int ProofStructure::addLink(Link l) {
  int id = static_cast<int>(links_.size());
  for (int p : l.premisses) vertices_[p].outLink = id;
  for (int c : l.conclusions) vertices_[c].inLink = id;
  links_.push_back(std::move(l));
  return id;
}

int ProofStructure::unfold(const Formula& f, Polarity pol) {
  int v = addVertex(PSVertex{f});
  expand(v, pol);
  return v;
}

int ProofStructure::expand(int v, Polarity pol) {
  Formula f = vertices_[v].formula;
  if (f.isAtom()) {
    (pol == Polarity::positive ? positiveLeaves_ : negativeLeaves_).push_back(v);
    return v;
  }
  int a = addVertex(PSVertex{f.arg()});
  int r = addVertex(PSVertex{f.result()});
  if (pol == Polarity::positive) {
    switch (f.kind()) {
      case FormulaKind::Over: addLink(Link{LinkType::tensor, LinkIndex::plus, {v, a}, {r}, 0}); break;
      case FormulaKind::Under: addLink(Link{LinkType::tensor, LinkIndex::plus, {a, v}, {r}, 1}); break;
      case FormulaKind::Limp: addLink(Link{LinkType::tensor, LinkIndex::app, {v, a}, {r}, 0}); break;
      default: break;
    }
    expand(a, Polarity::negative);
    expand(r, Polarity::positive);
  } else {
    switch (f.kind()) {
      case FormulaKind::Over: addLink(Link{LinkType::par, LinkIndex::plus, {r}, {v, a}, 0}); break;
      case FormulaKind::Under: addLink(Link{LinkType::par, LinkIndex::plus, {r}, {a, v}, 1}); break;
      case FormulaKind::Limp: addLink(Link{LinkType::par, LinkIndex::lambda, {r}, {v, a}, 0}); break;
      default: break;
    }
    expand(a, Polarity::positive);
    expand(r, Polarity::negative);
  }
  return v;
}

void ProofStructure::contract(int x, int y) {
  if (x < 0 || y < 0 || x >= static_cast<int>(vertices_.size()) || y >= static_cast<int>(vertices_.size()))
    throw NotContractible("vertex out of range");
  if (x == y) throw NotContractible("cannot contract a vertex with itself");
  PSVertex& vx = vertices_[x];
  PSVertex& vy = vertices_[y];
  if (!vx.alive || !vy.alive) throw NotContractible("vertex already contracted");
  if (vx.inLink >= 0) throw NotContractible("first vertex is not a hypothesis");
  if (vx.hypothesis >= 0 && hyps_[vx.hypothesis].lexical()) throw NotContractible("first vertex is lexical");
  if (vy.outLink >= 0) throw NotContractible("second vertex is not a conclusion");
  if (!(vx.formula == vy.formula))
    throw NotContractible("formulas differ: " + vx.formula.str() + " vs " + vy.formula.str());
  if (vx.hypothesis >= 0 && vy.hypothesis >= 0) throw NotContractible("both vertices are input hypotheses");
  vy.outLink = vx.outLink;
  if (vx.outLink >= 0)
    for (int& p : links_[vx.outLink].premisses)
      if (p == x) p = y;
  if (vx.goal) {
    vy.goal = true;
    goalVertex_ = y;
  }
  if (vx.hypothesis >= 0) {
    vy.hypothesis = vx.hypothesis;
    hypVertex_[vx.hypothesis] = y;
  }
  vx.alive = false;
  vx.outLink = -1;
}

VertexOrigin ProofStructure::origin(int v) const {
  const PSVertex& pv = vertices_[v];
  if (pv.hypothesis >= 0) return hyps_[pv.hypothesis].lexical() ? VertexOrigin::lexical : VertexOrigin::logical;
  if (pv.goal) return VertexOrigin::conclusion;
  return VertexOrigin::internal;
}

OccurrenceClass ProofStructure::classify(int v) const {
  int n = 0;
  for (const auto& l : links_)
    if (l.alive && l.mainVertex() == v) ++n;
  if (n >= 2) return OccurrenceClass::cut;
  if (n == 1) return OccurrenceClass::flow;
  return OccurrenceClass::axiomatic;
}

std::size_t ProofStructure::aliveVertexCount() const {
  return std::count_if(vertices_.begin(), vertices_.end(), [](const PSVertex& v) { return v.alive; });
}

std::size_t ProofStructure::aliveLinkCount() const {
  return std::count_if(links_.begin(), links_.end(), [](const Link& l) { return l.alive; });
}

ProofStructure ProofStructure::fromParts(std::vector<PSVertex> vertices, std::vector<Link> links, std::vector<Hyp> hyps,
                                         std::vector<int> hypVertex, int goalVertex, Formula goal) {
  ProofStructure ps;
  ps.vertices_ = std::move(vertices);
  ps.links_ = std::move(links);
  ps.hyps_ = std::move(hyps);
  ps.hypVertex_ = std::move(hypVertex);
  ps.goalVertex_ = goalVertex;
  ps.goal_ = std::move(goal);
  return ps;
}

std::string ProofStructure::toDot() const {
  std::ostringstream out;
  out << "digraph proof_structure {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const PSVertex& v = vertices_[i];
    if (!v.alive) continue;
    std::string label = v.formula.str();
    if (v.hypothesis >= 0) label = hyps_[v.hypothesis].name + " : " + label;
    std::string shape = v.goal ? "doubleoctagon" : v.hypothesis >= 0 ? "box" : "ellipse";
    std::string escaped;
    for (char c : label) escaped += c == '\\' ? std::string("\\\\") : c == '"' ? std::string("\\\"") : std::string(1, c);
    out << "  v" << i << " [label=\"" << escaped << "\", shape=" << shape << "];\n";
  }
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (!l.alive) continue;
    out << "  l" << i << " [label=\"" << (l.type == LinkType::tensor ? "x" : "&") << " " << toString(l.index)
        << "\", shape=circle, style=filled, fillcolor=" << (l.type == LinkType::tensor ? "white" : "lightgrey")
        << "];\n";
    for (std::size_t k = 0; k < l.premisses.size(); ++k)
      out << "  v" << l.premisses[k] << " -> l" << i << " [label=\"" << k << "\"];\n";
    for (std::size_t k = 0; k < l.conclusions.size(); ++k)
      out << "  l" << i << " -> v" << l.conclusions[k] << " [label=\"" << k << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

LinkingEnumerator::LinkingEnumerator(ProofStructure unlinked) : base_(std::move(unlinked)) {
  for (int v : base_.positiveLeaves()) pos_[base_.vertices()[v].formula.name()].push_back(v);
  for (int v : base_.negativeLeaves()) neg_[base_.vertices()[v].formula.name()].push_back(v);
  std::set<std::string> names;
  for (const auto& [a, _] : pos_) names.insert(a);
  for (const auto& [a, _] : neg_) names.insert(a);
  atoms_.assign(names.begin(), names.end());
  for (const auto& a : atoms_) {
    pos_[a];
    neg_[a];
  }
}

std::optional<CountMismatch> LinkingEnumerator::mismatch() const {
  for (const auto& a : atoms_) {
    int p = static_cast<int>(pos_.at(a).size());
    int n = static_cast<int>(neg_.at(a).size());
    if (p != n) return CountMismatch(a, p, n);
  }
  return std::nullopt;
}

std::size_t LinkingEnumerator::total() const {
  if (mismatch()) return 0;
  std::size_t t = 1;
  for (const auto& a : atoms_)
    for (std::size_t k = 2; k <= pos_.at(a).size(); ++k) t *= k;
  return t;
}

void LinkingEnumerator::forEach(const std::function<bool(const Linking&)>& f) const {
  if (mismatch()) return;
  Linking current;
  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (stop) return;
    if (k == atoms_.size()) {
      if (!f(current)) stop = true;
      return;
    }
    const auto& pos = pos_.at(atoms_[k]);
    const auto& neg = neg_.at(atoms_[k]);
    std::vector<std::size_t> perm(pos.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      std::size_t mark = current.size();
      for (std::size_t j = 0; j < neg.size(); ++j) current.emplace_back(neg[j], pos[perm[j]]);
      go(k + 1);
      current.resize(mark);
      if (stop) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  go(0);
}

ProofStructure LinkingEnumerator::apply(const Linking& l) const {
  ProofStructure ps = base_;
  for (const auto& [x, y] : l) ps.contract(x, y);
  return ps;
}

std::vector<ProofStructure> enumerateLinkings(const std::vector<Hyp>& hypotheses, const Formula& goal) {
  LinkingEnumerator e(ProofStructure(hypotheses, goal));
  if (auto m = e.mismatch()) throw *m;
  std::vector<ProofStructure> out;
  e.forEach([&](const Linking& l) {
    out.push_back(e.apply(l));
    return true;
  });
  return out;
}

namespace {

bool sameVertexLabel(const ProofStructure& a, int u, const ProofStructure& b, int v) {
  const PSVertex& pu = a.vertices()[u];
  const PSVertex& pv = b.vertices()[v];
  if (!(pu.formula == pv.formula) || pu.goal != pv.goal) return false;
  if ((pu.hypothesis >= 0) != (pv.hypothesis >= 0)) return false;
  if (pu.hypothesis >= 0) {
    const Hyp& hu = a.hypotheses()[pu.hypothesis];
    const Hyp& hv = b.hypotheses()[pv.hypothesis];
    if (hu.lexical() != hv.lexical()) return false;
    if (hu.lexical() && hu.name != hv.name) return false;
  }
  return true;
}

bool sameLinkShape(const Link& a, const Link& b) {
  return a.type == b.type && a.index == b.index && a.main == b.main && a.premisses.size() == b.premisses.size() &&
         a.conclusions.size() == b.conclusions.size();
}

}  // namespace

bool isomorphic(const ProofStructure& a, const ProofStructure& b) {
  if (a.aliveVertexCount() != b.aliveVertexCount() || a.aliveLinkCount() != b.aliveLinkCount()) return false;
  std::map<int, int> vmap, vback, lmap, lback;
  std::deque<std::pair<int, int>> todo;
  auto pairVertex = [&](int u, int v) {
    auto it = vmap.find(u);
    if (it != vmap.end()) return it->second == v;
    if (vback.count(v)) return false;
    if (!sameVertexLabel(a, u, b, v)) return false;
    vmap[u] = v;
    vback[v] = u;
    todo.emplace_back(u, v);
    return true;
  };
  auto pairLink = [&](int l1, int l2) {
    auto it = lmap.find(l1);
    if (it != lmap.end()) return it->second == l2;
    if (lback.count(l2)) return false;
    const Link& x = a.links()[l1];
    const Link& y = b.links()[l2];
    if (!sameLinkShape(x, y)) return false;
    lmap[l1] = l2;
    lback[l2] = l1;
    for (std::size_t k = 0; k < x.premisses.size(); ++k)
      if (!pairVertex(x.premisses[k], y.premisses[k])) return false;
    for (std::size_t k = 0; k < x.conclusions.size(); ++k)
      if (!pairVertex(x.conclusions[k], y.conclusions[k])) return false;
    return true;
  };
  if (!pairVertex(a.goalVertex(), b.goalVertex())) return false;
  while (!todo.empty()) {
    auto [u, v] = todo.front();
    todo.pop_front();
    const PSVertex& pu = a.vertices()[u];
    const PSVertex& pv = b.vertices()[v];
    if ((pu.inLink < 0) != (pv.inLink < 0) || (pu.outLink < 0) != (pv.outLink < 0)) return false;
    if (pu.inLink >= 0 && !pairLink(pu.inLink, pv.inLink)) return false;
    if (pu.outLink >= 0 && !pairLink(pu.outLink, pv.outLink)) return false;
  }
  return vmap.size() == a.aliveVertexCount();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // False when a and b were already joined.
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

bool switchingTree(const ProofStructure& ps, bool keepPremiss) {
  const auto& verts = ps.vertices();
  const auto& links = ps.links();
  const int nv = static_cast<int>(verts.size());
  UnionFind uf(verts.size() + links.size());
  std::size_t nodes = 0, edges = 0;
  for (int v = 0; v < nv; ++v) nodes += verts[v].alive;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    if (!l.alive) continue;
    ++nodes;
    const int node = nv + static_cast<int>(i);
    auto edge = [&](int v) {
      ++edges;
      return uf.join(node, v);
    };
    if (l.type == LinkType::tensor) {
      for (int v : l.premisses)
        if (!edge(v)) return false;
      for (int v : l.conclusions)
        if (!edge(v)) return false;
    } else if (!edge(l.mainVertex()) || !edge(keepPremiss ? l.premisses[0] : l.auxVertex())) {
      return false;
    }
  }
  return edges + 1 == nodes;
}

}  // namespace

bool passesSwitchingTest(const ProofStructure& ps) { return switchingTree(ps, true) && switchingTree(ps, false); }

}  // namespace htlg
