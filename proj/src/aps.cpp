#include "htlg/aps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "htlg/error.hpp"

namespace htlg {

std::string toString(RewriteRule r) {
  switch (r) {
    case RewriteRule::Beta: return "Beta";
    case RewriteRule::Eta: return "Eta";
    case RewriteRule::EpsL: return "EpsL";
    case RewriteRule::EpsR: return "EpsR";
    case RewriteRule::Assoc: return "Assoc";
    case RewriteRule::OverI: return "OverI";
    case RewriteRule::UnderI: return "UnderI";
    case RewriteRule::LimpI: return "LimpI";
  }
  return "?";
}

std::optional<RewriteRule> rewriteRuleFromString(const std::string& s) {
  for (RewriteRule r : {RewriteRule::Beta, RewriteRule::Eta, RewriteRule::EpsL, RewriteRule::EpsR, RewriteRule::Assoc,
                        RewriteRule::OverI, RewriteRule::UnderI, RewriteRule::LimpI})
    if (toString(r) == s) return r;
  return std::nullopt;
}

bool isParContraction(RewriteRule r) {
  return r == RewriteRule::OverI || r == RewriteRule::UnderI || r == RewriteRule::LimpI;
}

int AbstractProofStructure::addVertex(AVertex v) {
  vertices_.push_back(std::move(v));
  return static_cast<int>(vertices_.size()) - 1;
}

int AbstractProofStructure::addLink(ALink l) {
  int id = static_cast<int>(links_.size());
  if (l.alive) {
    for (int p : l.premisses) vertices_[p].outLink = id;
    for (int c : l.conclusions) vertices_[c].inLink = id;
  }
  links_.push_back(std::move(l));
  return id;
}

int AbstractProofStructure::identify(int up, int down) {
  AVertex& u = vertices_.at(up);
  AVertex& d = vertices_.at(down);
  if (up == down) throw SiteMismatch("cannot identify a vertex with itself");
  if (!u.alive || !d.alive) throw SiteMismatch("identify on a dead vertex");
  if (u.outLink >= 0) throw SiteMismatch("upper vertex is not a conclusion");
  if (d.inLink >= 0) throw SiteMismatch("lower vertex is not a hypothesis");
  if (!(u.type == d.type)) throw SiteMismatch("type mismatch: " + u.type.str() + " vs " + d.type.str());
  u.outLink = d.outLink;
  if (d.outLink >= 0)
    for (int& p : links_[d.outLink].premisses)
      if (p == down) p = up;
  if (d.conclFormula) u.conclFormula = d.conclFormula;
  d.alive = false;
  d.outLink = -1;
  return up;
}

void AbstractProofStructure::kill(int id) {
  ALink& l = links_[id];
  l.alive = false;
  for (int p : l.premisses)
    if (vertices_[p].outLink == id) vertices_[p].outLink = -1;
  for (int c : l.conclusions)
    if (vertices_[c].inLink == id) vertices_[c].inLink = -1;
}

void AbstractProofStructure::killVertex(int v) {
  vertices_[v].alive = false;
  vertices_[v].inLink = -1;
  vertices_[v].outLink = -1;
}

void AbstractProofStructure::collapseUnary(int id) {
  int x = links_[id].premisses[0];
  int res = links_[id].conclusions[0];
  kill(id);
  identify(x, res);
}

std::vector<int> AbstractProofStructure::hypotheses() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].alive && vertices_[i].inLink < 0) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> AbstractProofStructure::conclusions() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].alive && vertices_[i].outLink < 0) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t AbstractProofStructure::size() const {
  std::size_t n = 0;
  for (const auto& v : vertices_) n += v.alive;
  for (const auto& l : links_) n += l.alive;
  return n;
}

std::size_t AbstractProofStructure::parCount() const {
  return std::count_if(links_.begin(), links_.end(),
                       [](const ALink& l) { return l.alive && l.type == LinkType::par; });
}

std::vector<int> AbstractProofStructure::tensorComponent(int start) const {
  std::vector<int> out;
  std::set<int> seen{start};
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int lid : {vertices_[v].inLink, vertices_[v].outLink}) {
      if (lid < 0 || links_[lid].type != LinkType::tensor) continue;
      for (const auto* side : {&links_[lid].premisses, &links_[lid].conclusions})
        for (int w : *side)
          if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return out;
}

bool AbstractProofStructure::tensorAncestor(int target, int from) const {
  std::set<int> seen;
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    if (v == target) return true;
    int lid = vertices_[v].inLink;
    if (lid < 0) continue;
    const ALink& l = links_[lid];
    if (l.type != LinkType::tensor) continue;
    if (l.index == LinkIndex::lambda && l.conclusions.size() == 2 && l.conclusions[1] == v) continue;
    for (int p : l.premisses) stack.push_back(p);
  }
  return false;
}

bool AbstractProofStructure::componentHasOtherHypothesis(int premiss, int aux) const {
  for (int v : tensorComponent(premiss)) {
    if (v == aux) continue;
    int lid = vertices_[v].inLink;
    if (lid < 0 || links_[lid].type == LinkType::par) return true;
  }
  return false;
}

std::optional<std::string> AbstractProofStructure::whyNot(RewriteRule rule, int site, Mode mode) const {
  if (site < 0 || site >= static_cast<int>(links_.size())) return "no such link";
  const ALink& l = links_[site];
  if (!l.alive) return "link is gone";
  switch (rule) {
    case RewriteRule::Beta: {
      if (l.type != LinkType::tensor || l.index != LinkIndex::lambda) return "not a lambda tensor";
      int abs = l.conclusions[0];
      int a = vertices_[abs].outLink;
      if (a < 0 || links_[a].type != LinkType::tensor || links_[a].index != LinkIndex::app ||
          links_[a].premisses[0] != abs)
        return "abstraction is not applied";
      int body = l.premisses[0], var = l.conclusions[1];
      if (links_[a].premisses[1] == var || links_[a].conclusions[0] == body) return "redex is a cycle";
      if (body == var && links_[a].premisses[1] == links_[a].conclusions[0]) return "redex is a cycle";
      return std::nullopt;
    }
    case RewriteRule::Eta: {
      if (l.type != LinkType::tensor || l.index != LinkIndex::lambda) return "not a lambda tensor";
      int body = l.premisses[0];
      int var = l.conclusions[1];
      if (body == var) return "identity abstraction";
      int a = vertices_[body].inLink;
      if (a < 0 || links_[a].type != LinkType::tensor || links_[a].index != LinkIndex::app ||
          links_[a].premisses[1] != var)
        return "body is not an application to the bound variable";
      if (tensorAncestor(var, links_[a].premisses[0])) return "bound variable occurs in the function";
      return std::nullopt;
    }
    case RewriteRule::EpsL:
    case RewriteRule::EpsR: {
      if (mode != Mode::nonassociative) return "unit rules are handled by Assoc in associative mode";
      if (l.type != LinkType::tensor || l.index != LinkIndex::plus || l.premisses.size() != 2) return "not a binary +";
      int e = l.premisses[rule == RewriteRule::EpsL ? 0 : 1];
      int src = vertices_[e].inLink;
      if (src < 0 || links_[src].index != LinkIndex::eps) return "operand is not eps";
      return std::nullopt;
    }
    case RewriteRule::Assoc: {
      if (mode != Mode::associative) return "Assoc needs associative mode";
      if (l.type != LinkType::tensor || (l.index != LinkIndex::plus && l.index != LinkIndex::eps))
        return "not a + or eps tensor";
      int v = l.conclusions[0];
      int parent = vertices_[v].outLink;
      if (parent < 0 || links_[parent].type != LinkType::tensor || links_[parent].index != LinkIndex::plus)
        return "result does not feed a + tensor";
      if (parent == site) return "link feeds itself";
      return std::nullopt;
    }
    case RewriteRule::OverI:
    case RewriteRule::UnderI: {
      if (l.type != LinkType::par || l.index != LinkIndex::plus) return "not a + par link";
      bool over = rule == RewriteRule::OverI;
      if ((over && l.main != 0) || (!over && l.main != 1)) return over ? "par link is a \\I link" : "par link is a /I link";
      int aux = l.conclusions[over ? 1 : 0];
      int p = l.premisses[0];
      int t = vertices_[p].inLink;
      if (t < 0 || links_[t].type != LinkType::tensor || links_[t].index != LinkIndex::plus)
        return "premiss is not produced by a + tensor";
      const auto& tp = links_[t].premisses;
      if (tp.size() < 2) return "+ tensor has fewer than two operands";
      if (mode == Mode::nonassociative && tp.size() != 2) return "+ tensor is not binary";
      if ((over ? tp.back() : tp.front()) != aux)
        return std::string("discharged vertex is not the ") + (over ? "last" : "first") + " operand";
      int mainV = l.conclusions[over ? 0 : 1];
      if (std::find(tp.begin(), tp.end(), mainV) != tp.end()) return "main conclusion is an operand of the + tensor";
      if (!componentHasOtherHypothesis(p, aux)) return "no hypothesis besides the discharged one";
      return std::nullopt;
    }
    case RewriteRule::LimpI: {
      if (l.type != LinkType::par || l.index != LinkIndex::lambda) return "not a lambda par link";
      int aux = l.conclusions[1];
      int p = l.premisses[0];
      if (!tensorAncestor(aux, p)) return "discharged vertex is not a tensor ancestor of the premiss";
      if (!componentHasOtherHypothesis(p, aux)) return "no hypothesis besides the discharged one";
      return std::nullopt;
    }
  }
  return "unknown rule";
}

std::vector<int> AbstractProofStructure::sites(RewriteRule rule, Mode mode) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < links_.size(); ++i)
    if (links_[i].alive && !whyNot(rule, static_cast<int>(i), mode)) out.push_back(static_cast<int>(i));
  return out;
}

void AbstractProofStructure::apply(RewriteRule rule, int site, Mode mode) {
  if (auto why = whyNot(rule, site, mode)) throw SiteMismatch(toString(rule) + " at link " + std::to_string(site) + ": " + *why);
  switch (rule) {
    case RewriteRule::Beta: {
      ALink lam = links_[site];
      int body = lam.premisses[0], abs = lam.conclusions[0], var = lam.conclusions[1];
      int appId = vertices_[abs].outLink;
      ALink app = links_[appId];
      int arg = app.premisses[1], res = app.conclusions[0];
      kill(site);
      kill(appId);
      killVertex(abs);
      if (body == var) {
        killVertex(var);
        identify(arg, res);
      } else {
        identify(arg, var);
        identify(body, res);
      }
      return;
    }
    case RewriteRule::Eta: {
      ALink lam = links_[site];
      int body = lam.premisses[0], abs = lam.conclusions[0], var = lam.conclusions[1];
      int appId = vertices_[body].inLink;
      int fn = links_[appId].premisses[0];
      kill(site);
      kill(appId);
      killVertex(body);
      killVertex(var);
      identify(fn, abs);
      return;
    }
    case RewriteRule::EpsL:
    case RewriteRule::EpsR: {
      ALink plus = links_[site];
      int e = plus.premisses[rule == RewriteRule::EpsL ? 0 : 1];
      int other = plus.premisses[rule == RewriteRule::EpsL ? 1 : 0];
      int epsLink = vertices_[e].inLink;
      int res = plus.conclusions[0];
      kill(epsLink);
      kill(site);
      killVertex(e);
      identify(other, res);
      return;
    }
    case RewriteRule::Assoc: {
      int v = links_[site].conclusions[0];
      int parent = vertices_[v].outLink;
      std::vector<int> inner = links_[site].premisses;
      auto& pp = links_[parent].premisses;
      auto pos = std::find(pp.begin(), pp.end(), v);
      pos = pp.erase(pos);
      pp.insert(pos, inner.begin(), inner.end());
      for (int x : inner) vertices_[x].outLink = parent;
      links_[site].alive = false;
      links_[site].premisses.clear();
      killVertex(v);
      if (links_[parent].premisses.size() == 1) collapseUnary(parent);
      return;
    }
    case RewriteRule::OverI:
    case RewriteRule::UnderI: {
      bool over = rule == RewriteRule::OverI;
      ALink par = links_[site];
      int mainV = par.conclusions[over ? 0 : 1];
      int aux = par.conclusions[over ? 1 : 0];
      int p = par.premisses[0];
      int t = vertices_[p].inLink;
      auto& tp = links_[t].premisses;
      if (over) tp.pop_back();
      else tp.erase(tp.begin());
      kill(site);
      killVertex(aux);
      killVertex(p);
      links_[t].conclusions = {mainV};
      vertices_[mainV].inLink = t;
      if (tp.size() == 1) collapseUnary(t);
      return;
    }
    case RewriteRule::LimpI:
      links_[site].type = LinkType::tensor;
      return;
  }
}

std::string AbstractProofStructure::toDot() const {
  std::ostringstream out;
  out << "digraph aps {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const AVertex& v = vertices_[i];
    if (!v.alive) continue;
    std::string label = v.word ? *v.word : v.varName ? *v.varName : std::to_string(i);
    label += " : " + v.type.str();
    if (v.conclFormula) label += " => " + v.conclFormula->str();
    std::string escaped;
    for (char c : label) escaped += c == '\\' ? std::string("\\\\") : c == '"' ? std::string("\\\"") : std::string(1, c);
    out << "  v" << i << " [label=\"" << escaped << "\"];\n";
  }
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const ALink& l = links_[i];
    if (!l.alive) continue;
    out << "  l" << i << " [label=\"" << (l.type == LinkType::tensor ? "x" : "&") << " " << toString(l.index)
        << "\", shape=circle];\n";
    for (std::size_t k = 0; k < l.premisses.size(); ++k)
      out << "  v" << l.premisses[k] << " -> l" << i << " [label=\"" << k << "\"];\n";
    for (std::size_t k = 0; k < l.conclusions.size(); ++k)
      out << "  l" << i << " -> v" << l.conclusions[k] << " [label=\"" << k << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

AVertex vertexOf(ProsType type) {
  AVertex v;
  v.type = std::move(type);
  return v;
}

}  // namespace

int addTermGraph(APS& g, const Term& t) {
  std::map<std::string, int> env;
  std::function<int(const Term&)> build = [&](const Term& u) -> int {
    switch (u.kind()) {
      case TermKind::Var: {
        if (auto it = env.find(u.name()); it != env.end()) return it->second;
        AVertex v = vertexOf(u.varType());
        v.varName = u.name();
        return g.addVertex(v);
      }
      case TermKind::Word: {
        AVertex v = vertexOf(ProsType::st());
        v.word = u.name();
        return g.addVertex(v);
      }
      case TermKind::Eps: {
        int v = g.addVertex(vertexOf(ProsType::st()));
        g.addLink(ALink{LinkType::tensor, LinkIndex::eps, {}, {v}});
        return v;
      }
      case TermKind::Plus: {
        int l = build(u.left());
        int r = build(u.right());
        int v = g.addVertex(vertexOf(ProsType::st()));
        g.addLink(ALink{LinkType::tensor, LinkIndex::plus, {l, r}, {v}});
        return v;
      }
      case TermKind::App: {
        int f = build(u.fun());
        int a = build(u.arg());
        int v = g.addVertex(vertexOf(g.vertices()[f].type.result()));
        g.addLink(ALink{LinkType::tensor, LinkIndex::app, {f, a}, {v}, 0});
        return v;
      }
      case TermKind::Abs: {
        int x = g.addVertex(vertexOf(u.varType()));
        auto saved = env.find(u.name()) != env.end() ? std::optional<int>(env[u.name()]) : std::nullopt;
        env[u.name()] = x;
        int b = build(u.body());
        if (saved) env[u.name()] = *saved; else env.erase(u.name());
        int v = g.addVertex(vertexOf(ProsType::arrow(u.varType(), g.vertices()[b].type)));
        g.addLink(ALink{LinkType::tensor, LinkIndex::lambda, {b}, {v, x}, 0});
        return v;
      }
    }
    throw Error("unreachable");
  };
  return build(t);
}

APS termToGraph(const Term& t) {
  APS g;
  addTermGraph(g, t);
  return g;
}

APS toAPS(const ProofStructure& ps) {
  APS g;
  for (const auto& pv : ps.vertices()) {
    AVertex v = vertexOf(pros(pv.formula));
    v.alive = pv.alive;
    v.inLink = -1;
    v.outLink = -1;
    if (pv.alive && pv.hypothesis >= 0 && !ps.hypotheses()[pv.hypothesis].lexical()) {
      v.varName = ps.hypotheses()[pv.hypothesis].name;
      v.hypFormula = pv.formula;
    }
    if (pv.alive && pv.goal) v.conclFormula = ps.goal();
    g.addVertex(v);
  }
  for (const auto& l : ps.links()) g.addLink(ALink{l.type, l.index, l.premisses, l.conclusions, l.main, l.alive});
  for (std::size_t i = 0; i < ps.vertices().size(); ++i) {
    const PSVertex& pv = ps.vertices()[i];
    if (!pv.alive || pv.hypothesis < 0) continue;
    const Hyp& h = ps.hypotheses()[pv.hypothesis];
    if (!h.lexical()) continue;
    int root = addTermGraph(g, *h.lexTerm);
    g.identify(root, static_cast<int>(i));
  }
  return g;
}

namespace {

void conditionCheck(const APS& g, std::optional<std::pair<int, std::string>>& out) {
  auto concl = g.conclusions();
  if (concl.size() != 1) {
    out = {1, std::to_string(concl.size()) + " conclusions"};
    return;
  }
  const auto& links = g.links();
  for (std::size_t i = 0; i < links.size(); ++i)
    if (links[i].alive && links[i].type != LinkType::tensor) {
      out = {2, "par link " + std::to_string(i) + " remains"};
      return;
    }
  const auto& verts = g.vertices();
  for (std::size_t i = 0; i < links.size(); ++i) {
    const ALink& l = links[i];
    if (!l.alive || l.index != LinkIndex::lambda) continue;
    int body = l.premisses[0], var = l.conclusions[1];
    std::set<int> seen;
    std::vector<int> stack{body};
    bool found = false;
    while (!stack.empty() && !found) {
      int v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      if (v == var) found = true;
      int in = verts[v].inLink;
      if (in < 0 || found) continue;
      const ALink& il = links[in];
      if (il.index == LinkIndex::lambda && il.conclusions[1] == v) continue;
      for (int p : il.premisses) stack.push_back(p);
    }
    if (!found) {
      out = {3, "bound vertex of lambda link " + std::to_string(i) + " is not above its body"};
      return;
    }
  }
  // Tree check on the incidence graph without lambda-variable edges.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> adj;  // (kind, id)
  std::size_t nodes = 0, edges = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (verts[i].alive) ++nodes, adj[{0, static_cast<int>(i)}];
  for (std::size_t i = 0; i < links.size(); ++i) {
    const ALink& l = links[i];
    if (!l.alive) continue;
    ++nodes;
    std::pair<int, int> ln{1, static_cast<int>(i)};
    adj[ln];
    auto connect = [&](int v) {
      ++edges;
      adj[ln].push_back({0, v});
      adj[{0, v}].push_back(ln);
    };
    for (int p : l.premisses) connect(p);
    for (std::size_t k = 0; k < l.conclusions.size(); ++k) {
      if (l.index == LinkIndex::lambda && k == 1) continue;
      connect(l.conclusions[k]);
    }
  }
  if (edges + 1 != nodes) {
    out = {4, std::to_string(nodes) + " nodes but " + std::to_string(edges) + " edges"};
    return;
  }
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> stack{adj.begin()->first};
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& m : adj[n]) stack.push_back(m);
  }
  if (seen.size() != nodes) out = {4, "graph is not connected"};
}

}  // namespace

std::optional<std::string> lambdaGraphViolation(const APS& g, int* condition) {
  std::optional<std::pair<int, std::string>> out;
  conditionCheck(g, out);
  if (!out) return std::nullopt;
  if (condition) *condition = out->first;
  return out->second;
}

Term graphToTerm(const APS& g) {
  int cond = 0;
  if (auto why = lambdaGraphViolation(g, &cond)) throw NotALambdaGraph(cond, *why);
  const auto& verts = g.vertices();
  const auto& links = g.links();
  std::set<std::string> used;
  for (const auto& v : verts) {
    if (!v.alive) continue;
    if (v.word) used.insert(*v.word);
    if (v.varName) used.insert(*v.varName);
  }
  std::map<int, std::string> bound;  // lambda link -> variable name
  std::function<Term(int)> read = [&](int v) -> Term {
    const AVertex& av = verts[v];
    if (av.inLink < 0) {
      if (av.word) return Term::word(*av.word);
      return Term::var(av.varName ? *av.varName : "_h" + std::to_string(v), av.type);
    }
    const ALink& l = links[av.inLink];
    switch (l.index) {
      case LinkIndex::lambda: {
        auto it = bound.find(av.inLink);
        if (it == bound.end()) {
          std::string x = freshName("x", used);
          used.insert(x);
          it = bound.emplace(av.inLink, x).first;
        }
        int var = l.conclusions[1];
        if (v == var) return Term::var(it->second, av.type);
        return Term::abs(it->second, verts[var].type, read(l.premisses[0]));
      }
      case LinkIndex::app:
        return Term::app(read(l.premisses[0]), read(l.premisses[1]));
      case LinkIndex::plus:
      case LinkIndex::eps: {
        std::vector<Term> parts;
        for (int p : l.premisses) parts.push_back(read(p));
        return fromSpine(parts);
      }
    }
    throw Error("unreachable");
  };
  return read(g.conclusions().front());
}

}  // namespace htlg
