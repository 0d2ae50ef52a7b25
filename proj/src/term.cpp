#include "htlg/term.hpp"

#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

#include "htlg/error.hpp"

namespace htlg {

// ---------------------------------------------------------------- ProsType

struct ProsType::Node {
  ProsType arg, result;
};

ProsType ProsType::arrow(ProsType arg, ProsType result) {
  ProsType t;
  t.node_ = std::make_shared<const Node>(Node{std::move(arg), std::move(result)});
  return t;
}

const ProsType& ProsType::arg() const {
  assert(node_);
  return node_->arg;
}

const ProsType& ProsType::result() const {
  assert(node_);
  return node_->result;
}

std::string ProsType::str() const {
  if (isSt()) return "st";
  std::string lhs = arg().str();
  if (arg().isArrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + result().str();
}

int ProsType::order() const {
  if (isSt()) return 0;
  return std::max(arg().order() + 1, result().order());
}

bool operator==(const ProsType& a, const ProsType& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.arg() == b.arg() && a.result() == b.result();
}

// ---------------------------------------------------------------- Term

struct Term::Node {
  TermKind kind;
  std::string name;
  ProsType type;
  Term a, b;
  std::size_t size;
};

namespace {

Term makeNode(TermKind k, std::string name, ProsType ty, Term a, Term b);

const std::string kEmpty;

}  // namespace

Term Term::var(std::string name, ProsType type) {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{TermKind::Var, std::move(name), std::move(type), {}, {}, 1});
  return t;
}

Term Term::word(std::string surface) {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{TermKind::Word, std::move(surface), {}, {}, {}, 1});
  return t;
}

Term Term::eps() {
  static const Term e = [] {
    Term t;
    t.node_ = std::make_shared<const Node>(Node{TermKind::Eps, {}, {}, {}, {}, 1});
    return t;
  }();
  return e;
}

Term Term::plus(Term left, Term right) {
  std::size_t n = 1 + left.size() + right.size();
  Term t;
  t.node_ = std::make_shared<const Node>(Node{TermKind::Plus, {}, {}, std::move(left), std::move(right), n});
  return t;
}

Term Term::app(Term fun, Term arg) {
  std::size_t n = 1 + fun.size() + arg.size();
  Term t;
  t.node_ = std::make_shared<const Node>(Node{TermKind::App, {}, {}, std::move(fun), std::move(arg), n});
  return t;
}

Term Term::abs(std::string var, ProsType varType, Term body) {
  std::size_t n = 1 + body.size();
  Term t;
  t.node_ = std::make_shared<const Node>(
      Node{TermKind::Abs, std::move(var), std::move(varType), std::move(body), {}, n});
  return t;
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_ ? node_->name : kEmpty; }
const ProsType& Term::varType() const { return node_->type; }
const Term& Term::left() const { return node_->a; }
const Term& Term::right() const { return node_->b; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
const Term& Term::body() const { return node_->a; }
std::size_t Term::size() const { return node_ ? node_->size : 0; }

namespace {

Term makeNode(TermKind k, std::string name, ProsType ty, Term a, Term b) {
  switch (k) {
    case TermKind::Var: return Term::var(std::move(name), std::move(ty));
    case TermKind::Word: return Term::word(std::move(name));
    case TermKind::Eps: return Term::eps();
    case TermKind::Plus: return Term::plus(std::move(a), std::move(b));
    case TermKind::App: return Term::app(std::move(a), std::move(b));
    case TermKind::Abs: return Term::abs(std::move(name), std::move(ty), std::move(a));
  }
  return {};
}

std::string childPath(const std::string& path, int i) { return path + "." + std::to_string(i); }

ProsType typeIn(const Term& t, std::map<std::string, ProsType>& bound, const std::string& path) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = bound.find(t.name());
      if (it != bound.end() && !(it->second == t.varType()))
        throw IllTyped(path, it->second.str(), t.varType().str());
      return t.varType();
    }
    case TermKind::Word:
    case TermKind::Eps:
      return ProsType::st();
    case TermKind::Plus: {
      ProsType l = typeIn(t.left(), bound, childPath(path, 0));
      if (!l.isSt()) throw IllTyped(childPath(path, 0), "st", l.str());
      ProsType r = typeIn(t.right(), bound, childPath(path, 1));
      if (!r.isSt()) throw IllTyped(childPath(path, 1), "st", r.str());
      return ProsType::st();
    }
    case TermKind::App: {
      ProsType f = typeIn(t.fun(), bound, childPath(path, 0));
      if (!f.isArrow()) throw IllTyped(childPath(path, 0), "a function type", f.str());
      ProsType a = typeIn(t.arg(), bound, childPath(path, 1));
      if (!(a == f.arg())) throw IllTyped(childPath(path, 1), f.arg().str(), a.str());
      return f.result();
    }
    case TermKind::Abs: {
      std::optional<ProsType> saved;
      if (auto it = bound.find(t.name()); it != bound.end()) saved = it->second;
      bound[t.name()] = t.varType();
      ProsType b = typeIn(t.body(), bound, childPath(path, 0));
      if (saved) bound[t.name()] = *saved; else bound.erase(t.name());
      return ProsType::arrow(t.varType(), b);
    }
  }
  return {};
}

void countFree(const Term& t, std::multiset<std::string>& bound, std::map<std::string, int>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (!bound.count(t.name())) ++out[t.name()];
      return;
    case TermKind::Word:
    case TermKind::Eps:
      return;
    case TermKind::Plus:
    case TermKind::App:
      countFree(t.left(), bound, out);
      countFree(t.right(), bound, out);
      return;
    case TermKind::Abs: {
      auto it = bound.insert(t.name());
      countFree(t.body(), bound, out);
      bound.erase(it);
      return;
    }
  }
}

int occurrences(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x ? 1 : 0;
    case TermKind::Word:
    case TermKind::Eps: return 0;
    case TermKind::Plus:
    case TermKind::App: return occurrences(t.left(), x) + occurrences(t.right(), x);
    case TermKind::Abs: return t.name() == x ? 0 : occurrences(t.body(), x);
  }
  return 0;
}

bool occursFree(const Term& t, const std::string& x) { return occurrences(t, x) > 0; }

std::optional<NonLinear> linearIn(const Term& t) {
  switch (t.kind()) {
    case TermKind::Plus:
    case TermKind::App:
      if (auto e = linearIn(t.left())) return e;
      return linearIn(t.right());
    case TermKind::Abs: {
      int n = occurrences(t.body(), t.name());
      if (n != 1) return NonLinear{t.name(), n};
      return linearIn(t.body());
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

ProsType typeOf(const Term& t) {
  std::map<std::string, ProsType> bound;
  return typeIn(t, bound, "root");
}

std::optional<NonLinear> checkLinear(const Term& t) {
  for (const auto& [name, n] : freeVarCounts(t))
    if (n != 1) return NonLinear{name, n};
  return linearIn(t);
}

std::map<std::string, int> freeVarCounts(const Term& t) {
  std::multiset<std::string> bound;
  std::map<std::string, int> out;
  countFree(t, bound, out);
  return out;
}

std::set<std::string> freeVars(const Term& t) {
  std::set<std::string> out;
  for (const auto& [name, n] : freeVarCounts(t)) out.insert(name);
  return out;
}

std::vector<std::string> wordsOf(const Term& t) {
  std::vector<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::Word: out.push_back(u.name()); return;
      case TermKind::Plus:
      case TermKind::App: go(u.left()); go(u.right()); return;
      case TermKind::Abs: go(u.body()); return;
      default: return;
    }
  };
  go(t);
  return out;
}

std::set<std::string> namesIn(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::Var:
      case TermKind::Word: out.insert(u.name()); return;
      case TermKind::Plus:
      case TermKind::App: go(u.left()); go(u.right()); return;
      case TermKind::Abs: out.insert(u.name()); go(u.body()); return;
      default: return;
    }
  };
  go(t);
  return out;
}

std::string freshName(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

Term renameFree(const Term& t, const std::string& from, const std::string& to) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == from ? Term::var(to, t.varType()) : t;
    case TermKind::Word:
    case TermKind::Eps: return t;
    case TermKind::Plus: return Term::plus(renameFree(t.left(), from, to), renameFree(t.right(), from, to));
    case TermKind::App: return Term::app(renameFree(t.fun(), from, to), renameFree(t.arg(), from, to));
    case TermKind::Abs:
      if (t.name() == from) return t;
      return Term::abs(t.name(), t.varType(), renameFree(t.body(), from, to));
  }
  return t;
}

namespace {

Term substituteIn(const Term& t, const std::string& x, const Term& r, const std::set<std::string>& rFree) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x ? r : t;
    case TermKind::Word:
    case TermKind::Eps: return t;
    case TermKind::Plus: {
      Term l = substituteIn(t.left(), x, r, rFree);
      Term rr = substituteIn(t.right(), x, r, rFree);
      if (l.samePointer(t.left()) && rr.samePointer(t.right())) return t;
      return Term::plus(l, rr);
    }
    case TermKind::App: {
      Term f = substituteIn(t.fun(), x, r, rFree);
      Term a = substituteIn(t.arg(), x, r, rFree);
      if (f.samePointer(t.fun()) && a.samePointer(t.arg())) return t;
      return Term::app(f, a);
    }
    case TermKind::Abs: {
      if (t.name() == x || !occursFree(t.body(), x)) return t;
      if (rFree.count(t.name())) {
        std::set<std::string> used = namesIn(t.body());
        used.insert(rFree.begin(), rFree.end());
        used.insert(x);
        std::string y = freshName(t.name(), used);
        Term body = renameFree(t.body(), t.name(), y);
        return Term::abs(y, t.varType(), substituteIn(body, x, r, rFree));
      }
      return Term::abs(t.name(), t.varType(), substituteIn(t.body(), x, r, rFree));
    }
  }
  return t;
}

}  // namespace

Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  return substituteIn(t, var, replacement, freeVars(replacement));
}

std::optional<Term> betaStep(const Term& t) {
  switch (t.kind()) {
    case TermKind::App: {
      if (t.fun().is(TermKind::Abs)) return substitute(t.fun().body(), t.fun().name(), t.arg());
      if (auto f = betaStep(t.fun())) return Term::app(*f, t.arg());
      if (auto a = betaStep(t.arg())) return Term::app(t.fun(), *a);
      return std::nullopt;
    }
    case TermKind::Plus: {
      if (auto l = betaStep(t.left())) return Term::plus(*l, t.right());
      if (auto r = betaStep(t.right())) return Term::plus(t.left(), *r);
      return std::nullopt;
    }
    case TermKind::Abs: {
      if (auto b = betaStep(t.body())) return Term::abs(t.name(), t.varType(), *b);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

namespace {

bool isEtaRedex(const Term& t) {
  if (!t.is(TermKind::Abs)) return false;
  const Term& b = t.body();
  return b.is(TermKind::App) && b.arg().is(TermKind::Var) && b.arg().name() == t.name() &&
         !occursFree(b.fun(), t.name());
}

void collectRedexes(const Term& t, std::vector<int>& path, std::vector<std::vector<int>>& out) {
  switch (t.kind()) {
    case TermKind::App:
      if (t.fun().is(TermKind::Abs)) out.push_back(path);
      [[fallthrough]];
    case TermKind::Plus:
      path.push_back(0);
      collectRedexes(t.left(), path, out);
      path.back() = 1;
      collectRedexes(t.right(), path, out);
      path.pop_back();
      return;
    case TermKind::Abs:
      path.push_back(0);
      collectRedexes(t.body(), path, out);
      path.pop_back();
      return;
    default:
      return;
  }
}

Term betaAtFrom(const Term& t, const std::vector<int>& path, std::size_t i) {
  if (i == path.size()) {
    if (!t.is(TermKind::App) || !t.fun().is(TermKind::Abs)) throw Error("no beta redex at path");
    return substitute(t.fun().body(), t.fun().name(), t.arg());
  }
  switch (t.kind()) {
    case TermKind::App:
      return path[i] == 0 ? Term::app(betaAtFrom(t.fun(), path, i + 1), t.arg())
                          : Term::app(t.fun(), betaAtFrom(t.arg(), path, i + 1));
    case TermKind::Plus:
      return path[i] == 0 ? Term::plus(betaAtFrom(t.left(), path, i + 1), t.right())
                          : Term::plus(t.left(), betaAtFrom(t.right(), path, i + 1));
    case TermKind::Abs:
      return Term::abs(t.name(), t.varType(), betaAtFrom(t.body(), path, i + 1));
    default:
      throw Error("invalid redex path");
  }
}

}  // namespace

std::optional<Term> etaStep(const Term& t) {
  if (isEtaRedex(t)) return t.body().fun();
  switch (t.kind()) {
    case TermKind::App:
    case TermKind::Plus: {
      if (auto l = etaStep(t.left())) return makeNode(t.kind(), {}, {}, *l, t.right());
      if (auto r = etaStep(t.right())) return makeNode(t.kind(), {}, {}, t.left(), *r);
      return std::nullopt;
    }
    case TermKind::Abs:
      if (auto b = etaStep(t.body())) return Term::abs(t.name(), t.varType(), *b);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::vector<std::vector<int>> betaRedexPaths(const Term& t) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  collectRedexes(t, path, out);
  return out;
}

Term betaAt(const Term& t, const std::vector<int>& path) { return betaAtFrom(t, path, 0); }

Term normalForm(const Term& t) {
  switch (t.kind()) {
    case TermKind::App: {
      Term f = normalForm(t.fun());
      if (f.is(TermKind::Abs)) return normalForm(substitute(f.body(), f.name(), t.arg()));
      return Term::app(f, normalForm(t.arg()));
    }
    case TermKind::Plus:
      return Term::plus(normalForm(t.left()), normalForm(t.right()));
    case TermKind::Abs: {
      Term b = normalForm(t.body());
      Term candidate = Term::abs(t.name(), t.varType(), b);
      if (isEtaRedex(candidate)) return b.fun();
      return candidate;
    }
    default:
      return t;
  }
}

namespace {

Term longIn(const Term& t, std::map<std::string, ProsType>& env) {
  ProsType ty = typeIn(t, env, "root");
  if (t.is(TermKind::Abs)) {
    auto saved = env.find(t.name()) != env.end() ? std::optional<ProsType>(env[t.name()]) : std::nullopt;
    env[t.name()] = t.varType();
    Term b = longIn(t.body(), env);
    if (saved) env[t.name()] = *saved; else env.erase(t.name());
    return Term::abs(t.name(), t.varType(), b);
  }
  if (ty.isArrow()) {
    std::set<std::string> used = namesIn(t);
    for (const auto& [n, _] : env) used.insert(n);
    std::string x = freshName("x", used);
    env[x] = ty.arg();
    Term b = longIn(Term::app(t, Term::var(x, ty.arg())), env);
    env.erase(x);
    return Term::abs(x, ty.arg(), b);
  }
  switch (t.kind()) {
    case TermKind::Plus: return Term::plus(longIn(t.left(), env), longIn(t.right(), env));
    case TermKind::App: {
      std::vector<Term> args;
      Term head = t;
      while (head.is(TermKind::App)) {
        args.push_back(head.arg());
        head = head.fun();
      }
      Term out = head;
      for (auto it = args.rbegin(); it != args.rend(); ++it) out = Term::app(out, longIn(*it, env));
      return out;
    }
    default: return t;
  }
}

bool alphaIn(const Term& a, const Term& b, std::map<std::string, int>& ea, std::map<std::string, int>& eb,
             int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      auto ia = ea.find(a.name());
      auto ib = eb.find(b.name());
      if ((ia == ea.end()) != (ib == eb.end())) return false;
      if (ia == ea.end()) return a.name() == b.name() && a.varType() == b.varType();
      return ia->second == ib->second;
    }
    case TermKind::Word: return a.name() == b.name();
    case TermKind::Eps: return true;
    case TermKind::Plus:
    case TermKind::App:
      return alphaIn(a.left(), b.left(), ea, eb, depth) && alphaIn(a.right(), b.right(), ea, eb, depth);
    case TermKind::Abs: {
      if (!(a.varType() == b.varType())) return false;
      auto sa = ea.find(a.name()) != ea.end() ? std::optional<int>(ea[a.name()]) : std::nullopt;
      auto sb = eb.find(b.name()) != eb.end() ? std::optional<int>(eb[b.name()]) : std::nullopt;
      ea[a.name()] = depth;
      eb[b.name()] = depth;
      bool ok = alphaIn(a.body(), b.body(), ea, eb, depth + 1);
      if (sa) ea[a.name()] = *sa; else ea.erase(a.name());
      if (sb) eb[b.name()] = *sb; else eb.erase(b.name());
      return ok;
    }
  }
  return false;
}

void flatten(const Term& t, std::vector<Term>& out) {
  if (t.is(TermKind::Plus)) {
    flatten(t.left(), out);
    flatten(t.right(), out);
  } else if (!t.is(TermKind::Eps)) {
    out.push_back(t);
  }
}

}  // namespace

Term longNormalForm(const Term& t) {
  std::map<std::string, ProsType> env;
  return longIn(normalForm(t), env);
}

bool alphaEq(const Term& a, const Term& b) {
  std::map<std::string, int> ea, eb;
  return alphaIn(a, b, ea, eb, 0);
}

Term monoidNormal(const Term& t, Mode mode) {
  switch (t.kind()) {
    case TermKind::Plus: {
      if (mode == Mode::associative) {
        std::vector<Term> parts;
        flatten(t, parts);
        for (auto& p : parts) p = monoidNormal(p, mode);
        return fromSpine(parts);
      }
      Term l = monoidNormal(t.left(), mode);
      Term r = monoidNormal(t.right(), mode);
      if (l.is(TermKind::Eps)) return r;
      if (r.is(TermKind::Eps)) return l;
      return Term::plus(l, r);
    }
    case TermKind::App:
      return Term::app(monoidNormal(t.fun(), mode), monoidNormal(t.arg(), mode));
    case TermKind::Abs:
      return Term::abs(t.name(), t.varType(), monoidNormal(t.body(), mode));
    default:
      return t;
  }
}

Term canonical(const Term& t, Mode mode) {
  Term cur = monoidNormal(normalForm(t), mode);
  for (;;) {
    Term next = monoidNormal(normalForm(cur), mode);
    if (alphaEq(next, cur)) return cur;
    cur = next;
  }
}

bool equivalent(const Term& a, const Term& b, Mode mode) {
  return alphaEq(canonical(a, mode), canonical(b, mode));
}

std::vector<Term> spine(const Term& t) {
  std::vector<Term> out;
  flatten(t, out);
  return out;
}

Term fromSpine(const std::vector<Term>& parts) {
  if (parts.empty()) return Term::eps();
  Term out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Term::plus(out, parts[i]);
  return out;
}

namespace {

void keyIn(const Term& t, std::map<std::string, int>& bound, int depth, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = bound.find(t.name());
      if (it != bound.end()) out += "#" + std::to_string(it->second);
      else out += "$" + t.name();
      return;
    }
    case TermKind::Word: out += "'" + t.name(); return;
    case TermKind::Eps: out += "e"; return;
    case TermKind::Plus:
    case TermKind::App:
      out += t.is(TermKind::Plus) ? "(+ " : "(@ ";
      keyIn(t.left(), bound, depth, out);
      out += " ";
      keyIn(t.right(), bound, depth, out);
      out += ")";
      return;
    case TermKind::Abs: {
      auto saved = bound.find(t.name()) != bound.end() ? std::optional<int>(bound[t.name()]) : std::nullopt;
      bound[t.name()] = depth;
      out += "(L " + t.varType().str() + " ";
      keyIn(t.body(), bound, depth + 1, out);
      out += ")";
      if (saved) bound[t.name()] = *saved; else bound.erase(t.name());
      return;
    }
  }
}

// Precedence levels: 0 top, 1 left operand of +, 2 right operand of + or function, 3 argument.
void printIn(const Term& t, int level, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Word: out += t.name(); return;
    case TermKind::Eps: out += "eps"; return;
    case TermKind::Abs: {
      if (level > 0) out += "(";
      out += "\\" + t.name() + ".";
      printIn(t.body(), 0, out);
      if (level > 0) out += ")";
      return;
    }
    case TermKind::Plus: {
      if (level > 1) out += "(";
      printIn(t.left(), 1, out);
      out += " + ";
      printIn(t.right(), 2, out);
      if (level > 1) out += ")";
      return;
    }
    case TermKind::App: {
      if (level > 2) out += "(";
      printIn(t.fun(), 2, out);
      out += " ";
      printIn(t.arg(), 3, out);
      if (level > 2) out += ")";
      return;
    }
  }
}

}  // namespace

std::string termKey(const Term& t) {
  std::map<std::string, int> bound;
  std::string out;
  keyIn(t, bound, 0, out);
  return out;
}

std::string print(const Term& t) {
  if (!t) return "<null>";
  std::string out;
  printIn(t, 0, out);
  return out;
}

}  // namespace htlg
