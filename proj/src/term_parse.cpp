#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "htlg/error.hpp"
#include "htlg/term.hpp"

namespace htlg {

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, Plus, Colon, Arrow, Ident, Eps, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    if (c == '\\') { out.push_back({Tok::Lambda, "\\", start}); ++i; continue; }
    if (s.compare(i, 2, "\xCE\xBB") == 0) { out.push_back({Tok::Lambda, "\\", start}); i += 2; continue; }
    if (s.compare(i, 2, "\xCE\xB5") == 0) { out.push_back({Tok::Eps, "eps", start}); i += 2; continue; }
    if (s.compare(i, 3, "\xE2\x86\x92") == 0) { out.push_back({Tok::Arrow, "->", start}); i += 3; continue; }
    if (s.compare(i, 2, "->") == 0) { out.push_back({Tok::Arrow, "->", start}); i += 2; continue; }
    switch (c) {
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '+': out.push_back({Tok::Plus, "+", start}); ++i; continue;
      case ':': out.push_back({Tok::Colon, ":", start}); ++i; continue;
      default: break;
    }
    if (identStart(c)) {
      while (i < s.size() && identChar(s[i])) ++i;
      std::string id(s.substr(start, i - start));
      out.push_back({id == "eps" ? Tok::Eps : Tok::Ident, id, start});
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

enum class RawKind { Ident, Eps, Plus, App, Abs };

struct Raw {
  RawKind kind;
  std::string name;
  std::optional<ProsType> annotation;
  std::vector<Raw> kids;
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Raw parseAll() {
    Raw r = term();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected token '" + peek().text + "'", peek().pos);
    return r;
  }

  ProsType typeAll() {
    ProsType t = type();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected token '" + peek().text + "'", peek().pos);
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw SyntaxError(std::string("expected ") + what, peek().pos);
    ++i_;
  }

  Raw term() {
    if (peek().kind == Tok::Lambda) return abstraction();
    return sum();
  }

  Raw abstraction() {
    std::size_t pos = take().pos;
    if (peek().kind != Tok::Ident) throw SyntaxError("expected variable after lambda", peek().pos);
    Raw r{RawKind::Abs, take().text, std::nullopt, {}, pos};
    if (peek().kind == Tok::Colon) {
      ++i_;
      r.annotation = type();
    }
    expect(Tok::Dot, "'.'");
    r.kids.push_back(term());
    return r;
  }

  Raw sum() {
    Raw acc = application();
    while (peek().kind == Tok::Plus) {
      std::size_t pos = take().pos;
      Raw rhs = application();
      acc = Raw{RawKind::Plus, {}, std::nullopt, {std::move(acc), std::move(rhs)}, pos};
    }
    return acc;
  }

  bool atomStart() const {
    Tok k = peek().kind;
    return k == Tok::Ident || k == Tok::Eps || k == Tok::LParen;
  }

  Raw application() {
    if (peek().kind == Tok::Lambda) return abstraction();
    Raw acc = atom();
    for (;;) {
      if (atomStart()) {
        Raw a = atom();
        acc = Raw{RawKind::App, {}, std::nullopt, {std::move(acc), std::move(a)}, a.pos};
      } else if (peek().kind == Tok::Lambda) {
        Raw a = abstraction();
        acc = Raw{RawKind::App, {}, std::nullopt, {std::move(acc), std::move(a)}, a.pos};
        return acc;
      } else {
        return acc;
      }
    }
  }

  Raw atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: { Token id = take(); return Raw{RawKind::Ident, id.text, std::nullopt, {}, id.pos}; }
      case Tok::Eps: { Token e = take(); return Raw{RawKind::Eps, {}, std::nullopt, {}, e.pos}; }
      case Tok::LParen: {
        ++i_;
        Raw r = term();
        expect(Tok::RParen, "')'");
        return r;
      }
      default:
        throw SyntaxError("expected a term", t.pos);
    }
  }

  ProsType type() {
    ProsType lhs;
    if (peek().kind == Tok::LParen) {
      ++i_;
      lhs = type();
      expect(Tok::RParen, "')'");
    } else if (peek().kind == Tok::Ident && peek().text == "st") {
      ++i_;
      lhs = ProsType::st();
    } else {
      throw SyntaxError("expected a prosodic type", peek().pos);
    }
    if (peek().kind == Tok::Arrow) {
      ++i_;
      return ProsType::arrow(lhs, type());
    }
    return lhs;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Unification over prosodic types with metavariables.
class Inference {
 public:
  int st() { return add({Shape::St, -1, -1}); }
  int arrow(int a, int b) { return add({Shape::Arrow, a, b}); }
  int meta() { return add({Shape::Meta, -1, -1}); }
  int from(const ProsType& t) { return t.isSt() ? st() : arrow(from(t.arg()), from(t.result())); }

  void unify(int a, int b, std::size_t pos) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    Cell& ca = cells_[a];
    Cell& cb = cells_[b];
    if (ca.shape == Shape::Meta) {
      if (occurs(a, b)) fail(pos, a, b);
      ca.bound = b;
      return;
    }
    if (cb.shape == Shape::Meta) {
      if (occurs(b, a)) fail(pos, a, b);
      cb.bound = a;
      return;
    }
    if (ca.shape != cb.shape) fail(pos, a, b);
    if (ca.shape == Shape::Arrow) {
      int aa = ca.a, ab = ca.b, ba = cb.a, bb = cb.b;
      unify(aa, ba, pos);
      unify(ab, bb, pos);
    }
  }

  ProsType resolve(int id) {
    id = find(id);
    const Cell& c = cells_[id];
    switch (c.shape) {
      case Shape::St:
      case Shape::Meta: return ProsType::st();
      case Shape::Arrow: return ProsType::arrow(resolve(c.a), resolve(c.b));
    }
    return {};
  }

  std::string show(int id) {
    id = find(id);
    const Cell& c = cells_[id];
    switch (c.shape) {
      case Shape::St: return "st";
      case Shape::Meta: return "?";
      case Shape::Arrow: {
        std::string l = show(c.a);
        if (cells_[find(c.a)].shape == Shape::Arrow) l = "(" + l + ")";
        return l + " -> " + show(c.b);
      }
    }
    return "";
  }

 private:
  enum class Shape { St, Arrow, Meta };
  struct Cell {
    Shape shape;
    int a, b;
    int bound = -1;
  };

  int add(Cell c) {
    cells_.push_back(c);
    return static_cast<int>(cells_.size()) - 1;
  }
  int find(int id) {
    while (cells_[id].shape == Shape::Meta && cells_[id].bound >= 0) id = cells_[id].bound;
    return id;
  }
  bool occurs(int m, int t) {
    t = find(t);
    if (t == m) return true;
    if (cells_[t].shape == Shape::Arrow) return occurs(m, cells_[t].a) || occurs(m, cells_[t].b);
    return false;
  }
  [[noreturn]] void fail(std::size_t pos, int expected, int found) {
    throw IllTyped("offset " + std::to_string(pos), show(expected), show(found));
  }

  std::vector<Cell> cells_;
};

struct Typed {
  RawKind kind;
  std::string name;
  bool isVar = false;
  int type = -1;     // variable or binder type
  std::vector<Typed> kids;
};

class Elaborator {
 public:
  explicit Elaborator(const TermEnv& env) : env_(env) {}

  std::pair<Typed, int> infer(const Raw& r) {
    switch (r.kind) {
      case RawKind::Ident: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == r.name) return {Typed{RawKind::Ident, r.name, true, it->second, {}}, it->second};
        if (auto it = env_.find(r.name); it != env_.end()) {
          int t = inf_.from(it->second);
          return {Typed{RawKind::Ident, r.name, true, t, {}}, t};
        }
        return {Typed{RawKind::Ident, r.name, false, -1, {}}, inf_.st()};
      }
      case RawKind::Eps:
        return {Typed{RawKind::Eps, {}, false, -1, {}}, inf_.st()};
      case RawKind::Plus: {
        auto [l, lt] = infer(r.kids[0]);
        inf_.unify(inf_.st(), lt, r.kids[0].pos);
        auto [rr, rt] = infer(r.kids[1]);
        inf_.unify(inf_.st(), rt, r.kids[1].pos);
        return {Typed{RawKind::Plus, {}, false, -1, {std::move(l), std::move(rr)}}, inf_.st()};
      }
      case RawKind::App: {
        auto [f, ft] = infer(r.kids[0]);
        auto [a, at] = infer(r.kids[1]);
        int res = inf_.meta();
        inf_.unify(ft, inf_.arrow(at, res), r.kids[0].pos);
        return {Typed{RawKind::App, {}, false, -1, {std::move(f), std::move(a)}}, res};
      }
      case RawKind::Abs: {
        int vt = r.annotation ? inf_.from(*r.annotation) : inf_.meta();
        scope_.emplace_back(r.name, vt);
        auto [b, bt] = infer(r.kids[0]);
        scope_.pop_back();
        return {Typed{RawKind::Abs, r.name, false, vt, {std::move(b)}}, inf_.arrow(vt, bt)};
      }
    }
    throw Error("unreachable");
  }

  Term build(const Typed& t) {
    switch (t.kind) {
      case RawKind::Ident:
        return t.isVar ? Term::var(t.name, inf_.resolve(t.type)) : Term::word(t.name);
      case RawKind::Eps: return Term::eps();
      case RawKind::Plus: return Term::plus(build(t.kids[0]), build(t.kids[1]));
      case RawKind::App: return Term::app(build(t.kids[0]), build(t.kids[1]));
      case RawKind::Abs: return Term::abs(t.name, inf_.resolve(t.type), build(t.kids[0]));
    }
    throw Error("unreachable");
  }

  Inference& inference() { return inf_; }

 private:
  const TermEnv& env_;
  std::vector<std::pair<std::string, int>> scope_;
  Inference inf_;
};

}  // namespace

Term parseTerm(std::string_view text, const TermEnv& freeVars, const std::optional<ProsType>& expected) {
  Parser p(lex(text));
  Raw raw = p.parseAll();
  Elaborator e(freeVars);
  auto [typed, ty] = e.infer(raw);
  if (expected) e.inference().unify(e.inference().from(*expected), ty, 0);
  return e.build(typed);
}

ProsType parseProsType(std::string_view text) {
  Parser p(lex(text));
  return p.typeAll();
}

}  // namespace htlg
