#include "htlg/formula.hpp"

#include <cctype>

#include "htlg/error.hpp"

namespace htlg {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  Formula arg, result;
  bool lambek;
  int degree, depth;
  std::string text;
};

namespace {

std::string operand(const Formula& f) { return f.isAtom() ? f.str() : "(" + f.str() + ")"; }

}  // namespace

Formula Formula::atom(std::string name) {
  Formula f;
  std::string text = name;
  f.node_ = std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(name), {}, {}, true, 0, 0, std::move(text)});
  return f;
}

Formula Formula::over(Formula result, Formula arg) {
  if (!result.isLambek() || !arg.isLambek())
    throw WellFormednessError("'/' needs Lambek operands: " + operand(result) + "/" + operand(arg));
  Formula f;
  std::string text = operand(result) + "/" + operand(arg);
  int degree = 1 + result.degree() + arg.degree();
  int depth = 1 + std::max(result.depth(), arg.depth());
  f.node_ = std::make_shared<const Node>(
      Node{FormulaKind::Over, {}, std::move(arg), std::move(result), true, degree, depth, std::move(text)});
  return f;
}

Formula Formula::under(Formula arg, Formula result) {
  if (!result.isLambek() || !arg.isLambek())
    throw WellFormednessError("'\\' needs Lambek operands: " + operand(arg) + "\\" + operand(result));
  Formula f;
  std::string text = operand(arg) + "\\" + operand(result);
  int degree = 1 + result.degree() + arg.degree();
  int depth = 1 + std::max(result.depth(), arg.depth());
  f.node_ = std::make_shared<const Node>(
      Node{FormulaKind::Under, {}, std::move(arg), std::move(result), true, degree, depth, std::move(text)});
  return f;
}

Formula Formula::limp(Formula arg, Formula result) {
  std::string rhs = result.isAtom() || result.kind() == FormulaKind::Limp ? result.str() : operand(result);
  std::string text = operand(arg) + " -o " + rhs;
  int degree = 1 + result.degree() + arg.degree();
  int depth = 1 + std::max(result.depth(), arg.depth());
  Formula f;
  f.node_ = std::make_shared<const Node>(
      Node{FormulaKind::Limp, {}, std::move(arg), std::move(result), false, degree, depth, std::move(text)});
  return f;
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::arg() const { return node_->arg; }
const Formula& Formula::result() const { return node_->result; }
bool Formula::isLambek() const { return node_->lambek; }
int Formula::degree() const { return node_->degree; }
int Formula::depth() const { return node_->depth; }
std::string Formula::str() const { return node_ ? node_->text : "<null>"; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->text == b.node_->text;
}

ProsType pros(const Formula& f) {
  if (f.isLambek()) return ProsType::st();
  return ProsType::arrow(pros(f.arg()), pros(f.result()));
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out{f};
  if (!f.isAtom()) {
    for (auto& g : subformulas(f.arg())) out.push_back(g);
    for (auto& g : subformulas(f.result())) out.push_back(g);
  }
  return out;
}

void collectAtoms(const Formula& f, std::set<std::string>& out) {
  if (f.isAtom()) {
    out.insert(f.name());
    return;
  }
  collectAtoms(f.arg(), out);
  collectAtoms(f.result(), out);
}

Formula instantiate(const Formula& f, const std::string& var, const Formula& value) {
  switch (f.kind()) {
    case FormulaKind::Atom: return f.name() == var ? value : f;
    case FormulaKind::Over: return Formula::over(instantiate(f.result(), var, value), instantiate(f.arg(), var, value));
    case FormulaKind::Under: return Formula::under(instantiate(f.arg(), var, value), instantiate(f.result(), var, value));
    case FormulaKind::Limp: return Formula::limp(instantiate(f.arg(), var, value), instantiate(f.result(), var, value));
  }
  return f;
}

const std::set<std::string>& defaultAtoms() {
  static const std::set<std::string> atoms{"n", "np", "s", "pp"};
  return atoms;
}

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view s, const std::set<std::string>* atoms, const std::set<std::string>& schemaVars)
      : s_(s), atoms_(atoms), schemaVars_(schemaVars) {}

  Formula parse() {
    Formula f = limp();
    skip();
    if (i_ != s_.size()) throw SyntaxError("unexpected '" + std::string(1, s_[i_]) + "' in formula", i_);
    return f;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool limpArrow() {
    skip();
    if (s_.compare(i_, 2, "-o") == 0) { i_ += 2; return true; }
    if (s_.compare(i_, 3, "\xE2\x8A\xB8") == 0) { i_ += 3; return true; }
    return false;
  }

  Formula limp() {
    Formula lhs = slash();
    if (limpArrow()) return Formula::limp(lhs, limp());
    return lhs;
  }

  Formula slash() {
    Formula lhs = primary();
    skip();
    if (i_ < s_.size() && (s_[i_] == '/' || s_[i_] == '\\')) {
      char op = s_[i_++];
      Formula rhs = primary();
      skip();
      if (i_ < s_.size() && (s_[i_] == '/' || s_[i_] == '\\'))
        throw SyntaxError("nested slashes need parentheses", i_);
      return op == '/' ? Formula::over(lhs, rhs) : Formula::under(lhs, rhs);
    }
    return lhs;
  }

  Formula primary() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError("unexpected end of formula", i_);
    if (s_[i_] == '(') {
      ++i_;
      Formula f = limp();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw SyntaxError("expected ')'", i_);
      ++i_;
      return f;
    }
    std::size_t start = i_;
    if (!std::isalpha(static_cast<unsigned char>(s_[i_]))) throw SyntaxError("expected an atom", i_);
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    std::string name(s_.substr(start, i_ - start));
    if (atoms_ && !atoms_->count(name) && !schemaVars_.count(name))
      throw WellFormednessError("unknown atom '" + name + "'");
    return Formula::atom(name);
  }

  std::string_view s_;
  const std::set<std::string>* atoms_;
  const std::set<std::string>& schemaVars_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parseFormula(std::string_view text, const std::set<std::string>* atoms,
                     const std::set<std::string>& schemaVars) {
  return FormulaParser(text, atoms, schemaVars).parse();
}

}  // namespace htlg
