#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace htlg {

// Prosodic types: st | arrow(a, b).
class ProsType {
 public:
  ProsType() = default;  // st
  static ProsType st() { return {}; }
  static ProsType arrow(ProsType arg, ProsType result);

  bool isSt() const { return node_ == nullptr; }
  bool isArrow() const { return node_ != nullptr; }
  const ProsType& arg() const;
  const ProsType& result() const;
  std::string str() const;
  int order() const;

  friend bool operator==(const ProsType& a, const ProsType& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

enum class Mode { associative, nonassociative };

enum class TermKind { Var, Word, Eps, Plus, App, Abs };

// Immutable, shared linear lambda terms over the string monoid.
class Term {
 public:
  Term() = default;

  static Term var(std::string name, ProsType type);
  static Term word(std::string surface);
  static Term eps();
  static Term plus(Term left, Term right);
  static Term app(Term fun, Term arg);
  static Term abs(std::string var, ProsType varType, Term body);

  explicit operator bool() const { return node_ != nullptr; }
  TermKind kind() const;
  bool is(TermKind k) const { return node_ && kind() == k; }

  // Var / Word / Abs-bound variable name.
  const std::string& name() const;
  // Var type, or the bound variable type of an Abs.
  const ProsType& varType() const;

  const Term& left() const;   // Plus
  const Term& right() const;  // Plus
  const Term& fun() const;    // App
  const Term& arg() const;    // App
  const Term& body() const;   // Abs

  std::size_t size() const;
  bool samePointer(const Term& o) const { return node_ == o.node_; }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct NonLinear {
  std::string var;
  int count;
};

ProsType typeOf(const Term& t);
std::optional<NonLinear> checkLinear(const Term& t);

std::map<std::string, int> freeVarCounts(const Term& t);
std::set<std::string> freeVars(const Term& t);
std::vector<std::string> wordsOf(const Term& t);
std::set<std::string> namesIn(const Term& t);
std::string freshName(const std::string& base, const std::set<std::string>& used);

Term substitute(const Term& t, const std::string& var, const Term& replacement);
Term renameFree(const Term& t, const std::string& from, const std::string& to);

std::optional<Term> betaStep(const Term& t);
std::optional<Term> etaStep(const Term& t);
// Every beta redex as a child-index path, leftmost-outermost first.
std::vector<std::vector<int>> betaRedexPaths(const Term& t);
Term betaAt(const Term& t, const std::vector<int>& path);

Term normalForm(const Term& t);
Term longNormalForm(const Term& t);
bool alphaEq(const Term& a, const Term& b);

Term monoidNormal(const Term& t, Mode mode = Mode::associative);
Term canonical(const Term& t, Mode mode = Mode::associative);
bool equivalent(const Term& a, const Term& b, Mode mode = Mode::associative);

// Leaves of the flattened + spine, with eps dropped.
std::vector<Term> spine(const Term& t);
Term fromSpine(const std::vector<Term>& parts);

// Bound names replaced by de Bruijn style indices; alpha-equal terms share a key.
std::string termKey(const Term& t);

std::string print(const Term& t);

using TermEnv = std::map<std::string, ProsType>;

// Identifiers in `freeVars` are variables, other free identifiers are words.
Term parseTerm(std::string_view text, const TermEnv& freeVars = {},
               const std::optional<ProsType>& expected = std::nullopt);
ProsType parseProsType(std::string_view text);

// A term with a single hole variable.
class TermContext {
 public:
  TermContext(Term withHole, std::string hole) : term_(std::move(withHole)), hole_(std::move(hole)) {}
  Term plug(const Term& t) const { return substitute(term_, hole_, t); }
  const Term& term() const { return term_; }
  const std::string& hole() const { return hole_; }

 private:
  Term term_;
  std::string hole_;
};

}  // namespace htlg
