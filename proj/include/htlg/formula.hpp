#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "htlg/term.hpp"

namespace htlg {

enum class FormulaKind { Atom, Over, Under, Limp };

enum class Polarity { positive, negative };

inline Polarity flip(Polarity p) { return p == Polarity::positive ? Polarity::negative : Polarity::positive; }

// Stratified formulas: `/` and `\` take Lambek (limp-free) operands only.
//   over(result, arg)   result/arg
//   under(arg, result)  arg\result
//   limp(arg, result)   arg -o result
class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string name);
  static Formula over(Formula result, Formula arg);
  static Formula under(Formula arg, Formula result);
  static Formula limp(Formula arg, Formula result);

  explicit operator bool() const { return node_ != nullptr; }
  FormulaKind kind() const;
  bool isAtom() const { return kind() == FormulaKind::Atom; }
  const std::string& name() const;
  const Formula& arg() const;
  const Formula& result() const;

  bool isLambek() const;
  int degree() const;  // number of connectives
  int depth() const;   // nesting depth; atoms have depth 0
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b) { return a.str() < b.str(); }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

ProsType pros(const Formula& f);

std::vector<Formula> subformulas(const Formula& f);
void collectAtoms(const Formula& f, std::set<std::string>& out);

// Replaces every atom named `var` by `value`, re-checking stratification.
Formula instantiate(const Formula& f, const std::string& var, const Formula& value);

const std::set<std::string>& defaultAtoms();

// Parses `a/b`, `a\b`, `a -o b`; slashes need explicit parentheses when nested,
// `-o` associates to the right. When `atoms` is given, other atom names are rejected
// except those in `schemaVars`.
Formula parseFormula(std::string_view text, const std::set<std::string>* atoms = nullptr,
                     const std::set<std::string>& schemaVars = {});

}  // namespace htlg
