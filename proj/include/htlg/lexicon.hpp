#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htlg/formula.hpp"
#include "htlg/judgment.hpp"
#include "htlg/term.hpp"

namespace htlg {

struct LexEntry {
  std::string word;
  Formula formula;
  Term term;

  Hyp hyp() const { return Hyp::lexical(word, formula, term); }
};

enum class LexErrorKind {
  TypeMismatch,
  IllTyped,
  NonLinear,
  MissingWordOccurrence,
  DuplicateWordOccurrence,
  ForeignLeaf,
};

struct LexError {
  LexErrorKind kind;
  std::string message;
};

std::string toString(LexErrorKind k);

// Checks typing against pros(A), linearity, and that Word(word) is the only free leaf.
// With `laxPros`, a type other than pros(A) is tolerated.
std::vector<LexError> validateEntry(const LexEntry& e, bool laxPros = false);

struct LexiconOptions {
  bool laxPros = false;
};

class Lexicon {
 public:
  Lexicon();

  // Loads a lexicon file; throws LexiconError listing every bad line.
  static Lexicon load(const std::string& path, const LexiconOptions& opts = {});
  static Lexicon fromString(const std::string& text, const LexiconOptions& opts = {},
                            const std::string& source = "<string>");

  // Validates and appends; throws LexiconError on an invalid entry.
  void add(LexEntry e);
  void addAtom(const std::string& atom) { atoms_.insert(atom); }

  const std::set<std::string>& atoms() const { return atoms_; }
  const std::vector<LexEntry>& entries() const { return entries_; }
  std::vector<LexEntry> lookup(const std::string& word) const;
  bool contains(const std::string& word) const { return byWord_.count(word) > 0; }
  bool laxPros() const { return laxPros_; }

  Formula parseFormula(const std::string& text) const;

  // Builds an entry from surface syntax; the term defaults to Word(word).
  LexEntry makeEntry(const std::string& word, const std::string& formula,
                     const std::optional<std::string>& term = std::nullopt) const;

 private:
  std::set<std::string> atoms_;
  std::vector<LexEntry> entries_;
  std::map<std::string, std::vector<std::size_t>> byWord_;
  bool laxPros_ = false;
};

}  // namespace htlg
