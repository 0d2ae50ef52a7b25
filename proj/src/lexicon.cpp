#include "htlg/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "htlg/error.hpp"

namespace htlg {

std::string toString(LexErrorKind k) {
  switch (k) {
    case LexErrorKind::TypeMismatch: return "TypeMismatch";
    case LexErrorKind::IllTyped: return "IllTyped";
    case LexErrorKind::NonLinear: return "NonLinear";
    case LexErrorKind::MissingWordOccurrence: return "MissingWordOccurrence";
    case LexErrorKind::DuplicateWordOccurrence: return "DuplicateWordOccurrence";
    case LexErrorKind::ForeignLeaf: return "ForeignLeaf";
  }
  return "?";
}

std::vector<LexError> validateEntry(const LexEntry& e, bool laxPros) {
  std::vector<LexError> out;
  try {
    ProsType t = typeOf(e.term);
    if (!laxPros && !(t == pros(e.formula)))
      out.push_back({LexErrorKind::TypeMismatch,
                     "term has type " + t.str() + " but " + e.formula.str() + " needs " + pros(e.formula).str()});
  } catch (const IllTyped& err) {
    out.push_back({LexErrorKind::IllTyped, err.what()});
  }
  int own = 0;
  std::set<std::string> foreign;
  for (const auto& w : wordsOf(e.term)) {
    if (w == e.word) ++own;
    else foreign.insert(w);
  }
  if (own == 0) out.push_back({LexErrorKind::MissingWordOccurrence, "term never mentions '" + e.word + "'"});
  if (own > 1) out.push_back({LexErrorKind::DuplicateWordOccurrence, "term mentions '" + e.word + "' " + std::to_string(own) + " times"});
  for (const auto& v : freeVars(e.term)) foreign.insert(v);
  for (const auto& f : foreign) out.push_back({LexErrorKind::ForeignLeaf, "unexpected free leaf '" + f + "'"});
  if (auto nl = checkLinear(e.term))
    out.push_back({LexErrorKind::NonLinear, "variable '" + nl->var + "' occurs " + std::to_string(nl->count) + " times"});
  return out;
}

Lexicon::Lexicon() : atoms_(defaultAtoms()) {}

Formula Lexicon::parseFormula(const std::string& text) const { return htlg::parseFormula(text, &atoms_); }

LexEntry Lexicon::makeEntry(const std::string& word, const std::string& formula,
                            const std::optional<std::string>& term) const {
  Formula f = parseFormula(formula);
  if (!term) return LexEntry{word, f, Term::word(word)};
  Term t;
  try {
    t = parseTerm(*term, {}, pros(f));
  } catch (const IllTyped&) {
    if (!laxPros_) throw;
    t = parseTerm(*term);
  }
  return LexEntry{word, f, t};
}

void Lexicon::add(LexEntry e) {
  auto errors = validateEntry(e, laxPros_);
  if (!errors.empty()) {
    std::string msg = "invalid entry for '" + e.word + "':";
    for (const auto& err : errors) msg += " " + toString(err.kind) + " (" + err.message + ")";
    throw LexiconError(msg);
  }
  byWord_[e.word].push_back(entries_.size());
  entries_.push_back(std::move(e));
}

std::vector<LexEntry> Lexicon::lookup(const std::string& word) const {
  std::vector<LexEntry> out;
  if (auto it = byWord_.find(word); it != byWord_.end())
    for (auto i : it->second) out.push_back(entries_[i]);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::set<std::string> upperIdentifiers(const std::string& s) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      if (std::isupper(static_cast<unsigned char>(s[i]))) out.insert(s.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

struct Schema {
  std::string word;
  std::string formula;
  std::set<std::string> vars;
  std::optional<std::string> term;
};

// Splits "LHS : FORMULA [:= TERM]".
bool splitEntry(const std::string& line, std::string& lhs, std::string& formula, std::optional<std::string>& term) {
  std::size_t assign = line.find(":=");
  std::string head = assign == std::string::npos ? line : line.substr(0, assign);
  if (assign != std::string::npos) term = trim(line.substr(assign + 2));
  std::size_t colon = head.find(':');
  if (colon == std::string::npos) return false;
  lhs = trim(head.substr(0, colon));
  formula = trim(head.substr(colon + 1));
  return !lhs.empty() && !formula.empty();
}

}  // namespace

Lexicon Lexicon::fromString(const std::string& text, const LexiconOptions& opts, const std::string& source) {
  Lexicon lex;
  lex.laxPros_ = opts.laxPros;
  std::map<std::string, Schema> schemas;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.rfind("@atoms", 0) == 0) {
        std::istringstream names(line.substr(6));
        std::string a;
        while (names >> a) lex.addAtom(a);
      } else if (line.rfind("@schema", 0) == 0) {
        Schema s;
        if (!splitEntry(line.substr(7), s.word, s.formula, s.term))
          throw LexiconError("malformed @schema directive");
        s.vars = upperIdentifiers(s.formula);
        htlg::parseFormula(s.formula, &lex.atoms_, s.vars);
        schemas[s.word] = s;
      } else if (line.rfind("@instantiate", 0) == 0) {
        std::istringstream parts(line.substr(12));
        std::string name, at;
        parts >> name >> at;
        std::string rest;
        std::getline(parts, rest);
        rest = trim(rest);
        if (name.empty() || at != "AT" || rest.empty()) throw LexiconError("expected '@instantiate NAME AT FORMULA'");
        auto it = schemas.find(name);
        if (it == schemas.end()) throw LexiconError("unknown schema '" + name + "'");
        const Schema& s = it->second;
        if (s.vars.size() > 1) throw LexiconError("schema '" + name + "' has more than one variable");
        Formula value = lex.parseFormula(rest);
        Formula f = htlg::parseFormula(s.formula, &lex.atoms_, s.vars);
        if (!s.vars.empty()) f = instantiate(f, *s.vars.begin(), value);
        LexEntry e = lex.makeEntry(s.word, f.str(), s.term);
        lex.add(std::move(e));
      } else if (line[0] == '@') {
        throw LexiconError("unknown directive");
      } else {
        std::string word, formula;
        std::optional<std::string> term;
        if (!splitEntry(line, word, formula, term)) throw LexiconError("expected 'word : FORMULA [:= TERM]'");
        if (word.find_first_of(" \t") != std::string::npos) throw LexiconError("word contains whitespace");
        lex.add(lex.makeEntry(word, formula, term));
      }
    } catch (const Error& e) {
      errors.push_back(source + ":" + std::to_string(lineNo) + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += e + "\n";
    throw LexiconError(msg);
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path, const LexiconOptions& opts) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return fromString(buf.str(), opts, path);
}

}  // namespace htlg
