#include <cctype>
#include <functional>
#include <sstream>

#include "htlg/io.hpp"

namespace htlg {

namespace {

template <class Rule>
void textTree(const std::shared_ptr<const ProofNode<Rule>>& p, std::ostringstream& out, int depth) {
  out << std::string(2 * depth, ' ') << toString(p->rule);
  if (!p->var.empty()) out << "[" << p->var << (p->var2.empty() ? "" : "," + p->var2) << "]";
  out << "  " << p->conclusion.str() << "\n";
  for (const auto& c : p->premisses) textTree<Rule>(c, out, depth + 1);
}

std::string latexText(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\') {
      // Backslash starts a lambda in terms when followed by a letter.
      bool lambda = i + 1 < s.size() && (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_');
      out += lambda ? "\\lambda " : "\\backslash ";
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == 'o') {
      out += "\\multimap ";
      ++i;
    } else if (c == '|' && i + 1 < s.size() && s[i + 1] == '-') {
      out += "\\vdash";
      ++i;
    } else if (c == '_' || c == '#' || c == '&' || c == '%' || c == '$') {
      out += '\\';
      out += c;
    } else {
      out += c;
    }
  }
  return out;
}

std::string latexFormula(const Formula& f) {
  std::string s = f.str();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\') out += "\\backslash ";
    else if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == 'o') {
      out += "\\multimap ";
      ++i;
    } else out += s[i];
  }
  return out;
}

std::string latexJudgment(const Judgment& j) {
  std::string out;
  for (std::size_t i = 0; i < j.antecedent.size(); ++i) {
    if (i) out += ", ";
    out += latexText(j.antecedent[i].name) + ":" + latexFormula(j.antecedent[i].formula);
  }
  return "$" + out + " \\vdash " + latexText(print(j.term)) + " : " + latexFormula(j.formula) + "$";
}

template <class Rule>
std::string latexProof(const std::shared_ptr<const ProofNode<Rule>>& p) {
  std::ostringstream out;
  out << "\\begin{prooftree}\n";
  std::ostringstream body;
  std::function<void(const std::shared_ptr<const ProofNode<Rule>>&)> go = [&](const auto& q) {
    if (q->premisses.empty()) body << "\\AxiomC{}\n";
    for (const auto& c : q->premisses) go(c);
    std::string label = toString(q->rule);
    if (!q->var.empty()) label += "$^{" + latexText(q->var) + "}$";
    body << "\\RightLabel{\\scriptsize " << label << "}\n";
    std::size_t n = q->premisses.size();
    body << (n <= 1 ? "\\UnaryInfC" : n == 2 ? "\\BinaryInfC" : "\\TrinaryInfC") << "{" << latexJudgment(q->conclusion)
         << "}\n";
  };
  go(p);
  out << body.str() << "\\end{prooftree}\n";
  return out.str();
}

}  // namespace

std::string renderText(const NDProof& p) {
  std::ostringstream out;
  textTree<NDRule>(p, out, 0);
  return out.str();
}

std::string renderText(const SeqProof& p) {
  std::ostringstream out;
  textTree<SeqRule>(p, out, 0);
  return out.str();
}

std::string renderLatex(const NDProof& p) { return latexProof<NDRule>(p); }
std::string renderLatex(const SeqProof& p) { return latexProof<SeqRule>(p); }

std::string renderDerivationText(const Derivation& d, std::size_t index) {
  std::ostringstream out;
  out << "derivation " << index + 1 << "\n";
  out << "  term: " << print(d.term) << "\n";
  out << "  trace:";
  for (const auto& s : d.trace) out << " " << toString(s.rule) << "@" << s.site;
  out << "\n";
  if (d.ndProof) {
    std::istringstream tree(renderText(d.ndProof));
    for (std::string line; std::getline(tree, line);) out << "  " << line << "\n";
  }
  return out.str();
}

std::string renderDerivationLatex(const Derivation& d, std::size_t index) {
  std::ostringstream out;
  out << "% derivation " << index + 1 << ": " << print(d.term) << "\n";
  if (d.ndProof) out << renderLatex(d.ndProof);
  return out.str();
}

std::string renderDerivationDot(const Derivation& d, std::size_t index, Mode mode) {
  std::ostringstream out;
  out << "// derivation " << index + 1 << ": " << print(d.term) << "\n";
  out << d.net.toDot();
  out << replayTrace(toAPS(d.net), d.trace, mode).toDot();
  return out.str();
}

}  // namespace htlg
