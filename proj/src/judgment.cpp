#include "htlg/judgment.hpp"

#include <algorithm>

namespace htlg {

Term Hyp::leaf() const {
  if (lexical()) return Term::word(name);
  return Term::var(name, pros(formula));
}

std::string Hyp::str() const { return name + ":" + formula.str(); }

bool sameHyp(const Hyp& a, const Hyp& b) {
  return a.name == b.name && a.lexical() == b.lexical() && a.formula == b.formula;
}

bool sameAntecedent(const std::vector<Hyp>& a, const std::vector<Hyp>& b) {
  if (a.size() != b.size()) return false;
  auto key = [](const Hyp& h) { return std::string(h.lexical() ? "w " : "v ") + h.name + " " + h.formula.str(); };
  std::vector<std::string> ka, kb;
  for (const auto& h : a) ka.push_back(key(h));
  for (const auto& h : b) kb.push_back(key(h));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

std::set<std::string> logicalNames(const std::vector<Hyp>& ante) {
  std::set<std::string> out;
  for (const auto& h : ante)
    if (!h.lexical()) out.insert(h.name);
  return out;
}

std::string Judgment::str() const {
  std::string out;
  for (std::size_t i = 0; i < antecedent.size(); ++i) {
    if (i) out += ", ";
    out += antecedent[i].str();
  }
  return out + " |- " + print(term) + " : " + formula.str();
}

}  // namespace htlg
