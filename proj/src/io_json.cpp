#include <functional>

#include "htlg/error.hpp"
#include "htlg/io.hpp"

namespace htlg {

std::string toString(Mode m) { return m == Mode::associative ? "associative" : "nonassociative"; }

Mode modeFromString(const std::string& s) {
  if (s == "associative" || s == "assoc") return Mode::associative;
  if (s == "nonassociative" || s == "nonassoc") return Mode::nonassociative;
  throw SyntaxError("unknown mode '" + s + "'", 0);
}

namespace {

Json hypToJson(const Hyp& h) {
  Json j{{"name", h.name}, {"formula", h.formula.str()}};
  if (h.lexTerm) j["term"] = print(*h.lexTerm);
  return j;
}

template <class Rule>
Json nodeToJson(const std::shared_ptr<const ProofNode<Rule>>& p) {
  Json j;
  j["rule"] = toString(p->rule);
  Json ante = Json::array();
  for (const auto& h : p->conclusion.antecedent) ante.push_back(hypToJson(h));
  j["antecedent"] = ante;
  j["term"] = print(p->conclusion.term);
  j["formula"] = p->conclusion.formula.str();
  if (!p->var.empty()) j["var"] = p->var;
  if (!p->var2.empty()) j["var2"] = p->var2;
  if (p->entry)
    j["entry"] = Json{{"word", p->entry->word}, {"formula", p->entry->formula.str()}, {"term", print(p->entry->term)}};
  Json prem = Json::array();
  for (const auto& c : p->premisses) prem.push_back(nodeToJson<Rule>(c));
  j["premisses"] = prem;
  return j;
}

std::string field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name) || !j[name].is_string())
    throw SyntaxError(std::string("missing string field '") + name + "'", 0);
  return j[name].get<std::string>();
}

std::string optionalField(const Json& j, const char* name) {
  if (!j.contains(name)) return {};
  if (!j[name].is_string()) throw SyntaxError(std::string("field '") + name + "' is not a string", 0);
  return j[name].get<std::string>();
}

Formula readFormula(const std::string& text) { return parseFormula(text); }

Term readTerm(const std::string& text, const TermEnv& env, const std::optional<ProsType>& expected) {
  return parseTerm(text, env, expected);
}

Hyp hypFromJson(const Json& j) {
  Formula f = readFormula(field(j, "formula"));
  if (j.contains("term")) return Hyp::lexical(field(j, "name"), f, readTerm(field(j, "term"), {}, std::nullopt));
  return Hyp::logical(field(j, "name"), f);
}

template <class Rule>
std::shared_ptr<const ProofNode<Rule>> nodeFromJson(const Json& j,
                                                    const std::function<std::optional<Rule>(const std::string&)>& rule) {
  if (!j.is_object()) throw SyntaxError("proof node is not an object", 0);
  auto node = std::make_shared<ProofNode<Rule>>();
  std::string tag = field(j, "rule");
  auto r = rule(tag);
  if (!r) throw SyntaxError("unknown rule '" + tag + "'", 0);
  node->rule = *r;
  if (!j.contains("antecedent") || !j["antecedent"].is_array()) throw SyntaxError("missing antecedent", 0);
  TermEnv env;
  for (const auto& h : j["antecedent"]) {
    node->conclusion.antecedent.push_back(hypFromJson(h));
    const Hyp& last = node->conclusion.antecedent.back();
    if (!last.lexical()) env[last.name] = pros(last.formula);
  }
  node->conclusion.formula = readFormula(field(j, "formula"));
  node->conclusion.term = readTerm(field(j, "term"), env, pros(node->conclusion.formula));
  node->var = optionalField(j, "var");
  node->var2 = optionalField(j, "var2");
  if (j.contains("entry")) {
    const Json& e = j["entry"];
    Formula f = readFormula(field(e, "formula"));
    node->entry = LexEntry{field(e, "word"), f, readTerm(field(e, "term"), {}, std::nullopt)};
  }
  if (j.contains("premisses")) {
    if (!j["premisses"].is_array()) throw SyntaxError("premisses is not an array", 0);
    for (const auto& c : j["premisses"]) node->premisses.push_back(nodeFromJson<Rule>(c, rule));
  }
  return node;
}

}  // namespace

Json ndToJson(const NDProof& p) { return nodeToJson<NDRule>(p); }
Json seqToJson(const SeqProof& p) { return nodeToJson<SeqRule>(p); }
NDProof ndFromJson(const Json& node) { return nodeFromJson<NDRule>(node, ndRuleFromString); }
SeqProof seqFromJson(const Json& node) { return nodeFromJson<SeqRule>(node, seqRuleFromString); }

ProofFile readProofFile(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SyntaxError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw SyntaxError("proof file is not an object", 0);
  ProofFile f;
  std::string kind = field(j, "kind");
  if (j.contains("mode")) f.mode = modeFromString(field(j, "mode"));
  if (!j.contains("proof")) throw SyntaxError("missing proof", 0);
  try {
    if (kind == "nd") {
      f.kind = ProofKind::nd;
      f.nd = ndFromJson(j["proof"]);
    } else if (kind == "seq") {
      f.kind = ProofKind::seq;
      f.seq = seqFromJson(j["proof"]);
    } else {
      throw SyntaxError("unknown proof kind '" + kind + "'", 0);
    }
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& e) {
    throw SyntaxError(e.what(), 0);
  }
  return f;
}

std::string writeProofFile(const ProofFile& f) {
  Json j{{"kind", f.kind == ProofKind::nd ? "nd" : "seq"}, {"mode", toString(f.mode)}};
  j["proof"] = f.kind == ProofKind::nd ? ndToJson(f.nd) : seqToJson(f.seq);
  return j.dump(2) + "\n";
}

std::string writeProofFile(const NDProof& p, Mode mode) {
  ProofFile f;
  f.kind = ProofKind::nd;
  f.mode = mode;
  f.nd = p;
  return writeProofFile(f);
}

std::string writeProofFile(const SeqProof& p, Mode mode) {
  ProofFile f;
  f.kind = ProofKind::seq;
  f.mode = mode;
  f.seq = p;
  return writeProofFile(f);
}

Json traceToJson(const std::vector<TraceStep>& trace) {
  Json out = Json::array();
  for (const auto& s : trace) out.push_back(Json{{"rule", toString(s.rule)}, {"site", s.site}});
  return out;
}

std::vector<TraceStep> traceFromJson(const Json& j) {
  if (!j.is_array()) throw SyntaxError("trace is not an array", 0);
  std::vector<TraceStep> out;
  for (const auto& s : j) {
    auto r = rewriteRuleFromString(field(s, "rule"));
    if (!r) throw SyntaxError("unknown rewrite rule '" + field(s, "rule") + "'", 0);
    if (!s.contains("site") || !s["site"].is_number_integer()) throw SyntaxError("trace step without site", 0);
    out.push_back({*r, s["site"].get<int>()});
  }
  return out;
}

Json derivationToJson(const Derivation& d, const ParseRequest& req, const ParseStats& stats) {
  Json j;
  j["tokens"] = req.tokens;
  j["goal"] = req.goal.str();
  j["term"] = print(d.term);
  Json lex = Json::array();
  for (const auto& e : d.lexChoice)
    lex.push_back(Json{{"word", e.word}, {"formula", e.formula.str()}, {"term", print(e.term)}});
  j["lexChoice"] = lex;
  if (d.ndProof) j["ndProof"] = ndToJson(d.ndProof);
  Json linking = Json::array();
  for (const auto& [x, y] : d.linking)
    linking.push_back(Json{{"hypothesis", x}, {"conclusion", y}, {"atom", d.net.vertices()[y].formula.str()}});
  j["linking"] = linking;
  j["trace"] = traceToJson(d.trace);
  j["stats"] = Json{{"linkingsExamined", stats.linkingsExamined},
                    {"switchingRejected", stats.switchingRejected},
                    {"lexicalChoices", stats.lexicalChoices},
                    {"contractionSteps", d.trace.size()},
                    {"totalContractionSteps", stats.contractionSteps},
                    {"initialSize", d.initialSize},
                    {"wallSeconds", stats.wallSeconds}};
  return j;
}

}  // namespace htlg
