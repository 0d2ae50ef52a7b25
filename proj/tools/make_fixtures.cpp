// Writes the hand-built proof fixtures, or with --check compares them to the files on disk.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "htlg/error.hpp"
#include "htlg/io.hpp"
#include "htlg/selftest.hpp"

using namespace htlg;

namespace {

NDProof lexOf(const Lexicon& lex, const std::string& word) { return nd::lex(lex.lookup(word).at(0)); }

// Wide scope for the object quantifier.
NDProof scopeProof(const Lexicon& lex) {
  Formula np = Formula::atom("np");
  NDProof verbObj = nd::overE(lexOf(lex, "delivers"), nd::ax("x", np));
  NDProof object = nd::overE(lexOf(lex, "its"), lexOf(lex, "destination"));
  NDProof pp = nd::overE(lexOf(lex, "to"), object);
  NDProof vp = nd::overE(verbObj, pp);
  NDProof clause = nd::underE(nd::ax("y", np), vp);
  NDProof subj = nd::limpE(nd::limpI(clause, "y"), lexOf(lex, "someone"));
  return nd::limpE(nd::limpI(subj, "x"), lexOf(lex, "everything"));
}

NDProof coordinationProof(const Lexicon& lex) {
  Formula np = Formula::atom("np");
  NDProof left = nd::overI(nd::underE(lexOf(lex, "Ahmed"), nd::overE(lexOf(lex, "loves"), nd::ax("x", np))), "x");
  NDProof right =
      nd::overI(nd::underE(lexOf(lex, "Johani"), nd::overE(lexOf(lex, "dislikes"), nd::ax("z", np))), "z");
  NDProof conj = nd::underE(left, nd::overE(lexOf(lex, "and"), right));
  return nd::overE(conj, nd::overE(lexOf(lex, "the"), lexOf(lex, "pizza")));
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build the proof fixtures"};
  std::string dataDir = defaultDataDir();
  std::string outDir;
  bool check = false;
  app.add_option("--data", dataDir, "Data directory holding lexica/");
  app.add_option("--out", outDir, "Output directory (default: <data>/fixtures)");
  app.add_flag("--check", check, "Compare instead of writing; exit 1 on a difference");
  CLI11_PARSE(app, argc, argv);
  if (outDir.empty()) outDir = dataDir + "/fixtures";

  try {
    Lexicon scope = Lexicon::load(dataDir + "/lexica/scope.lex");
    Lexicon lambek_coord = Lexicon::load(dataDir + "/lexica/lambek_coord.lex");
    std::vector<std::pair<std::string, std::string>> files{
        {"scope_nd.json", writeProofFile(scopeProof(scope))},
        {"coordination_nd.json", writeProofFile(coordinationProof(lambek_coord))},
    };
    int status = 0;
    for (const auto& [name, text] : files) {
      std::string path = outDir + "/" + name;
      if (check) {
        if (readFile(path) != text) {
          std::cerr << path << " differs from the generated fixture\n";
          status = 1;
        }
      } else {
        std::ofstream out(path);
        if (!out) {
          std::cerr << "cannot write " << path << "\n";
          return 2;
        }
        out << text;
      }
    }
    return status;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
