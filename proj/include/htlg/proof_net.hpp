#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htlg/error.hpp"
#include "htlg/formula.hpp"
#include "htlg/judgment.hpp"

namespace htlg {

enum class LinkType { tensor, par };
enum class LinkIndex { eps, plus, app, lambda };

std::string toString(LinkType t);
std::string toString(LinkIndex i);

// A hyperedge. Tensor links: /E [C/B, B] -> [C], \E [A, A\C] -> [C], @ [B-oC, B] -> [C].
// Par links: /I [C] -> [C/B, B], \I [C] -> [A, A\C], lambda [C] -> [B-oC, B].
// `main` is the index of the main vertex within premisses (tensor) or conclusions (par).
struct Link {
  LinkType type;
  LinkIndex index;
  std::vector<int> premisses;
  std::vector<int> conclusions;
  int main = -1;
  bool alive = true;

  int mainVertex() const {
    if (main < 0) return -1;
    return type == LinkType::tensor ? premisses[main] : conclusions[main];
  }
  // For par links: the discharged (non-main) conclusion.
  int auxVertex() const { return conclusions[main == 0 ? 1 : 0]; }
};

struct PSVertex {
  Formula formula;
  int inLink = -1;   // link this vertex is a conclusion of
  int outLink = -1;  // link this vertex is a premiss of
  int hypothesis = -1;  // index into ProofStructure::hypotheses() when an input hypothesis
  bool goal = false;
  bool alive = true;
};

enum class VertexOrigin { lexical, logical, internal, conclusion };

enum class OccurrenceClass { cut, axiomatic, flow };

// A proof structure: hypotheses unfold positively, the goal negatively.
class ProofStructure {
 public:
  ProofStructure() = default;
  ProofStructure(std::vector<Hyp> hypotheses, Formula goal);

  const std::vector<PSVertex>& vertices() const { return vertices_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Hyp>& hypotheses() const { return hyps_; }
  const std::vector<int>& hypothesisVertices() const { return hypVertex_; }
  int goalVertex() const { return goalVertex_; }
  const Formula& goal() const { return goal_; }

  // Atomic leaves in creation order (hypotheses in order, goal last).
  const std::vector<int>& positiveLeaves() const { return positiveLeaves_; }
  const std::vector<int>& negativeLeaves() const { return negativeLeaves_; }

  int addVertex(PSVertex v);
  int addLink(Link l);

  // Identifies logical hypothesis `hyp` with conclusion `concl`; throws NotContractible.
  void contract(int hyp, int concl);

  bool isHypothesis(int v) const { return vertices_[v].alive && vertices_[v].inLink < 0; }
  bool isConclusion(int v) const { return vertices_[v].alive && vertices_[v].outLink < 0; }
  VertexOrigin origin(int v) const;
  OccurrenceClass classify(int v) const;
  std::size_t aliveVertexCount() const;
  std::size_t aliveLinkCount() const;

  // Rebuilds a structure from raw parts (used by netFromND).
  static ProofStructure fromParts(std::vector<PSVertex> vertices, std::vector<Link> links, std::vector<Hyp> hyps,
                                  std::vector<int> hypVertex, int goalVertex, Formula goal);

  std::string toDot() const;

 private:
  int unfold(const Formula& f, Polarity pol);
  int expand(int v, Polarity pol);

  std::vector<PSVertex> vertices_;
  std::vector<Link> links_;
  std::vector<Hyp> hyps_;
  std::vector<int> hypVertex_;
  int goalVertex_ = -1;
  Formula goal_;
  std::vector<int> positiveLeaves_, negativeLeaves_;
};

// A linking pairs each negative leaf (hypothesis) with a positive leaf (conclusion).
using Linking = std::vector<std::pair<int, int>>;

// Enumerates atom-respecting bijections in a fixed order: atom classes sorted by name,
// leaves by position, permutations lexicographic.
class LinkingEnumerator {
 public:
  explicit LinkingEnumerator(ProofStructure unlinked);

  const ProofStructure& unlinked() const { return base_; }
  std::optional<CountMismatch> mismatch() const;
  std::size_t total() const;
  // Calls `f` for every linking in order until it returns false.
  void forEach(const std::function<bool(const Linking&)>& f) const;
  ProofStructure apply(const Linking& l) const;

 private:
  ProofStructure base_;
  std::vector<std::string> atoms_;
  std::map<std::string, std::vector<int>> pos_, neg_;
};

// All linked proof structures; throws CountMismatch.
std::vector<ProofStructure> enumerateLinkings(const std::vector<Hyp>& hypotheses, const Formula& goal);

// Two switchings, every par kept on its premiss or every par kept on its discharged
// conclusion, are acyclic and connected. Necessary for a structure to be a net.
bool passesSwitchingTest(const ProofStructure& ps);

// Label-preserving isomorphism of connected-from-the-goal structures.
bool isomorphic(const ProofStructure& a, const ProofStructure& b);

}  // namespace htlg
