#include "grid.hpp"

#include <algorithm>

#include "htlg/error.hpp"

namespace grid {

std::vector<htlg::Formula> formulas(const std::vector<std::string>& atoms, int depth, bool lambekOnly) {
  using htlg::Formula;
  std::vector<Formula> out;
  for (const auto& a : atoms) out.push_back(Formula::atom(a));
  std::size_t previous = 0;  // formulas of depth < d - 1 occupy [0, previous)
  for (int d = 1; d <= depth; ++d) {
    std::size_t upto = out.size();
    std::vector<Formula> next;
    for (std::size_t i = 0; i < upto; ++i)
      for (std::size_t j = 0; j < upto; ++j) {
        if (i < previous && j < previous) continue;  // both operands shallower: already built
        const Formula& x = out[i];
        const Formula& y = out[j];
        if (x.isLambek() && y.isLambek()) {
          next.push_back(Formula::over(x, y));
          next.push_back(Formula::under(x, y));
        }
        if (!lambekOnly) next.push_back(Formula::limp(x, y));
      }
    previous = upto;
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

void forEachMultiset(std::size_t poolSize, std::size_t maxSize,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!idx.empty()) f(idx);
    if (idx.size() == maxSize) return;
    for (std::size_t i = from; i < poolSize; ++i) {
      idx.push_back(i);
      rec(i);
      idx.pop_back();
    }
  };
  rec(0);
}

void forEachSequence(std::size_t poolSize, std::size_t maxSize,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx;
  std::function<void()> rec = [&] {
    if (!idx.empty()) f(idx);
    if (idx.size() == maxSize) return;
    for (std::size_t i = 0; i < poolSize; ++i) {
      idx.push_back(i);
      rec();
      idx.pop_back();
    }
  };
  rec();
}

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<htlg::Hyp> hypotheses(const std::vector<htlg::Formula>& formulas) {
  std::vector<htlg::Hyp> out;
  auto ns = names(formulas.size());
  for (std::size_t i = 0; i < formulas.size(); ++i) out.push_back(htlg::Hyp::logical(ns[i], formulas[i]));
  return out;
}

namespace {

void count(const htlg::Formula& f, int sign, const std::vector<std::string>& atoms, std::vector<int>& out) {
  if (f.isAtom()) {
    auto it = std::find(atoms.begin(), atoms.end(), f.name());
    out[it - atoms.begin()] += sign;
    return;
  }
  count(f.arg(), -sign, atoms, out);
  count(f.result(), sign, atoms, out);
}

}  // namespace

Balance balanceOf(const htlg::Formula& f, const std::vector<std::string>& atoms) {
  Balance b{std::vector<int>(atoms.size(), 0)};
  count(f, 1, atoms, b.counts);
  return b;
}

}  // namespace grid
