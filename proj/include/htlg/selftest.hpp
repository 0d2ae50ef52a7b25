#pragma once

#include <string>
#include <vector>

namespace htlg {

struct SelftestLine {
  int criterion;
  bool pass;
  std::string detail;
};

// Golden fixture runs for the everyone-sleeps, scope-ambiguity and coordination
// examples, reading lexica and proof fixtures from `dataDir`.
std::vector<SelftestLine> runSelftest(const std::string& dataDir);

// Compiled-in data directory.
std::string defaultDataDir();

}  // namespace htlg
