#pragma once

#include <string>
#include <vector>

namespace ainf {

struct Failure {
  std::string where;              // e.g. "relation k=3", "(k,l)=(1,2)"
  std::vector<std::string> tuple; // offending input names
  std::string defect;             // rendered nonzero defect
};

// Result of a relation-style check. Deterministic rendering: failures appear in
// the order discovered, which is itself deterministic (ordered maps, ordered word
// enumeration).
struct RelationReport {
  std::vector<Failure> failures;
  std::vector<std::string> notes;
  long long checked = 0; // instances examined

  bool pass() const { return failures.empty(); }
  std::string render(const std::string& title) const;
};

} // namespace ainf
