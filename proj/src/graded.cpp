#include "ainf/graded.hpp"

#include "ainf/error.hpp"

#include <set>

namespace ainf {

int GradedBasis::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (elements[i].name == name) return i;
  return -1;
}

void GradedBasis::validate() const {
  std::set<std::string> seen;
  for (const auto& e : elements) {
    if (e.name.empty()) fail(ErrorKind::Precondition, "empty basis element name");
    if (!seen.insert(e.name).second)
      fail(ErrorKind::Precondition, "duplicate basis element '" + e.name + "'");
  }
}

int koszul_sign(const std::vector<int>& sdegs, const std::vector<int>& perm) {
  if (sdegs.size() != perm.size())
    fail(ErrorKind::Precondition, "koszul_sign: size mismatch");
  int sign = 1;
  const int n = static_cast<int>(perm.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j] && (sdegs[perm[i]] % 2) && (sdegs[perm[j]] % 2))
        sign = -sign;
  return sign;
}

} // namespace ainf
