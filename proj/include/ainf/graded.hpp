#pragma once

#include <string>
#include <vector>

namespace ainf {

// Ordered basis of a finite-dimensional graded vector space. Indices into
// `elements` are the canonical handles used everywhere else; degrees are the
// unshifted (cohomological) ones, the shifted degree |e|' = deg(e) - 1 is what
// all sign bookkeeping uses.
struct GradedBasis {
  struct Element {
    std::string name;
    int degree = 0;
  };

  std::vector<Element> elements;

  int dim() const { return static_cast<int>(elements.size()); }
  int deg(int i) const { return elements[i].degree; }
  int sdeg(int i) const { return elements[i].degree - 1; }
  const std::string& name(int i) const { return elements[i].name; }

  // -1 when absent.
  int index_of(const std::string& name) const;

  // Unique names, any degrees. Throws Error(Precondition) on duplicates.
  void validate() const;
};

// Sign of rearranging graded symbols. `sdegs` lists the shifted degrees of the
// symbols in their original order; `perm` gives the rearranged word, i.e. output
// slot i holds original symbol perm[i]. The sign is the product over inverted
// pairs of (-1)^{sdegs[a] * sdegs[b]}.
int koszul_sign(const std::vector<int>& sdegs, const std::vector<int>& perm);

// Koszul sign for moving a single block past a prefix: (-1)^{p*q} as an int.
inline int sign_pow(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

} // namespace ainf
