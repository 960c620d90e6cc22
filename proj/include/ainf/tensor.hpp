#pragma once

#include "ainf/rational.hpp"

#include <map>
#include <span>
#include <vector>

namespace ainf {

// Sparse element of Hom(V^{tensor k}, V): coefficients indexed by (input word,
// output index). Zero coefficients are never stored, so `empty()` means the map
// is identically zero and iteration order is deterministic.
using SparseVec = std::map<int, Scalar>;

void add_scaled(SparseVec& into, const SparseVec& v, const Scalar& c);
bool is_zero(const SparseVec& v);
std::string render(const SparseVec& v,
                   const std::vector<std::string>& names); // "2*x + -1/3*y", "0"

class SparseTensor {
public:
  SparseTensor() : arity_(0) {}
  explicit SparseTensor(int arity) : arity_(arity) {}

  int arity() const { return arity_; }
  bool empty() const { return rows_.empty(); }

  void add(const std::vector<int>& in, int out, const Scalar& c);
  void set(const std::vector<int>& in, int out, const Scalar& c);
  Scalar coeff(const std::vector<int>& in, int out) const;

  // The full image of a basis word; {} when unset.
  const SparseVec& apply(std::span<const int> in) const;

  const std::map<std::vector<int>, SparseVec>& rows() const { return rows_; }

  bool operator==(const SparseTensor&) const = default;

private:
  int arity_;
  std::map<std::vector<int>, SparseVec> rows_;
};

// All words of length k over {0..dim-1}, lexicographic. Calls fn(word).
template <class Fn> void for_each_word(int dim, int k, Fn&& fn) {
  std::vector<int> w(k, 0);
  if (k == 0) {
    fn(w);
    return;
  }
  if (dim == 0) return;
  while (true) {
    fn(w);
    int i = k - 1;
    while (i >= 0 && w[i] == dim - 1) w[i--] = 0;
    if (i < 0) return;
    ++w[i];
  }
}

} // namespace ainf
