#pragma once

#include "ainf/graded.hpp"
#include "ainf/rational.hpp"
#include "ainf/tensor.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ainf {

// Dense exact matrix, row-major. Dimensions are tiny (basis-sized), so O(n^3)
// everywhere is fine.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Scalar& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Scalar& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }

  static Matrix identity(int n);
  Matrix mul(const Matrix& rhs) const;
  Matrix transpose() const;
  // Throws Error(Precondition) when singular.
  Matrix inverse() const;
  int rank() const;
  SparseVec mul_sparse(const SparseVec& v) const; // this * v
  bool operator==(const Matrix&) const = default;
};

// In-place reduced row echelon form; returns pivot column indices in increasing
// order. Column scanning is left-to-right, so pivots are lexicographically
// earliest.
std::vector<int> rref(Matrix& m);

// Basis of ker(m) as dense columns, one per non-pivot column, in increasing
// column order; each vector has a 1 in its defining coordinate.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

// Sparse linear system over Scalar with deterministic Gauss-Jordan elimination:
// rows are consumed in insertion order, each new pivot is the smallest unknown id
// in the reduced row. Free unknowns take the value supplied by `free_value`
// (default 0).
struct LinearSystem {
  struct Row {
    SparseVec coeff; // unknown id -> coefficient
    Scalar rhs;
    std::string label; // used in failure witnesses
  };
  std::vector<Row> rows;

  void add_row(SparseVec coeff, Scalar rhs, std::string label = {});
};

struct SolveResult {
  bool consistent = true;
  int witness_row = -1; // index into rows when inconsistent
  std::vector<Scalar> assignment;
  std::vector<int> free_unknowns;
};

SolveResult solve(const LinearSystem& sys, int num_unknowns,
                  const std::function<Scalar(int)>& free_value = {});

// Output of splitting a complex (V, d) with d^2 = 0 into
// V = im(d) + H + C with ker(d) = im(d) + H, plus the degree -1 homotopy h with
// d h + h d = 1 - i p,  h i = 0,  p h = 0,  h h = 0,  p d = 0,  d i = 0.
struct HodgeData {
  GradedBasis homology; // representative names, unshifted degrees
  std::vector<SparseVec> reps;

  Matrix incl; // dim(V) x dim(H), columns are the representatives
  Matrix proj; // dim(H) x dim(V)
  Matrix hmtp; // dim(V) x dim(V)

  SparseVec i_of(const SparseVec& h_coords) const;
  SparseVec p_of(const SparseVec& v) const;
  SparseVec h_of(const SparseVec& v) const;
};

// `d` is an arity-1 tensor on `basis`, required to be a degree +1 differential
// squaring to zero (else Error(Precondition)).
HodgeData chain_homology(const GradedBasis& basis, const SparseTensor& d);

} // namespace ainf
