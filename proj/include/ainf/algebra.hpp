#pragma once

#include "ainf/graded.hpp"
#include "ainf/linear.hpp"
#include "ainf/report.hpp"
#include "ainf/tensor.hpp"

#include <map>
#include <span>

namespace ainf {

// Finite-dimensional A-infinity algebra with operations m_k, 1 <= k <= max_arity,
// in the shifted sign convention: every sign below is computed from shifted
// degrees |x|' = deg(x) - 1, and each operation satisfies
//   sdeg(m_k(x_1..x_k)) = 1 + sum_i sdeg(x_i).
struct AInftyAlgebra {
  GradedBasis basis;
  int max_arity = 0;
  std::map<int, SparseTensor> ops; // arity -> tensor; absent means zero

  int dim() const { return basis.dim(); }
  int sdeg(int i) const { return basis.sdeg(i); }

  // Accumulating insert; enforces the degree rule.
  void set_entry(int k, const std::vector<int>& in, int out, const Scalar& c);
  const SparseVec& apply(int k, std::span<const int> in) const;
  bool has_op(int k) const;
};

// Left-hand side of the structure relation on a word: the signed sum over all
// single insertions of an inner operation,
//   sum_{k2, i} (-1)^{|x_1|'+..+|x_{i-1}|'} m_{k1}(x_1.., m_{k2}(x_i..), ..x_k).
// Zero for every word of length <= N iff the relations hold up to arity N.
SparseVec ainfty_defect(const AInftyAlgebra& A, std::span<const int> word);

RelationReport check_ainfty(const AInftyAlgebra& A, int N);

// The same underlying multilinear maps can be presented in the non-shifted
// convention; the translation twists each coefficient by
//   (-1)^{sum_{i=1}^{k-1} (k-i) deg(x_i)}
// and is its own inverse. `direction` documents intent only.
enum class ConvDirection { NsToShifted, ShiftedToNs };
AInftyAlgebra convert_convention(const AInftyAlgebra& A, ConvDirection direction);

// Multilinear extension of the arity-r operation to sparse arguments (no signs:
// used where the interleaved maps have degree 0).
SparseVec apply_multilinear(const AInftyAlgebra& A, int r,
                            const std::vector<SparseVec>& args);

// T'(y_1..y_k) = output_change( T(input_change y_1, .., input_change y_k) ),
// i.e. coefficients of the conjugated operation in the new basis. Pass identity
// for a side to leave it alone.
SparseTensor transform_tensor(const SparseTensor& T, const Matrix& input_change,
                              const Matrix& output_change);

} // namespace ainf
