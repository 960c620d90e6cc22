#pragma once

#include "ainf/algebra.hpp"

namespace ainf {

// A-infinity morphism f: source -> target with degree-0 components f_k,
// sdeg(f_k(x_1..x_k)) = sum_i sdeg(x_i).
struct AInftyMorphism {
  AInftyAlgebra source, target;
  int max_arity = 0;
  std::map<int, SparseTensor> comps;

  void set_entry(int k, const std::vector<int>& in, int out, const Scalar& c);
  const SparseVec& apply(int k, std::span<const int> in) const;

  // Dense matrix of f_1; Error(Precondition) if f_1 is not invertible where an
  // inverse is requested downstream.
  Matrix linear_part() const;
};

AInftyMorphism identity_morphism(const AInftyAlgebra& A);

// Structure relation up to arity N:
//   sum_{k2,i} (-1)^{prefix'} f_{k1}(.., m^src_{k2}(..), ..)
//     = sum_r sum_{i_1+..+i_r=k} m^tgt_r(f_{i_1}(..), .., f_{i_r}(..)).
RelationReport check_morphism(const AInftyMorphism& F, int N);

// g after f; defined up to min(f.max_arity, g.max_arity).
AInftyMorphism compose_morphisms(const AInftyMorphism& g, const AInftyMorphism& f);

// Morphism RHS, the sum over decompositions of the word into f-blocks fed to
// target operations (no signs; components have degree 0).
SparseVec morphism_rhs(const AInftyMorphism& F, std::span<const int> word);
// Morphism LHS, the signed sum of source-operation insertions into f.
SparseVec morphism_lhs(const AInftyMorphism& F, std::span<const int> word);

// Given components f_k on src_basis and a full target, solve the structure
// relation for the unique source operations that make f a morphism up to arity
// N (f_1 must be invertible). Returns the completed morphism.
AInftyMorphism pull_back_source(const GradedBasis& src_basis,
                                const std::map<int, SparseTensor>& comps,
                                const AInftyAlgebra& target, int N);

// Dual recursion: given a full source and components with invertible f_1, solve
// for the unique target operations up to arity N.
AInftyMorphism push_forward_target(const AInftyAlgebra& source,
                                   const std::map<int, SparseTensor>& comps,
                                   const GradedBasis& tgt_basis, int N);

} // namespace ainf
