#pragma once

#include "ainf/cyclic.hpp"
#include "ainf/morphism.hpp"
#include "ainf/ncpoly.hpp"
#include "ainf/novikov.hpp"

#include <map>
#include <span>
#include <utility>

namespace ainf {

// Gapped filtered A-infinity algebra, truncated at energy `cap`: operations
// m_{k,beta} for k >= 0 and beta in the monoid closure, with
//   sdeg(m_{k,beta}(x_1..x_k)) = 1 + sum_i sdeg(x_i) - mu(beta).
// m_{0,beta} requires positive energy, so the beta = (0,0) slice is a strict
// A-infinity algebra. Entries with energy above the cap are dropped.
struct FilteredAInftyAlgebra {
  GradedBasis basis;
  GappedMonoid monoid;
  Scalar cap = 0;
  int max_arity = 0;
  std::map<std::pair<int, Beta>, SparseTensor> ops;

  int dim() const { return basis.dim(); }
  int sdeg(int i) const { return basis.sdeg(i); }

  void set_entry(int k, const Beta& beta, const std::vector<int>& in, int out,
                 const Scalar& c);
  const SparseVec& apply(int k, const Beta& beta, std::span<const int> in) const;
};

// Filtered morphism H: source -> target with components h_{k,beta}, k >= 0,
//   sdeg(h_{k,beta}(x_1..x_k)) = sum_i sdeg(x_i) - mu(beta),
// h_{0,beta} only with positive energy.
struct FilteredAInftyMorphism {
  FilteredAInftyAlgebra source, target;
  int max_arity = 0;
  std::map<std::pair<int, Beta>, SparseTensor> comps;

  void set_entry(int k, const Beta& beta, const std::vector<int>& in, int out,
                 const Scalar& c);
  const SparseVec& apply(int k, const Beta& beta, std::span<const int> in) const;

  // Dense matrix of h_{1,(0,0)}.
  Matrix linear_part() const;
};

// Structure relation per word and energy: for every 0 <= k <= N and beta in
// the closure below `cap`,
//   sum_{j, s, b1+b2=beta} (-1)^{|x_1|'+..+|x_s|'}
//     m_{k-j+1, b1}(x_1.., m_{j, b2}(x_{s+1}..), ..x_k) = 0,
// including the k = 0 case sum m_{1,b1}(m_{0,b2}) = 0. Energies stored outside
// the monoid closure are reported as failures.
RelationReport check_filtered_ainfty(const FilteredAInftyAlgebra& A, int N,
                                     const Scalar& cap);

// Cyclic symmetry per arity and energy: for 1 <= k <= N and beta in closure,
//   <m_{k,beta}(x_1..x_k), x_{k+1}>
//     = (-1)^{|x_1|'(|x_2|'+..+|x_{k+1}|')} <m_{k,beta}(x_2..x_{k+1}), x_1>.
// Preconditions: the monoid is gapped, the relations hold, the pairing is
// valid and nondegenerate.
RelationReport check_filtered_cyclic(const FilteredAInftyAlgebra& A,
                                     const Pairing& g, int N, const Scalar& cap);

// Filtered morphism relation per word and energy (h_{0,beta} insertions
// participate on both sides; target-side blocks may be empty).
RelationReport check_filtered_morphism(const FilteredAInftyMorphism& H, int N,
                                       const Scalar& cap);

// Cyclicity of a filtered morphism: for every k >= 0 and energy beta,
//   sum_{i+j=k, b1+b2=beta} <h_{i,b1}(x_1..x_i), h_{j,b2}(x_{i+1}..x_k)>_tgt
//     = [k==2 && beta==0] <x_1, x_2>_src,
// so the plain isometry condition is the (k,beta) = (2,0) slice and every
// other slice vanishes. Checked for k <= N+1.
RelationReport check_filtered_cyclic_morphism(const FilteredAInftyMorphism& H,
                                              const Pairing& g_src,
                                              const Pairing& g_tgt, int N,
                                              const Scalar& cap);

// The beta = (0,0) slice, a strict A-infinity algebra / morphism.
AInftyAlgebra energy_zero_slice(const FilteredAInftyAlgebra& A);
AInftyMorphism energy_zero_slice(const FilteredAInftyMorphism& H);

// Embed an unfiltered structure at energy zero.
FilteredAInftyAlgebra filtered_from_unfiltered(const AInftyAlgebra& A,
                                               const GappedMonoid& G,
                                               const Scalar& cap);

// Given components on src_basis with invertible h_{1,(0,0)} and a full target,
// solve the filtered morphism relation for the unique source operations up to
// arity N, by induction on energy then arity.
FilteredAInftyMorphism
filtered_pull_back_source(const GradedBasis& src_basis,
                          const std::map<std::pair<int, Beta>, SparseTensor>& comps,
                          const FilteredAInftyAlgebra& target, int N);

// Noncommutative polynomial with truncated Novikov coefficients.
struct FilteredNCPoly {
  std::vector<NCVar> vars;
  Scalar cap = 0;
  std::map<std::vector<int>, NovikovScalar, WordLess> terms;

  void add(const std::vector<int>& word, const NovikovScalar& c);
  NovikovScalar coeff(const std::vector<int>& word) const;
  bool is_zero() const { return terms.empty(); }
  std::string render() const;
  bool operator==(const FilteredNCPoly&) const = default;
};

// Cyclization with the same word signs and pure-power semantics as nc_cyclize.
FilteredNCPoly filtered_cyclize(const FilteredNCPoly& p, CyclicMode mode);

// Potential of a filtered cyclic structure: for 0 <= k <= N,
//   sum 1/(k+1) T^{lambda(beta)} e^{mu(beta)/2}
//       <m_{k,beta}(x_{i_1}..x_{i_k}), x_s> x_{i_1}..x_{i_k} x_s,
// so m_{0,beta} contributes linear terms. Precondition: check_filtered_cyclic.
FilteredNCPoly compute_filtered_potential(const FilteredAInftyAlgebra& A,
                                          const Pairing& g, int N);

// Substitute x_i by the full image under H (including the constant h_{0,beta}
// blocks) and truncate to words of length <= N+1.
FilteredNCPoly filtered_pullback_potential(const FilteredAInftyMorphism& H,
                                           const FilteredNCPoly& phi, int N);

// Compares the potential of h.source with the cyclized pullback of the
// potential of h.target along h. All coefficients of nonempty words must
// agree; the empty-word (constant) difference is reported in the notes and is
// the only discrepancy a cyclic filtered morphism can produce.
RelationReport check_filtered_potential_invariance(
    const FilteredAInftyAlgebra& A, const Pairing& g_A,
    const FilteredAInftyAlgebra& B, const Pairing& g_B,
    const FilteredAInftyMorphism& h, int N);

} // namespace ainf
