#pragma once

#include "ainf/bimodule.hpp"

namespace ainf {

// Graded inner product on a basis: g.at(i,j) = <e_i, e_j>, subject to
//   deg e_i + deg e_j + alpha = 0 whenever g(i,j) != 0,
//   g(i,j) = -(-1)^{|e_i|' |e_j|'} g(j,i).
struct Pairing {
  int alpha = 0;
  Matrix mat;

  Scalar eval(const SparseVec& a, const SparseVec& b) const;
  Scalar eval(const SparseVec& a, int j) const;
  void validate(const GradedBasis& basis) const; // throws Error(Precondition)
  bool nondegenerate() const;
};

// <m_k(x_1..x_k), x_{k+1}> = (-1)^{|x_1|'(|x_2|'+..+|x_{k+1}|')}
//                             <m_k(x_2..x_{k+1}), x_1>   for 1 <= k <= N.
// Precondition: g validates and is nondegenerate.
RelationReport check_cyclic(const AInftyAlgebra& A, const Pairing& g, int N);

// The pairing-type map diag(A) -> dual(diag(A)): psi_{0,0}(v) = <v, .>, all
// higher components zero.
BimoduleMap pairing_to_bimodule_map(const AInftyAlgebra& A, const Pairing& g,
                                    int N);

// Whether a map diag -> dual(diag) is the pairing-type map of some pairing; if
// so and `out` is non-null, the pairing is written there.
bool is_pairing_type(const BimoduleMap& phi, Pairing* out = nullptr);

// Placement degree of a structure's dual target: the unique alpha with
// tgt.deg(i) = -src.deg(i) - alpha for every i. Throws Error(Precondition)
// when dimensions differ or no consistent alpha exists.
int dual_placement_degree(const BimoduleMap& phi);

// phi_{k,l}(a,v,b)(w) = -(-1)^{(sum|a|'+|v|')(sum|b|'+|w|')} phi_{l,k}(b,w,a)(v)
// for k+l <= N. phi must map a bimodule to its dual (same module basis).
RelationReport check_skew_symmetry(const BimoduleMap& phi, int N);

// Cyclic-family identity: for every family (a_1..a_n), n <= N+2, and every
// i<j<k, [a_i,a_j] + [a_j,a_k] + [a_k,a_i] = 0, where relative to the family
//   [a_s,a_t] = (-1)^{rho(t)} phi_{(s-t-1) mod n, (t-s-1) mod n}
//                   (a_{t+1}, .., underline a_s, .., a_{t-1})(a_t),
//   rho(t) = (sum_{u<=t}|a_u|') (sum_{u>t}|a_u|').
// Also checks the telescoping identity [a_1,a_n] + sum_t [a_{t+1},a_t] = 0.
// phi must be diagonal-type: src module basis == algebra basis.
RelationReport check_closedness(const BimoduleMap& phi, int N);

struct NondegReport {
  bool pass = false;
  int hdim = 0;
  std::string witness; // a homology class paired to zero, when failing
  std::vector<std::string> notes;
};
// The chain-level pairing phi_{0,0} descends to homology of m_1 and is
// nondegenerate there. Precondition: check_bimodule_map(phi, 1).
NondegReport check_homological_nondegeneracy(const BimoduleMap& phi);

// Coordinate conditions for a cyclic morphism between cyclic algebras:
// for 2 <= k <= N+1,
//   sum_{i+j=k, i,j>=1} <f_i(x_1..x_i), f_j(x_{i+1}..x_k)>_tgt
//     - [k==2] <x_1,x_2>_src = 0.
RelationReport check_cyclic_morphism(const AInftyMorphism& f, const Pairing& g_src,
                                     const Pairing& g_tgt, int N);

// Pullback of the pairing-type structure of g_tgt along f, assembled through
// the bimodule calculus: dual(f~) o psi~ o f~ restricted to the source diagonal.
BimoduleMap pullback_inner_product(const AInftyMorphism& f, const Pairing& g_tgt,
                                   int N);
// Same object through the closed formula
//   phi_{k,l}(a,v,b)(w) = sum_{i,j} (-1)^{K1}
//     < f_{k-i+j+1}(a_{i+1}..a_k, v, b_1..b_j),
//       f_{l-j+i+1}(b_{j+1}..b_l, w, a_1..a_i) >,
//   K1 = (|a_1|'+..+|a_i|') * (sum of all other letters, v and w included).
BimoduleMap pullback_inner_product_direct(const AInftyMorphism& f,
                                          const Pairing& g_tgt, int N);

// Diagram characterization of "f carries (tgt, g_tgt) to phi": the pullback of
// the pairing-type structure along f equals phi entrywise up to level N.
RelationReport check_pullback_equals(const AInftyMorphism& f, const Pairing& g_tgt,
                                     const BimoduleMap& phi, int N);

// Module-level cyclicity of a pairing on a bimodule:
//   <b_{k,l}(a,v,b), w> = -(-1)^{|v|' + (sum|a|')(|v|'+sum|b|'+|w|')}
//                          <v, b_{l,k}(b,w,a)>.
// Equivalent, on the diagonal bimodule, to the rotation identity of
// check_cyclic and to pairing_to_bimodule_map being a map of bimodules.
RelationReport check_module_cyclic(const Bimodule& M, const Pairing& g, int N);

} // namespace ainf
