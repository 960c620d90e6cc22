#pragma once

#include "ainf/cyclic.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

// Result of construct_cyclic_model: a genuinely cyclic algebra B on the same
// graded basis as the input, a correcting morphism f: A -> B with identity
// linear part, and the strict pairing on B read off from the chain-level
// matrix of the input structure.
struct CyclicModel {
  AInftyAlgebra B;
  AInftyMorphism f; // f: A -> B, f_1 = id
  Pairing pairing;  // cyclic for B
  int orbit_count = 0;
  int pinned = 0; // unknowns fixed to zero by the gauge choice
};

// Turns a structure phi: diagonal(A) -> dual(diagonal(A)) into a cyclic model.
//
// For each arity k = 2..N+1 the unknowns X(t_1..t_{k+1}) = <f_k(t_1..t_k),
// t_{k+1}> satisfy
//   X(t) - (-1)^{|t_1|'(|t_2|'+...+|t_{k+1}|')} X(rot t) = R(t),
//   R(t) = phi_{0,k-1}(t_1; t_2..t_k)(t_{k+1})
//          - sum_{i=2}^{k-1} <f_i(t_1..t_i), f_{k+1-i}(t_{i+1}..t_{k+1})>,
// where rot is the left rotation. The unknowns are solved orbit by orbit
// under rotation; the lexicographically minimal representative of each free
// orbit is pinned to zero, making the output canonical. Orbits fixed by the
// rotation (all-equal words) with even |a|'*k carry no unknown and require
// the right-hand side to vanish.
//
// Preconditions (throw Error(Precondition)): phi's source matches A's basis
// dimensionwise and degreewise, its target is a consistently placed dual, and
// the chain-level matrix phi_{0,0} is skew with the placement degree.
// Throws Error(Domain) when phi_{0,0} is degenerate (compose with
// restrict_to_minimal_model first), when an orbit system is inconsistent
// ("closedness violated", with the offending word), or when a fixed all-equal
// word has a nonvanishing right-hand side ("hypotheses violated").
//
// The input is expected to be skew, closed and a map of bimodules up to N;
// those checks are the caller's contract (the command pipeline runs them).
// After solving, the bracket telescoping identity of check_closedness is
// re-asserted on small families as an internal consistency check.
CyclicModel construct_cyclic_model(const AInftyAlgebra& A, const BimoduleMap& phi,
                                   int N);

// Result of construct_cyclic_bimodule: a bimodule D on the same underlying
// module as the input, a bimodule map g: C -> D with identity (0,0)-part, and
// a module pairing on D satisfying the module cyclicity identity.
struct CyclicBimoduleModel {
  Bimodule D;
  BimoduleMap g;   // g: C -> D, g_{0,0} = id
  Pairing pairing; // module-cyclic for D
  int orbit_count = 0;
  int pinned = 0;
};

// Bimodule-level analogue of construct_cyclic_model for a structure
// phi: C -> dual(C). The unknowns Y(a,v,b,w) = <g_{k,l}(a,v,b), w> are paired
// by the flip (a,v,b,w) <-> (b,w,a,v) with sign
//   s = (-1)^{(sum|a|')(|v|'+sum|b|'+|w|') + |v|'(sum|a|'+sum|b|'+|w|')};
// each two-element orbit has monodromy +1, so one consistency condition and
// one pinned unknown per orbit. Self-paired words (a = b, v = w) with even
// sum|a|'+|v|' must have vanishing right-hand side; with odd sign the single
// equation determines the unknown. Error contract as in
// construct_cyclic_model.
CyclicBimoduleModel construct_cyclic_bimodule(const Bimodule& C,
                                              const BimoduleMap& phi, int N);

// Restriction of a structure to a minimal model: computes the homology of A
// with transferred operations, and pulls phi back along the inclusion
// quasi-isomorphism. The result's chain-level matrix is the homology pairing,
// so it is nondegenerate exactly when phi passes
// check_homological_nondegeneracy; feed it to construct_cyclic_model.
struct MinimalReduction {
  AInftyAlgebra minimal;
  AInftyMorphism incl; // minimal -> A
  BimoduleMap phi;     // pulled back to the minimal model
};

MinimalReduction restrict_to_minimal_model(const AInftyAlgebra& A,
                                           const BimoduleMap& phi, int N);

// Pullback of a general structure phi: diagonal(B) -> dual(diagonal(B)) along
// f: A -> B, as the composite dual(f~) . restrict_f(phi) . f~ where f~ is the
// induced map of diagonal bimodules. Specializes to pullback_inner_product
// when phi is pairing-type.
BimoduleMap pullback_structure(const AInftyMorphism& f, const BimoduleMap& phi,
                               int N);

// The strict module pairing as a one-component bimodule map M -> dual(M),
// placed at g.alpha. Module analogue of pairing_to_bimodule_map.
BimoduleMap module_pairing_to_bimodule_map(const Bimodule& M, const Pairing& g,
                                           int N);

} // namespace ainf
