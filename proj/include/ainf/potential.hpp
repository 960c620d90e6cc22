#pragma once

#include "ainf/cyclic.hpp"
#include "ainf/morphism.hpp"
#include "ainf/ncpoly.hpp"

namespace ainf {

// Tag variables t_j over a variable table: deg(t_j) = -alpha - 2 - |e_j|', the
// shifted degree of e_j's pairing partner. Names "t_<element>".
std::vector<NCVar> tag_table(const std::vector<NCVar>& vars, int alpha);

// p |-> sum_{i,j} (p <-d/dx_i) g^{ij} t_j: Leibniz rule with signed rotation of
// the tag to the trailing slot, so a term differentiated at letter u of P x S
// becomes (-1)^{|S|(|P|+|x|)} S P t. On a cyclic polynomial the n cuts of a
// weight-1/n family coincide and the fraction cancels. Requires p cyclic in
// the general sense and g invertible (Error(Precondition) otherwise).
TaggedNCPoly nc_derivative(const NCPoly& p, const Pairing& g);

// Inverse lookup: a tagged term c on (w, t_j) contributes c * g_{j,s} / (|w|+1)
// to the monomial w x_s. For cyclic p with zero constant term,
// nc_cyclize(nc_antiderivative(nc_derivative(p), g), mode) recovers p.
NCPoly nc_antiderivative(const TaggedNCPoly& t, const Pairing& g);

// Phi = sum_{k<=N} 1/(k+1) <m_k(e_{i_1}..e_{i_k}), e_{i_{k+1}}> x_{i_1}..x_{i_{k+1}}
// over the variable table of A's basis. Requires check_cyclic(A, g, N) to pass
// (Error(Precondition) otherwise); the rotation identity then makes the output
// strictly cyclic, and every monomial has shifted word degree -3 - alpha
// (asserted at insertion).
NCPoly compute_potential(const AInftyAlgebra& A, const Pairing& g, int N);

// Change of coordinates along h: source -> target: substitute each target
// variable x_i by sum_w h^i_w y_w over source words w, keeping only result
// words of length <= N + 1. No signs: the substitution coefficients are plain
// scalars.
NCPoly pullback_potential(const AInftyMorphism& h, const NCPoly& phi, int N);

// Invariance of the potential under a cyclic morphism h: B -> A, checked two
// ways on words of length <= N+1: (1) Phi^B equals the strict cyclization of
// the pulled-back Phi^A entrywise; (2) the tagged derivatives of both sides
// with respect to g_B agree. Preconditions -- both pairings cyclic, h a cyclic
// morphism -- are enforced with Error(Precondition).
RelationReport check_potential_invariance(const AInftyAlgebra& A, const Pairing& g_A,
                                          const AInftyAlgebra& B, const Pairing& g_B,
                                          const AInftyMorphism& h, int N);

} // namespace ainf
