#pragma once

#include "ainf/morphism.hpp"

namespace ainf {

// Minimal model of A up to arity N: the homology of m_1 carrying transferred
// operations (no differential), an inclusion quasi-isomorphism incl: H -> A and
// a projection quasi-isomorphism proj: A -> H, both valid morphisms up to N.
struct Transfer {
  AInftyAlgebra minimal;
  AInftyMorphism incl;
  AInftyMorphism proj;
  HodgeData hodge;
};

Transfer minimal_model(const AInftyAlgebra& A, int N);

} // namespace ainf
