#pragma once

#include "ainf/cyclic.hpp"

namespace ainf {

// Coefficient table of the noncommutative two-form attached to a structure on
// the diagonal bimodule:
//   omega[I; i | J; j] = phi_{|I|,|J|}(e_I; e_i; e_J)(e_j),  |I| + |J| <= N.
// Stored sparsely; the map order makes rendering deterministic.
struct SymplecticForm {
  GradedBasis basis;
  int alpha = 0; // placement degree of the originating structure
  std::map<std::tuple<std::vector<int>, int, std::vector<int>, int>, Scalar>
      entries;

  Scalar coeff(const std::vector<int>& I, int i, const std::vector<int>& J,
               int j) const;
  std::string render() const; // one line per entry
};

// Reads the table off the structure. Precondition: phi's source is
// diagonal-type (module basis equals the algebra basis).
SymplecticForm to_symplectic_form(const BimoduleMap& phi, int N);

// Dictionary identity omega[J; j | I; i] = -(-1)^K omega[I; i | J; j] with
// K = (sum_I |e|' + |e_i|')(sum_J |e|' + |e_j|'), entrywise.
RelationReport check_symplectic_skew(const SymplecticForm& om);

// Closedness of the two-form, evaluated from the table alone: the family
// brackets of check_closedness re-read as table lookups. Agrees with
// check_closedness of the originating structure.
RelationReport check_symplectic_closedness(const SymplecticForm& om, int N);

} // namespace ainf
