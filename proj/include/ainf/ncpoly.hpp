#pragma once

#include "ainf/graded.hpp"
#include "ainf/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

// Formal variable x_i attached to a basis element e_i. The displayed degree is
// deg(x_i) = -deg(e_i); every Koszul sign below is driven by the shifted degree
// |e_i|' kept in `sdeg` (rotating a strictly cyclic polynomial with these
// parities reproduces the rotation identity of check_cyclic).
struct NCVar {
  std::string name;
  int degree = 0; // -deg(e_i)
  int sdeg = 0;   // |e_i|' = deg(e_i) - 1
  bool operator==(const NCVar&) const = default;
};

// Variable table for a basis: names "x_<element>".
std::vector<NCVar> variables_for(const GradedBasis& basis);

// Canonical monomial order: word length first, then lexicographic on ids.
struct WordLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Noncommutative polynomial over a fixed variable table. Zero coefficients are
// never stored; cyclic polynomials are kept fully expanded (every rotation
// present with its sign), so equality is entrywise.
struct NCPoly {
  std::vector<NCVar> vars;
  std::map<std::vector<int>, Scalar, WordLess> terms;

  void add(const std::vector<int>& word, const Scalar& c);
  Scalar coeff(const std::vector<int>& word) const;
  Scalar constant_term() const { return coeff({}); }
  bool is_zero() const { return terms.empty(); }
  int parity(int var) const { return ((vars[var].sdeg % 2) + 2) % 2; }
  // "c · x_a x_b x_c" terms joined by " + " in canonical order; "0" when empty.
  std::string render() const;
  bool operator==(const NCPoly&) const = default;
};

// Same variable tables required (asserted).
NCPoly nc_add(const NCPoly& p, const NCPoly& q);
NCPoly nc_sub(const NCPoly& p, const NCPoly& q);
NCPoly nc_scale(const Scalar& c, const NCPoly& p);

struct TaggedLess {
  bool operator()(const std::pair<std::vector<int>, int>& a,
                  const std::pair<std::vector<int>, int>& b) const {
    WordLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return a.second < b.second;
  }
};

// Polynomial whose every monomial ends in exactly one tag variable t_j, stored
// apart from the word. Tags never move once placed, so they carry no parity of
// their own into later signs.
struct TaggedNCPoly {
  std::vector<NCVar> vars;
  std::vector<NCVar> tags;
  std::map<std::pair<std::vector<int>, int>, Scalar, TaggedLess> terms;

  void add(const std::vector<int>& word, int tag, const Scalar& c);
  Scalar coeff(const std::vector<int>& word, int tag) const;
  bool is_zero() const { return terms.empty(); }
  std::string render() const;
  bool operator==(const TaggedNCPoly&) const = default;
};

// A monomial (x_i)^n is its own rotation orbit: in the strict sense it is
// cyclic only when n is odd or x_i has even parity; in the general sense it is
// declared cyclic as it stands.
enum class CyclicMode { strict, general };

// Signed cyclic symmetrization with the 1/n weight folded in: each monomial
// is replaced by the average of its n rotations with accumulated Koszul
// signs.  Even pure powers of an odd-parity letter have alternating rotation
// signs, so the average collapses them to zero; strict mode instead refuses
// them with Error(Precondition) naming the monomial.  Idempotent per mode,
// and the output is invariant under signed rotation.
NCPoly nc_cyclize(const NCPoly& p, CyclicMode mode);

bool nc_is_cyclic(const NCPoly& p, CyclicMode mode);

} // namespace ainf
