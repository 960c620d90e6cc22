#pragma once

#include "ainf/rational.hpp"
#include "ainf/report.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ainf {

// Element of the energy monoid: beta = (lambda(beta), mu(beta)) with
// lambda >= 0 rational and mu even.
struct Beta {
  Scalar lambda = 0;
  int mu = 0;

  bool operator==(const Beta&) const = default;
  bool operator<(const Beta& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return mu < o.mu;
  }
  Beta operator+(const Beta& o) const { return {lambda + o.lambda, mu + o.mu}; }
  bool is_zero() const { return lambda == 0 && mu == 0; }
  std::string str() const; // "(lambda, mu)"
};

// Truncated universal Novikov scalar: finite sum a T^lambda e^n with rational
// energies 0 <= lambda <= cap. Terms beyond the cap are dropped by every
// operation, making truncation a quotient: products of kept terms can only
// gain energy, never recover dropped one.
struct NovikovScalar {
  Scalar cap = 0;
  std::map<std::pair<Scalar, int>, Scalar> terms; // (lambda, n) -> a

  static NovikovScalar constant(const Scalar& a, const Scalar& cap);
  static NovikovScalar monomial(const Scalar& a, const Scalar& lambda, int n,
                                const Scalar& cap);

  // Drops lambda > cap; rejects lambda < 0 (Error(Precondition)).
  void add_term(const Scalar& a, const Scalar& lambda, int n);
  Scalar coeff(const Scalar& lambda, int n) const;
  bool is_zero() const { return terms.empty(); }

  NovikovScalar operator+(const NovikovScalar& o) const;
  NovikovScalar operator-() const;
  NovikovScalar operator-(const NovikovScalar& o) const;
  NovikovScalar operator*(const NovikovScalar& o) const;
  NovikovScalar scaled(const Scalar& c) const;

  // "a T^lambda e^n" joined by " + " in (lambda, n) order; "0" when empty.
  std::string render() const;
  bool operator==(const NovikovScalar&) const = default;
};

// Finitely generated submonoid of Q_{>=0} x 2Z, used through its cap-truncated
// closure.
struct GappedMonoid {
  std::vector<Beta> generators;
};

// All sums of generators with energy <= cap, including (0,0), sorted.
// Generators violating the gap conditions (negative or zero energy with
// nonzero mu) are excluded so the enumeration always terminates.
std::vector<Beta> monoid_closure(const GappedMonoid& G, const Scalar& cap);

// The three gap conditions on the truncated closure: the energy projection is
// discrete (finite below the cap, energies >= 0), the zero-energy slice is
// {(0,0)}, and every energy fiber is finite. Notes record the fiber sizes.
RelationReport check_gapped(const GappedMonoid& G, const Scalar& cap);

} // namespace ainf
