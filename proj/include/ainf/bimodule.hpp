#pragma once

#include "ainf/algebra.hpp"
#include "ainf/morphism.hpp"

#include <compare>

namespace ainf {

// A-infinity bimodule over a single algebra, with action operations b_{k,l}
// taking k algebra inputs, the module input, then l algebra inputs. Degree rule
// (all shifted): msdeg(out) = 1 + sum sdeg(left) + msdeg(v) + sum sdeg(right).
struct Bimodule {
  AInftyAlgebra alg;
  GradedBasis module;
  int max_level = 0; // actions stored for k + l <= max_level
  std::map<std::pair<int, int>, SparseTensor> acts;

  int msdeg(int i) const { return module.sdeg(i); }
  void set_entry(int k, int l, const std::vector<int>& left, int v,
                 const std::vector<int>& right, int out, const Scalar& c);
  const SparseVec& apply(int k, int l, std::span<const int> left, int v,
                         std::span<const int> right) const;
  const SparseVec& apply_word(std::span<const int> left, int v,
                              std::span<const int> right) const {
    return apply(static_cast<int>(left.size()), static_cast<int>(right.size()),
                 left, v, right);
  }
};

// Bar-resolution word (a_1..a_k | v | b_1..b_l) and formal sums of them.
struct ModWord {
  std::vector<int> left;
  int v = 0;
  std::vector<int> right;
  auto operator<=>(const ModWord&) const = default;
};
using ModSum = std::map<ModWord, Scalar>;

// All single insertions (inner algebra block on either side, or an action block
// swallowing the module slot) with prefix Koszul signs; the building block of
// every bimodule-side relation.
ModSum bar_insertions(const Bimodule& M, const ModWord& w);

// b(b(word)) = 0 for all words with k + l <= N.
RelationReport check_bimodule(const Bimodule& M, int N);

// b_{k,l} = m_{k+1+l}; requires operations up to arity N + 1 to reach level N.
Bimodule diagonal_bimodule(const AInftyAlgebra& A, int N);

// Linear dual with module basis e^i of degree -deg(e_i) - alpha; structure
//   b*_{k,l}(x, v*, y)(w) = (-1)^eps v*( b_{l,k}(y, w, x) ),
//   eps = 1 + |v*|' + (sum_left |x|') (|v*|' + sum |y|' + |w|').
struct DualPlacement {
  int alpha = 0;
};
Bimodule dual_bimodule(const Bimodule& M, DualPlacement pl);

// Degree-0 map of bimodules over the same algebra; component degree rule:
// tgt.msdeg(out) = sum sdeg(left) + src.msdeg(v) + sum sdeg(right).
struct BimoduleMap {
  Bimodule src, tgt;
  int max_level = 0;
  std::map<std::pair<int, int>, SparseTensor> comps;

  void set_entry(int k, int l, const std::vector<int>& left, int v,
                 const std::vector<int>& right, int out, const Scalar& c);
  const SparseVec& apply(int k, int l, std::span<const int> left, int v,
                         std::span<const int> right) const;
  const SparseVec& apply_word(std::span<const int> left, int v,
                              std::span<const int> right) const {
    return apply(static_cast<int>(left.size()), static_cast<int>(right.size()),
                 left, v, right);
  }
};

// sum_insertions psi(ins(word)) = sum_{i,j} b^tgt_{i,l-j}(a_1..a_i,
// psi_{k-i,j}(a_{i+1}..a_k, v, b_1..b_j), b_{j+1}..b_l) for k+l <= N.
RelationReport check_bimodule_map(const BimoduleMap& psi, int N);

BimoduleMap identity_bimodule_map(const Bimodule& M);

// g after f (componentwise block sum, sign-free).
BimoduleMap compose_bimodule_maps(const BimoduleMap& g, const BimoduleMap& f);

// psi: C -> D induces psi*: D* -> C*,
//   psi*_{k,l}(x, v*, y)(w) = (-1)^K v*( psi_{l,k}(y, w, x) ),
//   K = (sum |x|') (|v*|' + sum |y|' + |w|').
BimoduleMap dual_bimodule_map(const BimoduleMap& psi, DualPlacement pl);

// Restriction of a bimodule over the morphism's target to one over its source:
// actions feed f-blocks into the original actions (sign-free).
Bimodule restrict_bimodule_along(const AInftyMorphism& f, const Bimodule& M,
                                 int N);
// Same on maps between bimodules over the target algebra.
BimoduleMap restrict_bimodule_map_along(const AInftyMorphism& f,
                                        const BimoduleMap& chi, int N);

// Diagonal of the target restricted along f.
Bimodule induced_bimodule(const AInftyMorphism& f, int N);
// f~: diagonal(source) -> induced_bimodule(f), components f_{k+1+l}; needs
// morphism components up to arity N + 1.
BimoduleMap induced_morphism_map(const AInftyMorphism& f, int N);

} // namespace ainf
