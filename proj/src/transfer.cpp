#include "ainf/transfer.hpp"

#include "ainf/error.hpp"

#include <functional>

namespace ainf {

namespace {

// Formal sums of words in the algebra basis (mixed lengths).
using WordSum = std::map<std::vector<int>, Scalar>;

void add_word(WordSum& into, const std::vector<int>& w, const Scalar& c) {
  if (c.is_zero()) return;
  Scalar& slot = into[w];
  slot += c;
  if (slot.is_zero()) into.erase(w);
}

// Coderivation of the arity >= 2 operations: replace one inner block, prefix
// Koszul sign from the shifted degrees before it.
WordSum delta(const AInftyAlgebra& A, const WordSum& X) {
  WordSum out;
  for (const auto& [w, c] : X) {
    const int n = static_cast<int>(w.size());
    for (int s = 2; s <= n; ++s) {
      long long prefix = 0;
      for (int i = 0; i + s <= n; ++i) {
        if (i > 0) prefix += A.sdeg(w[i - 1]);
        const SparseVec& img =
            A.apply(s, std::span<const int>(w).subspan(i, s));
        if (img.empty()) continue;
        Scalar base = c * sign_pow(prefix);
        for (const auto& [mid, ci] : img) {
          std::vector<int> nw;
          nw.reserve(n - s + 1);
          nw.insert(nw.end(), w.begin(), w.begin() + i);
          nw.push_back(mid);
          nw.insert(nw.end(), w.begin() + i + s, w.end());
          add_word(out, nw, base * ci);
        }
      }
    }
  }
  return out;
}

// Tensor-extended homotopy sum_j 1^j x h x (ip)^(rest), prefix Koszul signs.
WordSum homotopy_ext(const AInftyAlgebra& A, const HodgeData& hodge,
                     const WordSum& X) {
  WordSum out;
  for (const auto& [w, c] : X) {
    const int n = static_cast<int>(w.size());
    long long prefix = 0;
    for (int j = 0; j < n; ++j) { // h sits at slot j
      if (j > 0) prefix += A.sdeg(w[j - 1]);
      SparseVec hslot;
      hslot[w[j]] = 1;
      hslot = hodge.h_of(hslot);
      if (hslot.empty()) continue;
      // expand h(w_j) and ip(w_m) for m > j
      std::vector<SparseVec> tail; // images for slots j..n-1
      tail.push_back(std::move(hslot));
      bool dead = false;
      for (int m = j + 1; m < n; ++m) {
        SparseVec v;
        v[w[m]] = 1;
        v = hodge.i_of(hodge.p_of(v));
        if (v.empty()) {
          dead = true;
          break;
        }
        tail.push_back(std::move(v));
      }
      if (dead) continue;
      Scalar base = c * sign_pow(prefix);
      std::vector<int> nw(w.begin(), w.begin() + j);
      nw.resize(n);
      std::function<void(int, Scalar)> rec = [&](int slot, Scalar acc) {
        if (slot == n) {
          add_word(out, nw, acc);
          return;
        }
        for (const auto& [idx, cv] : tail[slot - j]) {
          nw[slot] = idx;
          rec(slot + 1, acc * cv);
        }
      };
      rec(j, base);
    }
  }
  return out;
}

// delta (1 + homotopy_ext delta)^{-1}, a finite alternating series (each delta
// application shortens words). The alternation reflects the homotopy convention
// dh + hd = 1 - ip: the perturbation series runs over the negated homotopy.
WordSum transferred_sum(const AInftyAlgebra& A, const HodgeData& hodge,
                        const WordSum& X) {
  WordSum total;
  WordSum Y = X;
  int sign = 1;
  while (!Y.empty()) {
    WordSum D = delta(A, Y);
    for (const auto& [w, c] : D) add_word(total, w, sign * c);
    Y = homotopy_ext(A, hodge, D);
    sign = -sign;
  }
  return total;
}

SparseVec primitive_part(const WordSum& X) {
  SparseVec out;
  for (const auto& [w, c] : X)
    if (w.size() == 1) {
      Scalar& slot = out[w[0]];
      slot += c;
      if (slot.is_zero()) out.erase(w[0]);
    }
  return out;
}

} // namespace

Transfer minimal_model(const AInftyAlgebra& A, int N) {
  Transfer out;
  SparseTensor d(1);
  if (auto it = A.ops.find(1); it != A.ops.end()) d = it->second;
  out.hodge = chain_homology(A.basis, d);
  const HodgeData& hd = out.hodge;
  out.minimal.basis = hd.homology;
  out.minimal.max_arity = N;

  out.incl.source = out.minimal;
  out.incl.target = A;
  out.proj.source = A;
  // proj target assigned after minimal ops are filled (below).

  const int hdim = hd.homology.dim();
  const int adim = A.dim();

  // incl components: f_1 = representative inclusion, f_n = h(primitive(...)).
  for (int k = 0; k < hdim; ++k)
    for (const auto& [i, c] : hd.reps[k]) out.incl.set_entry(1, {k}, i, c);

  for (int n = 2; n <= N; ++n) {
    for_each_word(hdim, n, [&](const std::vector<int>& w) {
      // I(word): expand representatives multilinearly
      WordSum X;
      std::vector<int> aw(n);
      std::function<void(int, Scalar)> rec = [&](int slot, Scalar acc) {
        if (slot == n) {
          add_word(X, aw, acc);
          return;
        }
        for (const auto& [idx, cv] : hd.reps[w[slot]]) {
          aw[slot] = idx;
          rec(slot + 1, acc * cv);
        }
      };
      rec(0, Scalar(1));
      WordSum S = transferred_sum(A, hd, X);
      SparseVec prim = primitive_part(S);
      if (prim.empty()) return;
      SparseVec mh = hd.p_of(prim);
      for (const auto& [o, c] : mh) out.minimal.set_entry(n, w, o, c);
      SparseVec fh = hd.h_of(prim); // correction rides the negated homotopy
      for (const auto& [o, c] : fh) out.incl.set_entry(n, w, o, -c);
    });
  }
  out.minimal.max_arity = std::max(out.minimal.max_arity, N);
  out.incl.source = out.minimal;
  out.incl.max_arity = std::max(out.incl.max_arity, N);

  // proj components: q_1 = p, q_n = p(primitive(transferred(homotopy_ext(word)))).
  out.proj.target = out.minimal;
  for (int j = 0; j < adim; ++j) {
    SparseVec v;
    v[j] = 1;
    for (const auto& [o, c] : hd.p_of(v)) out.proj.set_entry(1, {j}, o, c);
  }
  for (int n = 2; n <= N; ++n) {
    for_each_word(adim, n, [&](const std::vector<int>& w) {
      WordSum X;
      X[w] = 1;
      WordSum S = transferred_sum(A, hd, homotopy_ext(A, hd, X));
      SparseVec prim = primitive_part(S);
      if (prim.empty()) return;
      for (const auto& [o, c] : hd.p_of(prim)) out.proj.set_entry(n, w, o, -c);
    });
  }
  out.proj.max_arity = std::max(out.proj.max_arity, N);
  return out;
}

} // namespace ainf
