#include "ainf/construct.hpp"

#include "ainf/error.hpp"

#include <algorithm>
#include <set>

namespace ainf {

namespace {

std::string word_str(const GradedBasis& b, std::span<const int> w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += b.name(w[i]);
  }
  return s + ")";
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

Scalar dual_coeff(const SparseVec& v, int j) {
  auto it = v.find(j);
  return it == v.end() ? Scalar(0) : it->second;
}

// Chain-level matrix G(v, w) = phi_{0,0}(v)(w), validated as a Pairing on the
// source module. Throws Error(Domain) when degenerate.
Pairing chain_pairing(const BimoduleMap& phi) {
  Pairing g;
  g.alpha = dual_placement_degree(phi);
  int n = phi.src.module.dim();
  g.mat = Matrix(n, n);
  for (int v = 0; v < n; ++v)
    for (const auto& [w, c] : phi.apply(0, 0, {}, v, {})) g.mat.at(v, w) = c;
  g.validate(phi.src.module);
  if (!g.nondegenerate())
    throw Error(ErrorKind::Domain,
                "chain-level pairing is degenerate; restrict to a minimal "
                "model first");
  return g;
}

} // namespace

BimoduleMap module_pairing_to_bimodule_map(const Bimodule& M, const Pairing& g,
                                           int N) {
  g.validate(M.module);
  BimoduleMap psi;
  psi.src = M;
  psi.tgt = dual_bimodule(M, DualPlacement{g.alpha});
  psi.max_level = N;
  for (int v = 0; v < M.module.dim(); ++v)
    for (int w = 0; w < M.module.dim(); ++w)
      if (!g.mat.at(v, w).is_zero())
        psi.set_entry(0, 0, {}, v, {}, w, g.mat.at(v, w));
  return psi;
}

BimoduleMap pullback_structure(const AInftyMorphism& f, const BimoduleMap& phi,
                               int N) {
  DualPlacement pl{dual_placement_degree(phi)};
  BimoduleMap ft = induced_morphism_map(f, N);
  BimoduleMap half = compose_bimodule_maps(restrict_bimodule_map_along(f, phi, N), ft);
  return compose_bimodule_maps(dual_bimodule_map(ft, pl), half);
}

CyclicModel construct_cyclic_model(const AInftyAlgebra& A, const BimoduleMap& phi,
                                   int N) {
  const GradedBasis& basis = A.basis;
  int dim = basis.dim();
  require(phi.src.module.dim() == dim,
          "structure does not live on the algebra's basis");
  for (int i = 0; i < dim; ++i)
    require(phi.src.module.deg(i) == basis.deg(i),
            "structure does not live on the algebra's basis");

  CyclicModel out;
  out.pairing = chain_pairing(phi);
  const Pairing& g = out.pairing;
  Matrix gt_inv = g.mat.transpose().inverse();

  std::map<int, SparseTensor> comps;
  comps.emplace(1, SparseTensor(1));
  for (int i = 0; i < dim; ++i) comps.at(1).add({i}, i, Scalar(1));

  auto block = [&](int arity, std::span<const int> w) -> SparseVec {
    auto it = comps.find(arity);
    if (it == comps.end()) return {};
    return it->second.apply(w);
  };

  for (int k = 2; k <= N + 1; ++k) {
    // Unknowns X(t_1..t_{k+1}) = <f_k(t_1..t_k), t_{k+1}>, solved per rotation
    // orbit. R(t) collects the structure value and the lower-arity blocks.
    auto rhs = [&](const std::vector<int>& t) {
      Scalar val = dual_coeff(
          phi.apply(0, k - 1, {}, t[0],
                    std::span<const int>(t.data() + 1, static_cast<size_t>(k - 1))),
          t[k]);
      for (int i = 2; i <= k - 1; ++i) {
        SparseVec first =
            block(i, std::span<const int>(t.data(), static_cast<size_t>(i)));
        SparseVec second = block(
            k + 1 - i, std::span<const int>(t.data() + i, static_cast<size_t>(k + 1 - i)));
        val -= g.eval(first, second);
      }
      return val;
    };
    auto sigma = [&](const std::vector<int>& t) {
      long long rest = 0;
      for (size_t u = 1; u < t.size(); ++u) rest += basis.sdeg(t[u]);
      return sign_pow(basis.sdeg(t[0]) * rest);
    };

    std::map<std::vector<int>, Scalar> X;
    std::set<std::vector<int>> seen;
    for_each_word(dim, k + 1, [&](const std::vector<int>& w) {
      if (seen.count(w)) return;
      long long total = 0;
      for (int u : w) total += basis.sdeg(u);
      if (total != -2 - g.alpha) return;
      std::vector<std::vector<int>> orbit{w};
      for (;;) {
        std::vector<int> r = orbit.back();
        std::rotate(r.begin(), r.begin() + 1, r.end());
        if (r == w) break;
        orbit.push_back(std::move(r));
      }
      for (const auto& o : orbit) seen.insert(o);
      ++out.orbit_count;
      int p = static_cast<int>(orbit.size());
      if (p == 1) {
        Scalar r0 = rhs(w);
        if (sigma(w) == 1) {
          if (!r0.is_zero())
            throw Error(ErrorKind::Domain, "hypotheses violated at " +
                                               word_str(basis, w) + ", arity " +
                                               std::to_string(k));
          X[w] = Scalar(0);
        } else {
          X[w] = r0 / Scalar(2);
        }
        return;
      }
      std::vector<Scalar> R(p);
      std::vector<int> S(p);
      for (int j = 0; j < p; ++j) {
        R[j] = rhs(orbit[j]);
        S[j] = sigma(orbit[j]);
      }
      Scalar c(0);
      int q = 1;
      for (int j = 0; j < p; ++j) {
        c += Scalar(q) * R[j];
        q *= S[j];
      }
      Scalar x0;
      if (q == 1) {
        if (!c.is_zero())
          throw Error(ErrorKind::Domain,
                      "closedness violated at " + word_str(basis, w) +
                          ", arity " + std::to_string(k));
        x0 = Scalar(0);
        ++out.pinned;
      } else {
        x0 = c / Scalar(2);
      }
      X[orbit[0]] = x0;
      for (int j = 0; j + 1 < p; ++j)
        X[orbit[j + 1]] = Scalar(S[j]) * (X[orbit[j]] - R[j]);
    });

    SparseTensor fk(k);
    for_each_word(dim, k, [&](const std::vector<int>& t) {
      SparseVec y;
      std::vector<int> full = t;
      full.push_back(0);
      for (int j = 0; j < dim; ++j) {
        full[k] = j;
        auto it = X.find(full);
        if (it != X.end() && !it->second.is_zero()) y[j] = it->second;
      }
      if (y.empty()) return;
      for (const auto& [i, c] : gt_inv.mul_sparse(y))
        if (!c.is_zero()) fk.add(t, i, c);
    });
    if (!fk.empty()) comps.emplace(k, std::move(fk));
  }

  out.f = push_forward_target(A, comps, basis, N + 1);
  out.B = out.f.target;

  auto telescoping = check_closedness(phi, 1);
  if (!telescoping.pass())
    throw Error(ErrorKind::Domain,
                "closedness violated: " + telescoping.failures.front().where);
  return out;
}

CyclicBimoduleModel construct_cyclic_bimodule(const Bimodule& C,
                                              const BimoduleMap& phi, int N) {
  const GradedBasis& ab = C.alg.basis;
  const GradedBasis& mb = C.module;
  require(phi.src.module.dim() == mb.dim(),
          "structure does not live on the bimodule's underlying module");
  for (int i = 0; i < mb.dim(); ++i)
    require(phi.src.module.deg(i) == mb.deg(i),
            "structure does not live on the bimodule's underlying module");

  CyclicBimoduleModel out;
  out.pairing = chain_pairing(phi);
  const Pairing& g = out.pairing;
  Matrix gt_inv = g.mat.transpose().inverse();
  int da = ab.dim(), dm = mb.dim();

  BimoduleMap gm;
  gm.src = C;
  gm.max_level = N;
  gm.comps.emplace(std::make_pair(0, 0), SparseTensor(1));
  for (int v = 0; v < dm; ++v)
    gm.comps.at({0, 0}).add({v}, v, Scalar(1));

  Bimodule D;
  D.alg = C.alg;
  D.module = C.module;
  D.max_level = N;
  if (auto it = C.acts.find({0, 0}); it != C.acts.end() && !it->second.empty())
    D.acts.emplace(std::make_pair(0, 0), it->second);

  // A solved word is (k, a-letters, v, b-letters, w); its partner under the
  // flip is (l, b-letters, w, a-letters, v).
  struct Key {
    int k;
    std::vector<int> word; // a..a v b..b w
    bool operator<(const Key& o) const {
      return std::tie(k, word) < std::tie(o.k, o.word);
    }
  };

  auto gblock = [&](int k, int l, std::span<const int> a, int v,
                    std::span<const int> b) -> SparseVec {
    auto it = gm.comps.find({k, l});
    if (it == gm.comps.end()) return {};
    std::vector<int> w(a.begin(), a.end());
    w.push_back(v);
    w.insert(w.end(), b.begin(), b.end());
    return it->second.apply(w);
  };

  // R'(D) = phi_{k,l}(a, v, b)(w) minus the solved lower blocks of the
  // reassembly sum.
  auto rhs = [&](int k, int l, std::span<const int> a, int v,
                 std::span<const int> b, int w) {
    Scalar val = dual_coeff(phi.apply(k, l, a, v, b), w);
    long long sa = 0, sb = 0;
    for (int u : a) sa += ab.sdeg(u);
    for (int u : b) sb += ab.sdeg(u);
    long long others_all = sa + sb + mb.sdeg(v) + mb.sdeg(w);
    long long pre = 0;
    for (int i = 0; i <= k; ++i) {
      if (i > 0) pre += ab.sdeg(a[i - 1]);
      for (int j = 0; j <= l; ++j) {
        if ((i == 0 && j == l) || (i == k && j == 0)) continue;
        SparseVec first = gblock(k - i, j, a.subspan(i), v, b.subspan(0, j));
        if (first.empty()) continue;
        SparseVec second = gblock(l - j, i, b.subspan(j), w, a.subspan(0, i));
        if (second.empty()) continue;
        val -=
            Scalar(sign_pow(pre * (others_all - pre))) * g.eval(first, second);
      }
    }
    return val;
  };

  for (int n = 1; n <= N; ++n) {
    std::map<Key, Scalar> Y;
    for (int k = 0; k <= n; ++k) {
      int l = n - k;
      for_each_word(da, k + l, [&](const std::vector<int>& letters) {
        for (int v = 0; v < dm; ++v)
          for (int w = 0; w < dm; ++w) {
            std::vector<int> word(letters.begin(), letters.begin() + k);
            word.push_back(v);
            word.insert(word.end(), letters.begin() + k, letters.end());
            word.push_back(w);
            long long total = 0;
            for (int u : letters) total += ab.sdeg(u);
            if (total + mb.deg(v) + mb.deg(w) + g.alpha != 0) continue;
            Key me{k, word};
            if (Y.count(me)) continue;

            std::vector<int> pword(word.begin() + k + 1, word.end());
            pword.insert(pword.end(), word.begin(), word.begin() + k + 1);
            Key partner{l, pword};
            std::span<const int> a(word.data(), static_cast<size_t>(k));
            int vv = word[k];
            std::span<const int> b(word.data() + k + 1, static_cast<size_t>(l));
            int ww = word[k + 1 + l];
            long long sa = 0, sb = 0;
            for (int u : a) sa += ab.sdeg(u);
            for (int u : b) sb += ab.sdeg(u);
            long long k2 = sa * (mb.sdeg(vv) + sb + mb.sdeg(ww));
            long long gexp = sb + mb.sdeg(ww) + sa;
            int s = sign_pow(k2 + mb.sdeg(vv) * gexp);
            ++out.orbit_count;
            if (partner.k == me.k && partner.word == me.word) {
              Scalar r0 = rhs(k, l, a, vv, b, ww);
              if (s == 1) {
                if (!r0.is_zero())
                  throw Error(ErrorKind::Domain,
                              "hypotheses violated at level " +
                                  std::to_string(n) + " word " +
                                  word_str(ab, letters));
                Y[me] = Scalar(0);
              } else {
                Y[me] = r0 / Scalar(2);
              }
              continue;
            }
            // Monodromy of the two-step system is +1: one consistency
            // condition, one pinned unknown.
            std::span<const int> pa(pword.data(), static_cast<size_t>(l));
            int pv = pword[l];
            std::span<const int> pb(pword.data() + l + 1,
                                    static_cast<size_t>(k));
            int pw = pword.back();
            Scalar rme = rhs(k, l, a, vv, b, ww);
            Scalar rpartner = rhs(l, k, pa, pv, pb, pw);
            if (!(rme + Scalar(s) * rpartner).is_zero())
              throw Error(ErrorKind::Domain,
                          "closedness violated at level " + std::to_string(n) +
                              " word " + word_str(ab, letters));
            if (me < partner) {
              Y[me] = Scalar(0);
              Y[partner] = rpartner;
            } else {
              Y[partner] = Scalar(0);
              Y[me] = rme;
            }
            ++out.pinned;
          }
      });
    }

    // Recover g_{k,l} from Y via the chain-level matrix, then the level-n
    // actions of D from the map relation of gm.
    for (int k = 0; k <= n; ++k) {
      int l = n - k;
      SparseTensor gkl(k + 1 + l);
      for_each_word(da, k + l, [&](const std::vector<int>& letters) {
        for (int v = 0; v < dm; ++v) {
          std::vector<int> in(letters.begin(), letters.begin() + k);
          in.push_back(v);
          in.insert(in.end(), letters.begin() + k, letters.end());
          SparseVec y;
          std::vector<int> full = in;
          full.push_back(0);
          for (int w = 0; w < dm; ++w) {
            full.back() = w;
            auto it = Y.find(Key{k, full});
            if (it != Y.end() && !it->second.is_zero()) y[w] = it->second;
          }
          if (y.empty()) continue;
          for (const auto& [m, c] : gt_inv.mul_sparse(y))
            if (!c.is_zero()) gkl.add(in, m, c);
        }
      });
      if (!gkl.empty()) gm.comps.emplace(std::make_pair(k, l), std::move(gkl));
    }

    for (int k = 0; k <= n; ++k) {
      int l = n - k;
      for_each_word(da, k + l, [&](const std::vector<int>& letters) {
        for (int v = 0; v < dm; ++v) {
          ModWord word{{letters.begin(), letters.begin() + k},
                       v,
                       {letters.begin() + k, letters.end()}};
          SparseVec val;
          for (const auto& [ins, c] : bar_insertions(C, word))
            add_scaled(val, gm.apply_word(ins.left, ins.v, ins.right), c);
          for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= l; ++j) {
              if (i == k && j == 0) continue;
              SparseVec mid = gm.apply(
                  k - i, j,
                  std::span<const int>(word.left.data() + i,
                                       static_cast<size_t>(k - i)),
                  v, std::span<const int>(word.right.data(), static_cast<size_t>(j)));
              for (const auto& [m, c] : mid)
                add_scaled(val,
                           D.apply(i, l - j,
                                   std::span<const int>(word.left.data(),
                                                        static_cast<size_t>(i)),
                                   m,
                                   std::span<const int>(
                                       word.right.data() + j,
                                       static_cast<size_t>(l - j))),
                           -c);
            }
          for (const auto& [m, c] : val)
            if (!c.is_zero())
              D.set_entry(k, l, word.left, v, word.right, m, c);
        }
      });
    }
  }

  gm.tgt = D;
  out.D = D;
  out.g = std::move(gm);
  return out;
}

MinimalReduction restrict_to_minimal_model(const AInftyAlgebra& A,
                                           const BimoduleMap& phi, int N) {
  Transfer tr = minimal_model(A, N + 1);
  MinimalReduction out;
  out.phi = pullback_structure(tr.incl, phi, N);
  out.minimal = std::move(tr.minimal);
  out.incl = std::move(tr.incl);
  return out;
}

} // namespace ainf
