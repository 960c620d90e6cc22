#include "ainf/cyclic.hpp"

#include "ainf/error.hpp"

namespace ainf {

namespace {

std::vector<std::string> basis_names(const GradedBasis& b) {
  std::vector<std::string> out;
  for (const auto& e : b.elements) out.push_back(e.name);
  return out;
}

Scalar dual_coeff(const SparseVec& v, int j) {
  auto it = v.find(j);
  return it == v.end() ? Scalar(0) : it->second;
}

} // namespace

Scalar Pairing::eval(const SparseVec& a, const SparseVec& b) const {
  Scalar out(0);
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out += x * y * mat.at(i, j);
  return out;
}

Scalar Pairing::eval(const SparseVec& a, int j) const {
  Scalar out(0);
  for (const auto& [i, x] : a) out += x * mat.at(i, j);
  return out;
}

void Pairing::validate(const GradedBasis& basis) const {
  const int n = basis.dim();
  if (mat.rows != n || mat.cols != n)
    fail(ErrorKind::Precondition, "pairing matrix shape does not match the basis");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Scalar& v = mat.at(i, j);
      if (v.is_zero()) continue;
      if (basis.deg(i) + basis.deg(j) + alpha != 0)
        fail(ErrorKind::Precondition,
             "pairing <" + basis.name(i) + "," + basis.name(j) +
                 "> violates the degree constraint");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar want = -Scalar(sign_pow(static_cast<long long>(basis.sdeg(i)) *
                                     basis.sdeg(j))) *
                    mat.at(j, i);
      if (mat.at(i, j) != want)
        fail(ErrorKind::Precondition,
             "pairing is not graded skew-symmetric at <" + basis.name(i) + "," +
                 basis.name(j) + ">");
    }
}

bool Pairing::nondegenerate() const { return mat.rank() == mat.rows; }

RelationReport check_cyclic(const AInftyAlgebra& A, const Pairing& g, int N) {
  g.validate(A.basis);
  if (!g.nondegenerate())
    fail(ErrorKind::Precondition, "pairing matrix is singular");
  RelationReport rep;
  for (int k = 1; k <= N; ++k) {
    for_each_word(A.dim(), k + 1, [&](const std::vector<int>& w) {
      ++rep.checked;
      std::span<const int> s(w);
      Scalar lhs = g.eval(A.apply(k, s.subspan(0, k)), w[k]);
      long long rest = 0;
      for (int i = 1; i <= k; ++i) rest += A.sdeg(w[i]);
      int sgn = sign_pow(static_cast<long long>(A.sdeg(w[0])) * rest);
      Scalar rhs = Scalar(sgn) * g.eval(A.apply(k, s.subspan(1)), w[0]);
      if (lhs == rhs) return;
      Failure f;
      f.where = "cyclic k=" + std::to_string(k);
      for (int i : w) f.tuple.push_back(A.basis.name(i));
      f.defect = format_scalar(lhs - rhs);
      rep.failures.push_back(std::move(f));
    });
  }
  return rep;
}

BimoduleMap pairing_to_bimodule_map(const AInftyAlgebra& A, const Pairing& g,
                                    int N) {
  g.validate(A.basis);
  BimoduleMap phi;
  phi.src = diagonal_bimodule(A, N);
  phi.tgt = dual_bimodule(phi.src, DualPlacement{g.alpha});
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      if (!g.mat.at(i, j).is_zero())
        phi.set_entry(0, 0, {}, i, {}, j, g.mat.at(i, j));
  phi.max_level = N;
  return phi;
}

bool is_pairing_type(const BimoduleMap& phi, Pairing* out) {
  const int n = phi.src.module.dim();
  if (phi.tgt.module.dim() != n || n == 0) return false;
  long long alpha = -phi.src.module.deg(0) - phi.tgt.module.deg(0);
  for (int i = 0; i < n; ++i)
    if (phi.tgt.module.deg(i) != -phi.src.module.deg(i) - alpha) return false;
  for (const auto& [kl, T] : phi.comps)
    if (kl != std::make_pair(0, 0) && !T.empty()) return false;
  if (out) {
    out->alpha = static_cast<int>(alpha);
    out->mat = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
      const SparseVec& row = phi.apply(0, 0, {}, i, {});
      for (const auto& [j, c] : row) out->mat.at(i, j) = c;
    }
  }
  return true;
}

int dual_placement_degree(const BimoduleMap& phi) {
  const GradedBasis& s = phi.src.module;
  const GradedBasis& t = phi.tgt.module;
  if (s.dim() != t.dim() || s.dim() == 0)
    throw Error(ErrorKind::Precondition,
                "structure must map a module to a dual of the same dimension");
  int alpha = -s.deg(0) - t.deg(0);
  for (int i = 1; i < s.dim(); ++i)
    if (t.deg(i) != -s.deg(i) - alpha)
      throw Error(ErrorKind::Precondition,
                  "target degrees are not a consistent dual placement");
  return alpha;
}

RelationReport check_skew_symmetry(const BimoduleMap& phi, int N) {
  if (phi.src.module.dim() != phi.tgt.module.dim())
    fail(ErrorKind::Precondition,
         "skew symmetry needs a map from a bimodule to its dual");
  RelationReport rep;
  const int ad = phi.src.alg.dim(), md = phi.src.module.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(ad, k, [&](const std::vector<int>& a) {
        long long sa = 0;
        for (int i : a) sa += phi.src.alg.sdeg(i);
        for_each_word(ad, l, [&](const std::vector<int>& b) {
          long long sb = 0;
          for (int i : b) sb += phi.src.alg.sdeg(i);
          for (int v = 0; v < md; ++v)
            for (int w = 0; w < md; ++w) {
              ++rep.checked;
              Scalar lhs = dual_coeff(phi.apply(k, l, a, v, b), w);
              long long e = (sa + phi.src.msdeg(v)) * (sb + phi.src.msdeg(w));
              Scalar rhs = -Scalar(sign_pow(e)) *
                           dual_coeff(phi.apply(l, k, b, w, a), v);
              if (lhs == rhs) continue;
              Failure f;
              f.where = "skew (k,l)=(" + std::to_string(k) + "," +
                        std::to_string(l) + ")";
              for (int i : a) f.tuple.push_back(phi.src.alg.basis.name(i));
              f.tuple.push_back("[" + phi.src.module.name(v) + "]");
              for (int i : b) f.tuple.push_back(phi.src.alg.basis.name(i));
              f.tuple.push_back("@" + phi.src.module.name(w));
              f.defect = format_scalar(lhs - rhs);
              rep.failures.push_back(std::move(f));
            }
        });
      });
    }
  }
  return rep;
}

RelationReport check_closedness(const BimoduleMap& phi, int N) {
  const GradedBasis& ab = phi.src.alg.basis;
  if (phi.src.module.elements.size() != ab.elements.size())
    fail(ErrorKind::Precondition, "closedness needs a diagonal-type source");
  for (int i = 0; i < ab.dim(); ++i)
    if (phi.src.module.deg(i) != ab.deg(i))
      fail(ErrorKind::Precondition, "closedness needs a diagonal-type source");

  RelationReport rep;
  const int dim = ab.dim();
  for (int n = 2; n <= N + 2; ++n) {
    for_each_word(dim, n, [&](const std::vector<int>& fam) {
      ++rep.checked;
      std::vector<long long> sd(n);
      long long total = 0;
      for (int u = 0; u < n; ++u) {
        sd[u] = ab.sdeg(fam[u]);
        total += sd[u];
      }
      // bracket[s][t] = [a_s, a_t] relative to the family
      std::vector<std::vector<Scalar>> br(n, std::vector<Scalar>(n, Scalar(0)));
      for (int t = 0; t < n; ++t) {
        long long before = 0;
        for (int u = 0; u <= t; ++u) before += sd[u];
        int rho = sign_pow(before * (total - before));
        for (int s = 0; s < n; ++s) {
          if (s == t) continue;
          const int kk = ((s - t - 1) % n + n) % n;
          const int ll = ((t - s - 1) % n + n) % n;
          std::vector<int> left(kk), right(ll);
          for (int u = 0; u < kk; ++u) left[u] = fam[(t + 1 + u) % n];
          for (int u = 0; u < ll; ++u) right[u] = fam[(s + 1 + u) % n];
          br[s][t] = Scalar(rho) *
                     dual_coeff(phi.apply(kk, ll, left, fam[s], right), fam[t]);
        }
      }
      auto report = [&](const std::string& where, const Scalar& defect) {
        Failure f;
        f.where = where;
        for (int i : fam) f.tuple.push_back(ab.name(i));
        f.defect = format_scalar(defect);
        rep.failures.push_back(std::move(f));
      };
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k) {
            Scalar d = br[i][j] + br[j][k] + br[k][i];
            if (!d.is_zero())
              report("closedness n=" + std::to_string(n) + " triple (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         "," + std::to_string(k + 1) + ")",
                     d);
          }
      Scalar tel = br[0][n - 1];
      for (int t = 0; t + 1 < n; ++t) tel += br[t + 1][t];
      if (!tel.is_zero()) report("telescoping n=" + std::to_string(n), tel);
    });
  }
  return rep;
}

NondegReport check_homological_nondegeneracy(const BimoduleMap& phi) {
  if (!check_bimodule_map(phi, 1).pass())
    fail(ErrorKind::Precondition,
         "the structure is not a chain map of bimodules up to level 1");
  if (phi.src.module.dim() != phi.tgt.module.dim())
    fail(ErrorKind::Precondition, "module and dual dimensions differ");
  const int dim = phi.src.module.dim();
  SparseTensor d(1);
  for (int j = 0; j < dim; ++j)
    for (const auto& [i, c] : phi.src.apply(0, 0, {}, j, {})) d.add({j}, i, c);
  HodgeData hodge = chain_homology(phi.src.module, d);

  NondegReport out;
  out.hdim = hodge.homology.dim();
  out.notes.push_back("homology dimension " + std::to_string(out.hdim));
  Matrix G(out.hdim, out.hdim);
  for (int p = 0; p < out.hdim; ++p) {
    // phi_{0,0}(rep_p) as a functional, evaluated on rep_q
    SparseVec fp;
    for (const auto& [i, c] : hodge.reps[p])
      add_scaled(fp, phi.apply(0, 0, {}, i, {}), c);
    for (int q = 0; q < out.hdim; ++q)
      for (const auto& [j, c] : hodge.reps[q]) G.at(p, q) += dual_coeff(fp, j) * c;
  }
  int r = G.rank();
  out.notes.push_back("homology pairing rank " + std::to_string(r));
  if (r == out.hdim) {
    out.pass = true;
    return out;
  }
  auto ker = nullspace(G.transpose());
  if (!ker.empty()) {
    SparseVec wit;
    for (int p = 0; p < out.hdim; ++p)
      if (!ker[0][p].is_zero()) wit[p] = ker[0][p];
    out.witness = render(wit, basis_names(hodge.homology));
  }
  return out;
}

RelationReport check_cyclic_morphism(const AInftyMorphism& f, const Pairing& g_src,
                                     const Pairing& g_tgt, int N) {
  g_src.validate(f.source.basis);
  g_tgt.validate(f.target.basis);
  RelationReport rep;
  for (int k = 2; k <= N + 1; ++k) {
    for_each_word(f.source.dim(), k, [&](const std::vector<int>& w) {
      ++rep.checked;
      std::span<const int> s(w);
      Scalar val(0);
      for (int i = 1; i < k; ++i)
        val += g_tgt.eval(f.apply(i, s.subspan(0, i)), f.apply(k - i, s.subspan(i)));
      if (k == 2) val -= g_src.mat.at(w[0], w[1]);
      if (val.is_zero()) return;
      Failure fl;
      fl.where = "cyclic morphism k=" + std::to_string(k);
      for (int i : w) fl.tuple.push_back(f.source.basis.name(i));
      fl.defect = format_scalar(val);
      rep.failures.push_back(std::move(fl));
    });
  }
  return rep;
}

BimoduleMap pullback_inner_product(const AInftyMorphism& f, const Pairing& g_tgt,
                                   int N) {
  DualPlacement pl{g_tgt.alpha};
  auto ft = induced_morphism_map(f, N);
  auto psi = pairing_to_bimodule_map(f.target, g_tgt, N);
  auto mid = restrict_bimodule_map_along(f, psi, N);
  auto half = compose_bimodule_maps(mid, ft);
  auto dual_ft = dual_bimodule_map(ft, pl);
  return compose_bimodule_maps(dual_ft, half);
}

BimoduleMap pullback_inner_product_direct(const AInftyMorphism& f,
                                          const Pairing& g_tgt, int N) {
  g_tgt.validate(f.target.basis);
  BimoduleMap phi;
  phi.src = diagonal_bimodule(f.source, N);
  phi.tgt = dual_bimodule(phi.src, DualPlacement{g_tgt.alpha});
  phi.max_level = N;
  const int dim = f.source.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(dim, k, [&](const std::vector<int>& a) {
        for_each_word(dim, l, [&](const std::vector<int>& b) {
          for (int v = 0; v < dim; ++v)
            for (int w = 0; w < dim; ++w) {
              Scalar val(0);
              long long prefix = 0;
              for (int i = 0; i <= k; ++i) {
                if (i > 0) prefix += f.source.sdeg(a[i - 1]);
                long long others = f.source.sdeg(v) + f.source.sdeg(w) - prefix;
                for (int u : a) others += f.source.sdeg(u);
                for (int u : b) others += f.source.sdeg(u);
                int sgn = sign_pow(prefix * others);
                for (int j = 0; j <= l; ++j) {
                  std::vector<int> first(a.begin() + i, a.end());
                  first.push_back(v);
                  first.insert(first.end(), b.begin(), b.begin() + j);
                  std::vector<int> second(b.begin() + j, b.end());
                  second.push_back(w);
                  second.insert(second.end(), a.begin(), a.begin() + i);
                  val += Scalar(sgn) *
                         g_tgt.eval(
                             f.apply(static_cast<int>(first.size()), first),
                             f.apply(static_cast<int>(second.size()), second));
                }
              }
              if (!val.is_zero()) phi.set_entry(k, l, a, v, b, w, val);
            }
        });
      });
    }
  }
  return phi;
}

RelationReport check_pullback_equals(const AInftyMorphism& f, const Pairing& g_tgt,
                                     const BimoduleMap& phi, int N) {
  if (phi.src.module.dim() != f.source.dim())
    fail(ErrorKind::Precondition,
         "the structure does not live on the morphism's source");
  BimoduleMap pb = pullback_inner_product_direct(f, g_tgt, N);
  RelationReport rep;
  const int dim = f.source.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(dim, k, [&](const std::vector<int>& a) {
        for_each_word(dim, l, [&](const std::vector<int>& b) {
          for (int v = 0; v < dim; ++v)
            for (int w = 0; w < dim; ++w) {
              ++rep.checked;
              Scalar lhs = dual_coeff(pb.apply(k, l, a, v, b), w);
              Scalar rhs = dual_coeff(phi.apply(k, l, a, v, b), w);
              if (lhs == rhs) continue;
              Failure fl;
              fl.where = "pullback (k,l)=(" + std::to_string(k) + "," +
                         std::to_string(l) + ")";
              for (int i : a) fl.tuple.push_back(f.source.basis.name(i));
              fl.tuple.push_back("[" + f.source.basis.name(v) + "]");
              for (int i : b) fl.tuple.push_back(f.source.basis.name(i));
              fl.tuple.push_back("@" + f.source.basis.name(w));
              fl.defect = format_scalar(lhs - rhs);
              rep.failures.push_back(std::move(fl));
            }
        });
      });
    }
  }
  return rep;
}

RelationReport check_module_cyclic(const Bimodule& M, const Pairing& g, int N) {
  g.validate(M.module);
  RelationReport rep;
  const int ad = M.alg.dim(), md = M.module.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(ad, k, [&](const std::vector<int>& a) {
        long long sa = 0;
        for (int i : a) sa += M.alg.sdeg(i);
        for_each_word(ad, l, [&](const std::vector<int>& b) {
          long long sb = 0;
          for (int i : b) sb += M.alg.sdeg(i);
          for (int v = 0; v < md; ++v)
            for (int w = 0; w < md; ++w) {
              ++rep.checked;
              Scalar lhs = g.eval(M.apply(k, l, a, v, b), w);
              long long e = M.msdeg(v) + sa * (M.msdeg(v) + sb + M.msdeg(w));
              Scalar rhs(0);
              for (const auto& [o, c] : M.apply(l, k, b, w, a))
                rhs += c * g.mat.at(v, o);
              rhs *= -Scalar(sign_pow(e));
              if (lhs == rhs) continue;
              Failure f;
              f.where = "module cyclic (k,l)=(" + std::to_string(k) + "," +
                        std::to_string(l) + ")";
              for (int i : a) f.tuple.push_back(M.alg.basis.name(i));
              f.tuple.push_back("[" + M.module.name(v) + "]");
              for (int i : b) f.tuple.push_back(M.alg.basis.name(i));
              f.tuple.push_back("@" + M.module.name(w));
              f.defect = format_scalar(lhs - rhs);
              rep.failures.push_back(std::move(f));
            }
        });
      });
    }
  }
  return rep;
}

} // namespace ainf
