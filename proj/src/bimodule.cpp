#include "ainf/bimodule.hpp"

#include "ainf/error.hpp"

#include <functional>

namespace ainf {

namespace {

const SparseVec kEmpty;

std::vector<int> cat_word(std::span<const int> left, int v,
                          std::span<const int> right) {
  std::vector<int> w;
  w.reserve(left.size() + 1 + right.size());
  w.insert(w.end(), left.begin(), left.end());
  w.push_back(v);
  w.insert(w.end(), right.begin(), right.end());
  return w;
}

std::vector<std::string> word_names(const Bimodule& M, const ModWord& w) {
  std::vector<std::string> out;
  for (int i : w.left) out.push_back(M.alg.basis.name(i));
  out.push_back("[" + M.module.name(w.v) + "]");
  for (int i : w.right) out.push_back(M.alg.basis.name(i));
  return out;
}

std::vector<std::string> module_names(const GradedBasis& b) {
  std::vector<std::string> out;
  for (const auto& e : b.elements) out.push_back(e.name);
  return out;
}

} // namespace

void Bimodule::set_entry(int k, int l, const std::vector<int>& left, int v,
                         const std::vector<int>& right, int out, const Scalar& c) {
  if (static_cast<int>(left.size()) != k || static_cast<int>(right.size()) != l)
    fail(ErrorKind::Precondition, "action entry arity mismatch");
  long long want = 1 + msdeg(v);
  for (int i : left) want += alg.sdeg(i);
  for (int i : right) want += alg.sdeg(i);
  if (msdeg(out) != want)
    fail(ErrorKind::Precondition,
         "degree rule violated by action (" + std::to_string(k) + "," +
             std::to_string(l) + ") -> " + module.name(out));
  auto key = std::make_pair(k, l);
  auto it = acts.find(key);
  if (it == acts.end()) it = acts.emplace(key, SparseTensor(k + 1 + l)).first;
  it->second.add(cat_word(left, v, right), out, c);
  if (it->second.empty()) acts.erase(it);
  max_level = std::max(max_level, k + l);
}

const SparseVec& Bimodule::apply(int k, int l, std::span<const int> left, int v,
                                 std::span<const int> right) const {
  auto it = acts.find({k, l});
  if (it == acts.end()) return kEmpty;
  return it->second.apply(cat_word(left, v, right));
}

ModSum bar_insertions(const Bimodule& M, const ModWord& w) {
  ModSum out;
  const auto& A = M.alg;
  const int k = static_cast<int>(w.left.size());
  const int l = static_cast<int>(w.right.size());
  auto add = [&out](ModWord nw, const Scalar& c) {
    if (c.is_zero()) return;
    Scalar& slot = out[nw];
    slot += c;
    if (slot.is_zero()) out.erase(nw);
  };

  // inner algebra block inside the left letters
  for (int s = 1; s <= k; ++s) {
    long long prefix = 0;
    for (int i = 0; i + s <= k; ++i) {
      if (i > 0) prefix += A.sdeg(w.left[i - 1]);
      const SparseVec& img =
          A.apply(s, std::span<const int>(w.left).subspan(i, s));
      if (img.empty()) continue;
      int sgn = sign_pow(prefix);
      for (const auto& [mid, c] : img) {
        ModWord nw;
        nw.left.insert(nw.left.end(), w.left.begin(), w.left.begin() + i);
        nw.left.push_back(mid);
        nw.left.insert(nw.left.end(), w.left.begin() + i + s, w.left.end());
        nw.v = w.v;
        nw.right = w.right;
        add(std::move(nw), sgn * c);
      }
    }
  }

  // action block swallowing the module slot
  {
    long long prefix = 0;
    for (int i = 0; i <= k; ++i) {
      if (i > 0) prefix += A.sdeg(w.left[i - 1]);
      int sgn = sign_pow(prefix);
      for (int j = 0; j <= l; ++j) {
        const SparseVec& img =
            M.apply(k - i, j, std::span<const int>(w.left).subspan(i), w.v,
                    std::span<const int>(w.right).subspan(0, j));
        if (img.empty()) continue;
        for (const auto& [mid, c] : img) {
          ModWord nw;
          nw.left.assign(w.left.begin(), w.left.begin() + i);
          nw.v = mid;
          nw.right.assign(w.right.begin() + j, w.right.end());
          add(std::move(nw), sgn * c);
        }
      }
    }
  }

  // inner algebra block inside the right letters
  {
    long long base = M.msdeg(w.v);
    for (int i : w.left) base += A.sdeg(i);
    for (int s = 1; s <= l; ++s) {
      long long prefix = base;
      for (int i = 0; i + s <= l; ++i) {
        if (i > 0) prefix += A.sdeg(w.right[i - 1]);
        const SparseVec& img =
            A.apply(s, std::span<const int>(w.right).subspan(i, s));
        if (img.empty()) continue;
        int sgn = sign_pow(prefix);
        for (const auto& [mid, c] : img) {
          ModWord nw;
          nw.left = w.left;
          nw.v = w.v;
          nw.right.insert(nw.right.end(), w.right.begin(), w.right.begin() + i);
          nw.right.push_back(mid);
          nw.right.insert(nw.right.end(), w.right.begin() + i + s,
                          w.right.end());
          add(std::move(nw), sgn * c);
        }
      }
    }
  }
  return out;
}

namespace {

template <class Fn>
void for_each_mod_word(const Bimodule& M, int k, int l, Fn&& fn) {
  const int ad = M.alg.dim(), md = M.module.dim();
  for_each_word(ad, k, [&](const std::vector<int>& left) {
    for (int v = 0; v < md; ++v)
      for_each_word(ad, l, [&](const std::vector<int>& right) {
        fn(ModWord{left, v, right});
      });
  });
}

} // namespace

RelationReport check_bimodule(const Bimodule& M, int N) {
  RelationReport rep;
  auto names = module_names(M.module);
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_mod_word(M, k, l, [&](const ModWord& w) {
        ++rep.checked;
        SparseVec defect;
        for (const auto& [nw, c] : bar_insertions(M, w))
          add_scaled(defect, M.apply_word(nw.left, nw.v, nw.right), c);
        if (defect.empty()) return;
        Failure f;
        f.where = "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ")";
        f.tuple = word_names(M, w);
        f.defect = render(defect, names);
        rep.failures.push_back(std::move(f));
      });
    }
  }
  return rep;
}

Bimodule diagonal_bimodule(const AInftyAlgebra& A, int N) {
  Bimodule M;
  M.alg = A;
  M.module = A.basis;
  M.max_level = N;
  for (int n = 0; n <= N; ++n) {
    auto it = A.ops.find(n + 1);
    if (it == A.ops.end()) continue;
    for (int k = 0; k <= n; ++k) M.acts.emplace(std::make_pair(k, n - k), it->second);
  }
  return M;
}

Bimodule dual_bimodule(const Bimodule& M, DualPlacement pl) {
  Bimodule D;
  D.alg = M.alg;
  D.max_level = M.max_level;
  for (const auto& e : M.module.elements)
    D.module.elements.push_back({e.name + "^", -e.degree - pl.alpha});
  const int md = M.module.dim(), ad = M.alg.dim();
  for (int n = 0; n <= M.max_level; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      // b*_{k,l}(x, e^m, y) = sum_w (-1)^eps coeff_{e_m}( b_{l,k}(y, w, x) ) e^w
      for_each_word(ad, k, [&](const std::vector<int>& x) {
        long long sx = 0;
        for (int i : x) sx += M.alg.sdeg(i);
        for_each_word(ad, l, [&](const std::vector<int>& y) {
          long long sy = 0;
          for (int i : y) sy += M.alg.sdeg(i);
          for (int w = 0; w < md; ++w) {
            const SparseVec& img = M.apply(l, k, y, w, x);
            if (img.empty()) continue;
            for (const auto& [m, c] : img) {
              long long svd = D.msdeg(m);
              long long eps = 1 + svd + sx * (svd + sy + M.msdeg(w));
              D.set_entry(k, l, x, m, y, w, sign_pow(eps) * c);
            }
          }
        });
      });
    }
  }
  return D;
}

void BimoduleMap::set_entry(int k, int l, const std::vector<int>& left, int v,
                            const std::vector<int>& right, int out,
                            const Scalar& c) {
  if (static_cast<int>(left.size()) != k || static_cast<int>(right.size()) != l)
    fail(ErrorKind::Precondition, "map entry arity mismatch");
  long long want = src.msdeg(v);
  for (int i : left) want += src.alg.sdeg(i);
  for (int i : right) want += src.alg.sdeg(i);
  if (tgt.msdeg(out) != want)
    fail(ErrorKind::Precondition,
         "degree rule violated by map component (" + std::to_string(k) + "," +
             std::to_string(l) + ") -> " + tgt.module.name(out));
  auto key = std::make_pair(k, l);
  auto it = comps.find(key);
  if (it == comps.end()) it = comps.emplace(key, SparseTensor(k + 1 + l)).first;
  it->second.add(cat_word(left, v, right), out, c);
  if (it->second.empty()) comps.erase(it);
  max_level = std::max(max_level, k + l);
}

const SparseVec& BimoduleMap::apply(int k, int l, std::span<const int> left,
                                    int v, std::span<const int> right) const {
  auto it = comps.find({k, l});
  if (it == comps.end()) return kEmpty;
  return it->second.apply(cat_word(left, v, right));
}

RelationReport check_bimodule_map(const BimoduleMap& psi, int N) {
  RelationReport rep;
  auto names = module_names(psi.tgt.module);
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_mod_word(psi.src, k, l, [&](const ModWord& w) {
        ++rep.checked;
        SparseVec defect;
        for (const auto& [nw, c] : bar_insertions(psi.src, w))
          add_scaled(defect, psi.apply_word(nw.left, nw.v, nw.right), c);
        // minus sum_{i,j} b^tgt(a_1..a_i, psi(a_{i+1}.., v, ..b_j), b_{j+1}..)
        for (int i = 0; i <= k; ++i) {
          for (int j = 0; j <= l; ++j) {
            const SparseVec& mid = psi.apply(
                k - i, j, std::span<const int>(w.left).subspan(i), w.v,
                std::span<const int>(w.right).subspan(0, j));
            if (mid.empty()) continue;
            for (const auto& [m, c] : mid)
              add_scaled(defect,
                         psi.tgt.apply(i, l - j,
                                       std::span<const int>(w.left).subspan(0, i),
                                       m,
                                       std::span<const int>(w.right).subspan(j)),
                         -c);
          }
        }
        if (defect.empty()) return;
        Failure f;
        f.where = "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ")";
        f.tuple = word_names(psi.src, w);
        f.defect = render(defect, names);
        rep.failures.push_back(std::move(f));
      });
    }
  }
  return rep;
}

BimoduleMap identity_bimodule_map(const Bimodule& M) {
  BimoduleMap f;
  f.src = M;
  f.tgt = M;
  for (int i = 0; i < M.module.dim(); ++i) f.set_entry(0, 0, {}, i, {}, i, Scalar(1));
  f.max_level = M.max_level;
  return f;
}

BimoduleMap compose_bimodule_maps(const BimoduleMap& g, const BimoduleMap& f) {
  if (f.tgt.module.dim() != g.src.module.dim())
    fail(ErrorKind::Precondition, "compose_bimodule_maps: module mismatch");
  BimoduleMap out;
  out.src = f.src;
  out.tgt = g.tgt;
  const int N = std::min(f.max_level, g.max_level);
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_mod_word(f.src, k, l, [&](const ModWord& w) {
        SparseVec total;
        for (int i = 0; i <= k; ++i)
          for (int s = 0; s <= l; ++s) {
            const SparseVec& mid = f.apply(
                k - i, s, std::span<const int>(w.left).subspan(i), w.v,
                std::span<const int>(w.right).subspan(0, s));
            if (mid.empty()) continue;
            for (const auto& [m, c] : mid)
              add_scaled(total,
                         g.apply(i, l - s,
                                 std::span<const int>(w.left).subspan(0, i), m,
                                 std::span<const int>(w.right).subspan(s)),
                         c);
          }
        for (const auto& [o, c] : total) out.set_entry(k, l, w.left, w.v, w.right, o, c);
      });
    }
  }
  out.max_level = N;
  return out;
}

BimoduleMap dual_bimodule_map(const BimoduleMap& psi, DualPlacement pl) {
  BimoduleMap out;
  out.src = dual_bimodule(psi.tgt, pl);
  out.tgt = dual_bimodule(psi.src, pl);
  const int N = psi.max_level;
  const int ad = psi.src.alg.dim();
  const int srcmd = psi.src.module.dim(), tgtmd = psi.tgt.module.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(ad, k, [&](const std::vector<int>& x) {
        long long sx = 0;
        for (int i : x) sx += psi.src.alg.sdeg(i);
        for_each_word(ad, l, [&](const std::vector<int>& y) {
          long long sy = 0;
          for (int i : y) sy += psi.src.alg.sdeg(i);
          for (int w = 0; w < srcmd; ++w) {
            const SparseVec& img = psi.apply(l, k, y, w, x);
            if (img.empty()) continue;
            for (const auto& [m, c] : img) {
              if (m >= tgtmd) fail(ErrorKind::Precondition, "bad map image index");
              long long svd = out.src.msdeg(m);
              long long K = sx * (svd + sy + psi.src.msdeg(w));
              out.set_entry(k, l, x, m, y, w, sign_pow(K) * c);
            }
          }
        });
      });
    }
  }
  out.max_level = N;
  return out;
}

namespace {

// Enumerate splittings of `word` into >= 0 blocks fed through f's components,
// calling fn(args) with one SparseVec per block.
void for_each_block_split(const AInftyMorphism& f, std::span<const int> word,
                          std::vector<SparseVec>& args,
                          const std::function<void()>& fn) {
  if (word.empty()) {
    fn();
    return;
  }
  const int n = static_cast<int>(word.size());
  for (int len = 1; len <= n; ++len) {
    const SparseVec& img = f.apply(len, word.subspan(0, len));
    if (img.empty()) continue;
    args.push_back(img);
    for_each_block_split(f, word.subspan(len), args, fn);
    args.pop_back();
  }
}

} // namespace

Bimodule restrict_bimodule_along(const AInftyMorphism& f, const Bimodule& M,
                                 int N) {
  Bimodule out;
  out.alg = f.source;
  out.module = M.module;
  out.max_level = N;
  const int ad = f.source.dim(), md = M.module.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(ad, k, [&](const std::vector<int>& left) {
        std::vector<SparseVec> largs;
        for_each_block_split(f, left, largs, [&]() {
          for_each_word(ad, l, [&](const std::vector<int>& right) {
            std::vector<SparseVec> rargs;
            for_each_block_split(f, right, rargs, [&]() {
              const int r = static_cast<int>(largs.size());
              const int s = static_cast<int>(rargs.size());
              // expand all block images, then apply M's action
              std::vector<int> lw(r), rw(s);
              std::function<void(int, Scalar)> recr = [&](int slot, Scalar acc) {
                if (slot == s) {
                  for (int v = 0; v < md; ++v) {
                    const SparseVec& img = M.apply(r, s, lw, v, rw);
                    if (img.empty()) continue;
                    for (const auto& [o, c] : img)
                      out.set_entry(k, l, left, v, right, o, acc * c);
                  }
                  return;
                }
                for (const auto& [idx, cv] : rargs[slot]) {
                  rw[slot] = idx;
                  recr(slot + 1, acc * cv);
                }
              };
              std::function<void(int, Scalar)> recl = [&](int slot, Scalar acc) {
                if (slot == r) {
                  recr(0, acc);
                  return;
                }
                for (const auto& [idx, cv] : largs[slot]) {
                  lw[slot] = idx;
                  recl(slot + 1, acc * cv);
                }
              };
              recl(0, Scalar(1));
            });
          });
        });
      });
    }
  }
  return out;
}

BimoduleMap restrict_bimodule_map_along(const AInftyMorphism& f,
                                        const BimoduleMap& chi, int N) {
  BimoduleMap out;
  out.src = restrict_bimodule_along(f, chi.src, N);
  out.tgt = restrict_bimodule_along(f, chi.tgt, N);
  out.max_level = N;
  const int ad = f.source.dim(), md = chi.src.module.dim();
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      for_each_word(ad, k, [&](const std::vector<int>& left) {
        std::vector<SparseVec> largs;
        for_each_block_split(f, left, largs, [&]() {
          for_each_word(ad, l, [&](const std::vector<int>& right) {
            std::vector<SparseVec> rargs;
            for_each_block_split(f, right, rargs, [&]() {
              const int r = static_cast<int>(largs.size());
              const int s = static_cast<int>(rargs.size());
              std::vector<int> lw(r), rw(s);
              std::function<void(int, Scalar)> recr = [&](int slot, Scalar acc) {
                if (slot == s) {
                  for (int v = 0; v < md; ++v) {
                    const SparseVec& img = chi.apply(r, s, lw, v, rw);
                    if (img.empty()) continue;
                    for (const auto& [o, c] : img)
                      out.set_entry(k, l, left, v, right, o, acc * c);
                  }
                  return;
                }
                for (const auto& [idx, cv] : rargs[slot]) {
                  rw[slot] = idx;
                  recr(slot + 1, acc * cv);
                }
              };
              std::function<void(int, Scalar)> recl = [&](int slot, Scalar acc) {
                if (slot == r) {
                  recr(0, acc);
                  return;
                }
                for (const auto& [idx, cv] : largs[slot]) {
                  lw[slot] = idx;
                  recl(slot + 1, acc * cv);
                }
              };
              recl(0, Scalar(1));
            });
          });
        });
      });
    }
  }
  return out;
}

Bimodule induced_bimodule(const AInftyMorphism& f, int N) {
  return restrict_bimodule_along(f, diagonal_bimodule(f.target, N), N);
}

BimoduleMap induced_morphism_map(const AInftyMorphism& f, int N) {
  BimoduleMap out;
  out.src = diagonal_bimodule(f.source, N);
  out.tgt = induced_bimodule(f, N);
  out.max_level = N;
  for (int n = 0; n <= N; ++n) {
    auto it = f.comps.find(n + 1);
    if (it == f.comps.end()) continue;
    for (int k = 0; k <= n; ++k) out.comps.emplace(std::make_pair(k, n - k), it->second);
  }
  return out;
}

} // namespace ainf
