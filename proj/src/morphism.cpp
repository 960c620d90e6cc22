#include "ainf/morphism.hpp"

#include "ainf/error.hpp"

#include <functional>

namespace ainf {

namespace {

const SparseVec kEmpty;

const SparseVec& apply_map(const std::map<int, SparseTensor>& comps, int k,
                           std::span<const int> in) {
  auto it = comps.find(k);
  return it == comps.end() ? kEmpty : it->second.apply(in);
}

// sum over r and compositions i_1+..+i_r = |word| of
//   outer_r(blocks_{i_1}(word segment), .., blocks_{i_r}(word segment)),
// sign-free (block maps have degree 0).
SparseVec block_sum(const std::map<int, SparseTensor>& outer,
                    const std::map<int, SparseTensor>& blocks,
                    std::span<const int> word) {
  const int k = static_cast<int>(word.size());
  SparseVec total;
  // parts: current composition; args: block images so far.
  std::vector<SparseVec> args;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      const int r = static_cast<int>(args.size());
      auto it = outer.find(r);
      if (it == outer.end()) return;
      // multilinear expansion of outer_r over sparse args
      std::vector<int> w(r);
      std::function<void(int, Scalar)> expand = [&](int slot, Scalar c) {
        if (slot == r) {
          add_scaled(total, it->second.apply(w), c);
          return;
        }
        for (const auto& [i, x] : args[slot]) {
          w[slot] = i;
          expand(slot + 1, c * x);
        }
      };
      expand(0, Scalar(1));
      return;
    }
    for (int len = 1; pos + len <= k; ++len) {
      const SparseVec& img = apply_map(blocks, len, word.subspan(pos, len));
      if (img.empty()) continue;
      args.push_back(img);
      rec(pos + len);
      args.pop_back();
    }
  };
  rec(0);
  return total;
}

} // namespace

void AInftyMorphism::set_entry(int k, const std::vector<int>& in, int out,
                               const Scalar& c) {
  if (k < 1) fail(ErrorKind::Precondition, "morphism component arity must be >= 1");
  long long want = 0;
  for (int i : in) want += source.sdeg(i);
  if (target.sdeg(out) != want) {
    std::string w;
    for (int i : in) w += (w.empty() ? "" : ",") + source.basis.name(i);
    fail(ErrorKind::Precondition, "degree rule violated by f_" + std::to_string(k) +
                                      "(" + w + ") -> " + target.basis.name(out));
  }
  auto it = comps.find(k);
  if (it == comps.end()) it = comps.emplace(k, SparseTensor(k)).first;
  it->second.add(in, out, c);
  if (it->second.empty()) comps.erase(it);
  max_arity = std::max(max_arity, k);
}

const SparseVec& AInftyMorphism::apply(int k, std::span<const int> in) const {
  return apply_map(comps, k, in);
}

Matrix AInftyMorphism::linear_part() const {
  Matrix m(target.dim(), source.dim());
  auto it = comps.find(1);
  if (it != comps.end())
    for (const auto& [in, row] : it->second.rows())
      for (const auto& [out, c] : row) m.at(out, in[0]) = c;
  return m;
}

AInftyMorphism identity_morphism(const AInftyAlgebra& A) {
  AInftyMorphism f;
  f.source = A;
  f.target = A;
  for (int i = 0; i < A.dim(); ++i) f.set_entry(1, {i}, i, Scalar(1));
  f.max_arity = std::max(A.max_arity, 1);
  return f;
}

SparseVec morphism_lhs(const AInftyMorphism& F, std::span<const int> word) {
  const int k = static_cast<int>(word.size());
  SparseVec total;
  for (int k2 = 1; k2 <= k; ++k2) {
    const int k1 = k - k2 + 1;
    long long prefix = 0;
    for (int i = 0; i + k2 <= k; ++i) {
      if (i > 0) prefix += F.source.sdeg(word[i - 1]);
      const SparseVec& inner = F.source.apply(k2, word.subspan(i, k2));
      if (inner.empty()) continue;
      int sgn = sign_pow(prefix);
      for (const auto& [mid, cin] : inner) {
        std::vector<int> outer;
        outer.reserve(k1);
        outer.insert(outer.end(), word.begin(), word.begin() + i);
        outer.push_back(mid);
        outer.insert(outer.end(), word.begin() + i + k2, word.end());
        add_scaled(total, F.apply(k1, outer), sgn * cin);
      }
    }
  }
  return total;
}

SparseVec morphism_rhs(const AInftyMorphism& F, std::span<const int> word) {
  return block_sum(F.target.ops, F.comps, word);
}

RelationReport check_morphism(const AInftyMorphism& F, int N) {
  RelationReport rep;
  std::vector<std::string> tgt_names;
  for (const auto& e : F.target.basis.elements) tgt_names.push_back(e.name);
  for (int k = 1; k <= N; ++k) {
    for_each_word(F.source.dim(), k, [&](const std::vector<int>& w) {
      ++rep.checked;
      SparseVec defect = morphism_lhs(F, w);
      add_scaled(defect, morphism_rhs(F, w), Scalar(-1));
      if (defect.empty()) return;
      Failure f;
      f.where = "morphism relation k=" + std::to_string(k);
      for (int i : w) f.tuple.push_back(F.source.basis.name(i));
      f.defect = render(defect, tgt_names);
      rep.failures.push_back(std::move(f));
    });
  }
  return rep;
}

AInftyMorphism compose_morphisms(const AInftyMorphism& g, const AInftyMorphism& f) {
  if (f.target.dim() != g.source.dim())
    fail(ErrorKind::Precondition, "compose_morphisms: dimension mismatch");
  for (int i = 0; i < f.target.dim(); ++i)
    if (f.target.basis.deg(i) != g.source.basis.deg(i))
      fail(ErrorKind::Precondition, "compose_morphisms: degree mismatch");
  AInftyMorphism out;
  out.source = f.source;
  out.target = g.target;
  const int N = std::min(f.max_arity, g.max_arity);
  for (int k = 1; k <= N; ++k) {
    for_each_word(out.source.dim(), k, [&](const std::vector<int>& w) {
      SparseVec v = block_sum(g.comps, f.comps, w);
      for (const auto& [o, c] : v) out.set_entry(k, w, o, c);
    });
  }
  out.max_arity = N;
  return out;
}

AInftyMorphism pull_back_source(const GradedBasis& src_basis,
                                const std::map<int, SparseTensor>& comps,
                                const AInftyAlgebra& target, int N) {
  AInftyMorphism F;
  F.source.basis = src_basis;
  F.target = target;
  F.comps = comps;
  for (const auto& [k, _] : comps) F.max_arity = std::max(F.max_arity, k);
  Matrix f1inv = F.linear_part().inverse();
  for (int k = 1; k <= N; ++k) {
    for_each_word(src_basis.dim(), k, [&](const std::vector<int>& w) {
      SparseVec val = morphism_rhs(F, w);
      add_scaled(val, morphism_lhs(F, w), Scalar(-1)); // unknown m_k not yet stored
      SparseVec mk = f1inv.mul_sparse(val);
      for (const auto& [o, c] : mk) F.source.set_entry(k, w, o, c);
    });
  }
  F.source.max_arity = std::max(F.source.max_arity, N);
  F.max_arity = std::max(F.max_arity, N); // absent components are zero up to N
  return F;
}

AInftyMorphism push_forward_target(const AInftyAlgebra& source,
                                   const std::map<int, SparseTensor>& comps,
                                   const GradedBasis& tgt_basis, int N) {
  AInftyMorphism F;
  F.source = source;
  F.target.basis = tgt_basis;
  F.comps = comps;
  for (const auto& [k, _] : comps) F.max_arity = std::max(F.max_arity, k);
  Matrix f1inv = F.linear_part().inverse();
  Matrix id = Matrix::identity(tgt_basis.dim());
  for (int k = 1; k <= N; ++k) {
    SparseTensor T(k); // T(x) = m^tgt_k(f_1 x_1, .., f_1 x_k) on source words
    for_each_word(source.dim(), k, [&](const std::vector<int>& w) {
      SparseVec val = morphism_lhs(F, w);
      add_scaled(val, morphism_rhs(F, w), Scalar(-1)); // r=k term not yet stored
      for (const auto& [o, c] : val) T.add(w, o, c);
    });
    SparseTensor mk = transform_tensor(T, f1inv, id);
    for (const auto& [in, row] : mk.rows())
      for (const auto& [o, c] : row) F.target.set_entry(k, in, o, c);
  }
  F.target.max_arity = std::max(F.target.max_arity, N);
  F.max_arity = std::max(F.max_arity, N); // absent components are zero up to N
  return F;
}

} // namespace ainf
