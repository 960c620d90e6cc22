#include "ainf/filtered.hpp"

#include "ainf/error.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

namespace ainf {

namespace {

std::set<Beta> closure_set(const GappedMonoid& G, const Scalar& cap) {
  auto v = monoid_closure(G, cap);
  return std::set<Beta>(v.begin(), v.end());
}

GappedMonoid merged_monoid(const GappedMonoid& a, const GappedMonoid& b) {
  GappedMonoid g = a;
  g.generators.insert(g.generators.end(), b.generators.begin(),
                      b.generators.end());
  return g;
}

// All ordered pairs (b1, b2) of closure elements with b1 + b2 == beta.
std::vector<std::pair<Beta, Beta>> energy_splits(const Beta& beta,
                                                 const std::set<Beta>& S) {
  std::vector<std::pair<Beta, Beta>> out;
  for (const Beta& b1 : S) {
    if (b1.lambda > beta.lambda) break;
    Beta b2{beta.lambda - b1.lambda, beta.mu - b1.mu};
    if (S.count(b2)) out.emplace_back(b1, b2);
  }
  return out;
}

void require_gapped(const GappedMonoid& G, const Scalar& cap) {
  if (!check_gapped(G, cap).pass())
    fail(ErrorKind::Precondition, "the energy monoid is not gapped");
}

std::vector<std::string> basis_names(const GradedBasis& b) {
  std::vector<std::string> names;
  for (const auto& e : b.elements) names.push_back(e.name);
  return names;
}

// Structure defect of the filtered relation at one word and total energy.
SparseVec filtered_defect(const FilteredAInftyAlgebra& A,
                          std::span<const int> word, const Beta& beta,
                          const std::set<Beta>& S) {
  const int k = static_cast<int>(word.size());
  SparseVec total;
  for (const auto& [b1, b2] : energy_splits(beta, S)) {
    for (int j = 0; j <= k; ++j) {
      const int i = k - j + 1;
      if (!A.ops.count({j, b2}) || !A.ops.count({i, b1})) continue;
      long long prefix = 0;
      for (int s = 0; s + j <= k; ++s) {
        if (s > 0) prefix += A.sdeg(word[s - 1]);
        const SparseVec& inner = A.apply(j, b2, word.subspan(s, j));
        if (inner.empty()) continue;
        const int sgn = sign_pow(prefix);
        for (const auto& [mid, cin] : inner) {
          std::vector<int> outer;
          outer.reserve(i);
          outer.insert(outer.end(), word.begin(), word.begin() + s);
          outer.push_back(mid);
          outer.insert(outer.end(), word.begin() + s + j, word.end());
          add_scaled(total, A.apply(i, b1, outer), sgn * cin);
        }
      }
    }
  }
  return total;
}

} // namespace

void FilteredAInftyAlgebra::set_entry(int k, const Beta& beta,
                                      const std::vector<int>& in, int out,
                                      const Scalar& c) {
  if (k < 0) fail(ErrorKind::Precondition, "operation arity must be >= 0");
  if (static_cast<int>(in.size()) != k)
    fail(ErrorKind::Precondition, "operation input length != arity");
  if (beta.lambda < 0)
    fail(ErrorKind::Precondition, "operation energy must be >= 0");
  if (beta.mu % 2 != 0)
    fail(ErrorKind::Precondition, "operation mu must be even");
  if (k == 0 && beta.lambda == 0)
    fail(ErrorKind::Precondition, "m_{0,beta} requires positive energy");
  int want = 1 - beta.mu;
  for (int i : in) want += sdeg(i);
  if (sdeg(out) != want) {
    std::string w;
    for (int i : in) w += (w.empty() ? "" : ",") + basis.name(i);
    fail(ErrorKind::Precondition,
         "degree rule violated by m_{" + std::to_string(k) + "," + beta.str() +
             "}(" + w + ") -> " + basis.name(out));
  }
  if (beta.lambda > cap) return; // truncated away
  auto key = std::make_pair(k, beta);
  auto it = ops.find(key);
  if (it == ops.end()) it = ops.emplace(key, SparseTensor(k)).first;
  it->second.add(in, out, c);
  if (it->second.empty()) ops.erase(it);
  max_arity = std::max(max_arity, k);
}

const SparseVec& FilteredAInftyAlgebra::apply(int k, const Beta& beta,
                                              std::span<const int> in) const {
  static const SparseVec kEmpty;
  auto it = ops.find(std::make_pair(k, beta));
  return it == ops.end() ? kEmpty : it->second.apply(in);
}

void FilteredAInftyMorphism::set_entry(int k, const Beta& beta,
                                       const std::vector<int>& in, int out,
                                       const Scalar& c) {
  if (k < 0) fail(ErrorKind::Precondition, "component arity must be >= 0");
  if (static_cast<int>(in.size()) != k)
    fail(ErrorKind::Precondition, "component input length != arity");
  if (beta.lambda < 0)
    fail(ErrorKind::Precondition, "component energy must be >= 0");
  if (beta.mu % 2 != 0)
    fail(ErrorKind::Precondition, "component mu must be even");
  if (k == 0 && beta.lambda == 0)
    fail(ErrorKind::Precondition, "h_{0,beta} requires positive energy");
  int want = -beta.mu;
  for (int i : in) want += source.sdeg(i);
  if (target.sdeg(out) != want) {
    std::string w;
    for (int i : in) w += (w.empty() ? "" : ",") + source.basis.name(i);
    fail(ErrorKind::Precondition,
         "degree rule violated by h_{" + std::to_string(k) + "," + beta.str() +
             "}(" + w + ") -> " + target.basis.name(out));
  }
  if (beta.lambda > std::min(source.cap, target.cap)) return;
  auto key = std::make_pair(k, beta);
  auto it = comps.find(key);
  if (it == comps.end()) it = comps.emplace(key, SparseTensor(k)).first;
  it->second.add(in, out, c);
  if (it->second.empty()) comps.erase(it);
  max_arity = std::max(max_arity, k);
}

const SparseVec& FilteredAInftyMorphism::apply(int k, const Beta& beta,
                                               std::span<const int> in) const {
  static const SparseVec kEmpty;
  auto it = comps.find(std::make_pair(k, beta));
  return it == comps.end() ? kEmpty : it->second.apply(in);
}

Matrix FilteredAInftyMorphism::linear_part() const {
  Matrix F(target.dim(), source.dim());
  auto it = comps.find(std::make_pair(1, Beta{0, 0}));
  if (it != comps.end())
    for (const auto& [in, row] : it->second.rows())
      for (const auto& [out, c] : row) F.at(out, in[0]) = c;
  return F;
}

RelationReport check_filtered_ainfty(const FilteredAInftyAlgebra& A, int N,
                                     const Scalar& cap) {
  require_gapped(A.monoid, cap);
  RelationReport rep;
  std::set<Beta> S = closure_set(A.monoid, cap);
  for (const auto& [key, T] : A.ops)
    if (key.second.lambda <= cap && !S.count(key.second))
      rep.failures.push_back({"operation m_" + std::to_string(key.first),
                              {key.second.str()},
                              "energy outside the monoid closure"});
  std::vector<std::string> names = basis_names(A.basis);
  for (int k = 0; k <= N; ++k) {
    for_each_word(A.dim(), k, [&](const std::vector<int>& w) {
      for (const Beta& beta : S) {
        ++rep.checked;
        SparseVec defect = filtered_defect(A, w, beta, S);
        if (defect.empty()) continue;
        Failure f;
        f.where = "relation k=" + std::to_string(k) + " beta=" + beta.str();
        for (int i : w) f.tuple.push_back(A.basis.name(i));
        f.defect = render(defect, names);
        rep.failures.push_back(std::move(f));
      }
    });
  }
  return rep;
}

RelationReport check_filtered_cyclic(const FilteredAInftyAlgebra& A,
                                     const Pairing& g, int N,
                                     const Scalar& cap) {
  if (!check_filtered_ainfty(A, N, cap).pass())
    fail(ErrorKind::Precondition, "the filtered structure relations fail");
  g.validate(A.basis);
  if (!g.nondegenerate())
    fail(ErrorKind::Precondition, "pairing matrix is singular");
  RelationReport rep;
  std::set<Beta> S = closure_set(A.monoid, cap);
  for (int k = 1; k <= N; ++k) {
    for_each_word(A.dim(), k + 1, [&](const std::vector<int>& w) {
      std::span<const int> s(w);
      long long rest = 0;
      for (int i = 1; i <= k; ++i) rest += A.sdeg(w[i]);
      const int sgn = sign_pow(static_cast<long long>(A.sdeg(w[0])) * rest);
      for (const Beta& beta : S) {
        ++rep.checked;
        Scalar lhs = g.eval(A.apply(k, beta, s.subspan(0, k)), w[k]);
        Scalar rhs = Scalar(sgn) * g.eval(A.apply(k, beta, s.subspan(1)), w[0]);
        if (lhs == rhs) continue;
        Failure f;
        f.where = "cyclic k=" + std::to_string(k) + " beta=" + beta.str();
        for (int i : w) f.tuple.push_back(A.basis.name(i));
        f.defect = format_scalar(lhs - rhs);
        rep.failures.push_back(std::move(f));
      }
    });
  }
  return rep;
}

namespace {

// Signed sum of source-operation insertions into h at total energy beta.
SparseVec filtered_morphism_lhs(const FilteredAInftyMorphism& H,
                                std::span<const int> word, const Beta& beta,
                                const std::set<Beta>& S) {
  const FilteredAInftyAlgebra& A = H.source;
  const int k = static_cast<int>(word.size());
  SparseVec total;
  for (const auto& [b1, b2] : energy_splits(beta, S)) {
    for (int j = 0; j <= k; ++j) {
      const int i = k - j + 1;
      if (!A.ops.count({j, b2}) || !H.comps.count({i, b1})) continue;
      long long prefix = 0;
      for (int s = 0; s + j <= k; ++s) {
        if (s > 0) prefix += A.sdeg(word[s - 1]);
        const SparseVec& inner = A.apply(j, b2, word.subspan(s, j));
        if (inner.empty()) continue;
        const int sgn = sign_pow(prefix);
        for (const auto& [mid, cin] : inner) {
          std::vector<int> outer;
          outer.reserve(i);
          outer.insert(outer.end(), word.begin(), word.begin() + s);
          outer.push_back(mid);
          outer.insert(outer.end(), word.begin() + s + j, word.end());
          add_scaled(total, H.apply(i, b1, outer), sgn * cin);
        }
      }
    }
  }
  return total;
}

// Sum over decompositions of the word into h-blocks (empty blocks allowed)
// fed to a target operation, at total energy beta. No signs: components have
// shifted degree -mu(beta), which is even.
SparseVec filtered_morphism_rhs(const FilteredAInftyMorphism& H,
                                std::span<const int> word, const Beta& beta,
                                const std::set<Beta>& S) {
  const int k = static_cast<int>(word.size());
  SparseVec total;
  // blocks: chosen (value vector, is multilinear later) per block
  std::vector<const SparseVec*> blocks;
  std::function<void(int, const Beta&)> rec = [&](int pos, const Beta& used) {
    const int p = static_cast<int>(blocks.size());
    if (pos == k && p > 0) {
      // close with a target operation of arity p at the remaining energy
      Beta b0{beta.lambda - used.lambda, beta.mu - used.mu};
      if (b0.lambda >= 0 && S.count(b0) &&
          H.target.ops.count({p, b0})) {
        std::vector<int> idx(p);
        std::function<void(int, const Scalar&)> expand = [&](int u,
                                                             const Scalar& c) {
          if (u == p) {
            add_scaled(total, H.target.apply(p, b0, idx), c);
            return;
          }
          for (const auto& [i, ci] : *blocks[u]) {
            idx[u] = i;
            expand(u + 1, c * ci);
          }
        };
        expand(0, Scalar(1));
      }
    }
    if (p >= H.target.max_arity) return;
    for (int j = 0; pos + j <= k; ++j) {
      for (const Beta& bb : S) {
        if (used.lambda + bb.lambda > beta.lambda) break;
        if (j == 0 && bb.lambda == 0) continue; // empty block must carry energy
        auto it = H.comps.find({j, bb});
        if (it == H.comps.end()) continue;
        const SparseVec& v = it->second.apply(word.subspan(pos, j));
        if (v.empty()) continue;
        blocks.push_back(&v);
        rec(pos + j, used + bb);
        blocks.pop_back();
      }
    }
  };
  rec(0, Beta{0, 0});
  return total;
}

} // namespace

RelationReport check_filtered_morphism(const FilteredAInftyMorphism& H, int N,
                                       const Scalar& cap) {
  require_gapped(H.source.monoid, cap);
  require_gapped(H.target.monoid, cap);
  RelationReport rep;
  std::set<Beta> S = closure_set(
      merged_monoid(H.source.monoid, H.target.monoid), cap);
  std::vector<std::string> names = basis_names(H.target.basis);
  for (int k = 0; k <= N; ++k) {
    for_each_word(H.source.dim(), k, [&](const std::vector<int>& w) {
      for (const Beta& beta : S) {
        ++rep.checked;
        SparseVec lhs = filtered_morphism_lhs(H, w, beta, S);
        SparseVec rhs = filtered_morphism_rhs(H, w, beta, S);
        add_scaled(lhs, rhs, -1);
        if (lhs.empty()) continue;
        Failure f;
        f.where = "morphism k=" + std::to_string(k) + " beta=" + beta.str();
        for (int i : w) f.tuple.push_back(H.source.basis.name(i));
        f.defect = render(lhs, names);
        rep.failures.push_back(std::move(f));
      }
    });
  }
  return rep;
}

RelationReport check_filtered_cyclic_morphism(const FilteredAInftyMorphism& H,
                                              const Pairing& g_src,
                                              const Pairing& g_tgt, int N,
                                              const Scalar& cap) {
  if (!check_filtered_cyclic(H.source, g_src, N, cap).pass())
    fail(ErrorKind::Precondition, "the source structure is not filtered-cyclic");
  if (!check_filtered_cyclic(H.target, g_tgt, N, cap).pass())
    fail(ErrorKind::Precondition, "the target structure is not filtered-cyclic");
  RelationReport rep;
  std::set<Beta> S = closure_set(
      merged_monoid(H.source.monoid, H.target.monoid), cap);
  for (int k = 0; k <= N + 1; ++k) {
    for_each_word(H.source.dim(), k, [&](const std::vector<int>& w) {
      std::span<const int> s(w);
      for (const Beta& beta : S) {
        ++rep.checked;
        Scalar val(0);
        for (const auto& [b1, b2] : energy_splits(beta, S))
          for (int i = 0; i <= k; ++i) {
            if (!H.comps.count({i, b1}) || !H.comps.count({k - i, b2}))
              continue;
            val += g_tgt.eval(H.apply(i, b1, s.subspan(0, i)),
                              H.apply(k - i, b2, s.subspan(i)));
          }
        if (k == 2 && beta.is_zero()) val -= g_src.mat.at(w[0], w[1]);
        if (val.is_zero()) continue;
        Failure fl;
        fl.where =
            "cyclic morphism k=" + std::to_string(k) + " beta=" + beta.str();
        for (int i : w) fl.tuple.push_back(H.source.basis.name(i));
        fl.defect = format_scalar(val);
        rep.failures.push_back(std::move(fl));
      }
    });
  }
  return rep;
}

AInftyAlgebra energy_zero_slice(const FilteredAInftyAlgebra& A) {
  AInftyAlgebra out;
  out.basis = A.basis;
  out.max_arity = A.max_arity;
  for (const auto& [key, T] : A.ops)
    if (key.second.is_zero()) out.ops.emplace(key.first, T);
  return out;
}

AInftyMorphism energy_zero_slice(const FilteredAInftyMorphism& H) {
  AInftyMorphism out;
  out.source = energy_zero_slice(H.source);
  out.target = energy_zero_slice(H.target);
  out.max_arity = H.max_arity;
  for (const auto& [key, T] : H.comps)
    if (key.second.is_zero()) out.comps.emplace(key.first, T);
  return out;
}

FilteredAInftyAlgebra filtered_from_unfiltered(const AInftyAlgebra& A,
                                               const GappedMonoid& G,
                                               const Scalar& cap) {
  FilteredAInftyAlgebra out;
  out.basis = A.basis;
  out.monoid = G;
  out.cap = cap;
  out.max_arity = A.max_arity;
  for (const auto& [k, T] : A.ops) out.ops.emplace(std::make_pair(k, Beta{0, 0}), T);
  return out;
}

FilteredAInftyMorphism
filtered_pull_back_source(const GradedBasis& src_basis,
                          const std::map<std::pair<int, Beta>, SparseTensor>& comps,
                          const FilteredAInftyAlgebra& target, int N) {
  FilteredAInftyMorphism H;
  H.source.basis = src_basis;
  H.source.monoid = target.monoid;
  H.source.cap = target.cap;
  H.source.max_arity = std::max(N, 1);
  H.target = target;
  H.comps = comps;
  for (const auto& [key, T] : comps)
    H.max_arity = std::max(H.max_arity, key.first);

  Matrix Finv = H.linear_part().inverse();
  std::set<Beta> S = closure_set(target.monoid, target.cap);
  // Induction on energy, then arity: the unknown m_{k,beta} appears in the
  // relation only through h_{1,(0,0)}(m_{k,beta}(x_1..x_k)).
  for (const Beta& beta : S) {
    for (int k = 0; k <= N; ++k) {
      for_each_word(src_basis.dim(), k, [&](const std::vector<int>& w) {
        SparseVec rest = filtered_morphism_lhs(H, w, beta, S);
        SparseVec rhs = filtered_morphism_rhs(H, w, beta, S);
        add_scaled(rhs, rest, -1);
        if (rhs.empty()) return;
        SparseVec sol = Finv.mul_sparse(rhs);
        for (const auto& [out, c] : sol)
          H.source.set_entry(k, beta, w, out, c);
      });
    }
  }
  return H;
}

void FilteredNCPoly::add(const std::vector<int>& word, const NovikovScalar& c) {
  if (c.is_zero()) return;
  auto it = terms.find(word);
  if (it == terms.end()) {
    terms.emplace(word, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

NovikovScalar FilteredNCPoly::coeff(const std::vector<int>& word) const {
  auto it = terms.find(word);
  if (it != terms.end()) return it->second;
  NovikovScalar zero;
  zero.cap = cap;
  return zero;
}

std::string FilteredNCPoly::render() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms) {
    if (!first) os << " + ";
    first = false;
    std::string coeff = c.render();
    if (c.terms.size() > 1) coeff = "(" + coeff + ")";
    os << coeff;
    if (w.empty()) continue;
    os << " ·";
    for (int i : w) os << " " << vars[i].name;
  }
  return os.str();
}

namespace {

int var_parity(const NCVar& v) { return ((v.sdeg % 2) + 2) % 2; }

long long parity_sum(const std::vector<NCVar>& vars, const std::vector<int>& w,
                     size_t from, size_t to) {
  long long s = 0;
  for (size_t i = from; i < to; ++i) s += var_parity(vars[w[i]]);
  return s;
}

bool is_pure_power(const std::vector<int>& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] != w[0]) return false;
  return !w.empty();
}

std::string word_str(const std::vector<NCVar>& vars, const std::vector<int>& w) {
  std::string s;
  for (int i : w) s += (s.empty() ? "" : " ") + vars[i].name;
  return s;
}

} // namespace

FilteredNCPoly filtered_cyclize(const FilteredNCPoly& p, CyclicMode mode) {
  FilteredNCPoly out;
  out.vars = p.vars;
  out.cap = p.cap;
  for (const auto& [w, c] : p.terms) {
    const int n = static_cast<int>(w.size());
    if (n <= 1) {
      out.add(w, c);
      continue;
    }
    if (mode == CyclicMode::strict && is_pure_power(w) && n % 2 == 0 &&
        var_parity(p.vars[w[0]]) == 1)
      fail(ErrorKind::Precondition, "nc_cyclize: monomial " +
                                        word_str(p.vars, w) +
                                        " has no strict cyclization");
    NovikovScalar weight = c.scaled(Scalar(1) / n);
    std::vector<int> cur = w;
    long long sgn_acc = 0;
    for (int r = 0; r < n; ++r) {
      out.add(cur, sign_pow(sgn_acc) == 1 ? weight : weight.scaled(-1));
      sgn_acc += static_cast<long long>(var_parity(p.vars[cur[0]])) *
                 parity_sum(p.vars, cur, 1, cur.size());
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    }
  }
  return out;
}

FilteredNCPoly compute_filtered_potential(const FilteredAInftyAlgebra& A,
                                          const Pairing& g, int N) {
  if (!check_filtered_cyclic(A, g, N, A.cap).pass())
    fail(ErrorKind::Precondition,
         "compute_filtered_potential: the pairing is not cyclic for the "
         "structure");
  FilteredNCPoly out;
  out.vars = variables_for(A.basis);
  out.cap = A.cap;
  std::set<Beta> S = closure_set(A.monoid, A.cap);
  for (int k = 0; k <= N; ++k) {
    for (const Beta& beta : S) {
      if (!A.ops.count({k, beta})) continue;
      for_each_word(A.dim(), k, [&](const std::vector<int>& w) {
        const SparseVec& mv = A.apply(k, beta, w);
        if (mv.empty()) return;
        for (int s = 0; s < A.dim(); ++s) {
          Scalar c = g.eval(mv, s);
          if (c.is_zero()) continue;
          std::vector<int> word = w;
          word.push_back(s);
          long long total = 0;
          for (int i : word) total += A.sdeg(i);
          assert(total == -3 - g.alpha + beta.mu);
          out.add(word, NovikovScalar::monomial(c / (k + 1), beta.lambda,
                                                beta.mu / 2, A.cap));
        }
      });
    }
  }
  return out;
}

FilteredNCPoly filtered_pullback_potential(const FilteredAInftyMorphism& H,
                                           const FilteredNCPoly& phi, int N) {
  if (phi.vars.size() != static_cast<size_t>(H.target.dim()))
    fail(ErrorKind::Precondition,
         "filtered_pullback_potential: variable count does not match the "
         "morphism target");
  const Scalar cap = std::min(phi.cap, std::min(H.source.cap, H.target.cap));
  // substitution table: target index -> list of (word over source, coeff)
  std::vector<std::vector<std::pair<std::vector<int>, NovikovScalar>>> table(
      H.target.dim());
  for (const auto& [key, T] : H.comps) {
    const auto& [k, beta] = key;
    NovikovScalar unit =
        NovikovScalar::monomial(1, beta.lambda, beta.mu / 2, cap);
    if (unit.is_zero()) continue;
    for (const auto& [in, row] : T.rows())
      for (const auto& [out, c] : row)
        table[out].emplace_back(in, unit.scaled(c));
  }
  FilteredNCPoly res;
  res.vars = variables_for(H.source.basis);
  res.cap = cap;
  const size_t max_len = static_cast<size_t>(N) + 1;
  for (const auto& [w, c0] : phi.terms) {
    std::vector<int> acc;
    std::function<void(size_t, const NovikovScalar&)> expand =
        [&](size_t pos, const NovikovScalar& c) {
          if (c.is_zero() || acc.size() > max_len) return;
          if (pos == w.size()) {
            res.add(acc, c);
            return;
          }
          for (const auto& [bw, bc] : table[w[pos]]) {
            const size_t keep = acc.size();
            acc.insert(acc.end(), bw.begin(), bw.end());
            expand(pos + 1, c * bc);
            acc.resize(keep);
          }
        };
    NovikovScalar c = c0;
    c.cap = cap;
    std::map<std::pair<Scalar, int>, Scalar> kept;
    for (const auto& [key, a] : c.terms)
      if (key.first <= cap) kept.insert({key, a});
    c.terms = std::move(kept);
    expand(0, c);
  }
  return res;
}

RelationReport check_filtered_potential_invariance(
    const FilteredAInftyAlgebra& A, const Pairing& g_A,
    const FilteredAInftyAlgebra& B, const Pairing& g_B,
    const FilteredAInftyMorphism& h, int N) {
  if (h.target.basis.dim() != A.dim() || h.source.basis.dim() != B.dim())
    fail(ErrorKind::Precondition,
         "check_filtered_potential_invariance: morphism endpoints do not "
         "match the structures");
  const Scalar cap = std::min(A.cap, B.cap);
  if (!check_filtered_cyclic(A, g_A, N, cap).pass())
    fail(ErrorKind::Precondition,
         "check_filtered_potential_invariance: target pairing is not cyclic");
  if (!check_filtered_cyclic(B, g_B, N, cap).pass())
    fail(ErrorKind::Precondition,
         "check_filtered_potential_invariance: source pairing is not cyclic");
  if (!check_filtered_cyclic_morphism(h, g_B, g_A, N, cap).pass())
    fail(ErrorKind::Precondition,
         "check_filtered_potential_invariance: the morphism is not cyclic");

  RelationReport rep;
  FilteredNCPoly phiA = compute_filtered_potential(A, g_A, N);
  FilteredNCPoly phiB = compute_filtered_potential(B, g_B, N);
  FilteredNCPoly pb = filtered_pullback_potential(h, phiA, N);
  FilteredNCPoly pbc = filtered_cyclize(pb, CyclicMode::general);

  std::set<std::vector<int>, WordLess> words;
  for (const auto& [w, c] : phiB.terms) words.insert(w);
  for (const auto& [w, c] : pbc.terms) words.insert(w);
  NovikovScalar constant;
  constant.cap = cap;
  for (const auto& w : words) {
    ++rep.checked;
    NovikovScalar defect = phiB.coeff(w) - pbc.coeff(w);
    if (w.empty()) {
      constant = defect;
      continue;
    }
    if (defect.is_zero()) continue;
    Failure f;
    f.where = "potential word";
    for (int i : w) f.tuple.push_back(phiB.vars[i].name);
    f.defect = defect.render();
    rep.failures.push_back(std::move(f));
  }
  rep.notes.push_back("constant difference = " + constant.render());
  rep.notes.push_back(
      "route: entrywise cyclized pullback; the constant term is excluded");
  return rep;
}

} // namespace ainf
