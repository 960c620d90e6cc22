#include "ainf/algebra.hpp"

#include "ainf/error.hpp"

#include <functional>

namespace ainf {

void AInftyAlgebra::set_entry(int k, const std::vector<int>& in, int out,
                              const Scalar& c) {
  if (k < 1) fail(ErrorKind::Precondition, "operation arity must be >= 1");
  if (static_cast<int>(in.size()) != k)
    fail(ErrorKind::Precondition, "operation input length != arity");
  int want = 1;
  for (int i : in) want += sdeg(i);
  if (sdeg(out) != want) {
    std::string w;
    for (int i : in) w += (w.empty() ? "" : ",") + basis.name(i);
    fail(ErrorKind::Precondition, "degree rule violated by m_" + std::to_string(k) +
                                      "(" + w + ") -> " + basis.name(out));
  }
  auto it = ops.find(k);
  if (it == ops.end()) it = ops.emplace(k, SparseTensor(k)).first;
  it->second.add(in, out, c);
  if (it->second.empty()) ops.erase(it);
  max_arity = std::max(max_arity, k);
}

const SparseVec& AInftyAlgebra::apply(int k, std::span<const int> in) const {
  static const SparseVec kEmpty;
  auto it = ops.find(k);
  return it == ops.end() ? kEmpty : it->second.apply(in);
}

bool AInftyAlgebra::has_op(int k) const { return ops.count(k) > 0; }

SparseVec ainfty_defect(const AInftyAlgebra& A, std::span<const int> word) {
  const int k = static_cast<int>(word.size());
  SparseVec total;
  for (int k2 = 1; k2 <= k; ++k2) {
    const int k1 = k - k2 + 1;
    long long prefix = 0;
    for (int i = 0; i + k2 <= k; ++i) { // block occupies [i, i+k2)
      if (i > 0) prefix += A.sdeg(word[i - 1]);
      const SparseVec& inner = A.apply(k2, word.subspan(i, k2));
      if (inner.empty()) continue;
      int sgn = sign_pow(prefix);
      for (const auto& [mid, cin] : inner) {
        std::vector<int> outer;
        outer.reserve(k1);
        outer.insert(outer.end(), word.begin(), word.begin() + i);
        outer.push_back(mid);
        outer.insert(outer.end(), word.begin() + i + k2, word.end());
        add_scaled(total, A.apply(k1, outer), sgn * cin);
      }
    }
  }
  return total;
}

RelationReport check_ainfty(const AInftyAlgebra& A, int N) {
  RelationReport rep;
  for (int k = 1; k <= N; ++k) {
    for_each_word(A.dim(), k, [&](const std::vector<int>& w) {
      ++rep.checked;
      SparseVec defect = ainfty_defect(A, w);
      if (defect.empty()) return;
      Failure f;
      f.where = "relation k=" + std::to_string(k);
      for (int i : w) f.tuple.push_back(A.basis.name(i));
      std::vector<std::string> names;
      for (const auto& e : A.basis.elements) names.push_back(e.name);
      f.defect = render(defect, names);
      rep.failures.push_back(std::move(f));
    });
  }
  return rep;
}

AInftyAlgebra convert_convention(const AInftyAlgebra& A, ConvDirection) {
  AInftyAlgebra out;
  out.basis = A.basis;
  out.max_arity = A.max_arity;
  for (const auto& [k, T] : A.ops) {
    SparseTensor twisted(k);
    for (const auto& [in, row] : T.rows()) {
      long long e = 0;
      for (int i = 0; i + 1 < k; ++i)
        e += static_cast<long long>(k - 1 - i) * A.basis.deg(in[i]);
      int sgn = sign_pow(e);
      for (const auto& [outIdx, c] : row) twisted.add(in, outIdx, sgn * c);
    }
    if (!twisted.empty()) out.ops.emplace(k, std::move(twisted));
  }
  return out;
}

namespace {

void expand_args(const AInftyAlgebra& A, int r, const std::vector<SparseVec>& args,
                 int slot, std::vector<int>& word, const Scalar& coeff,
                 SparseVec& total) {
  if (slot == r) {
    add_scaled(total, A.apply(r, word), coeff);
    return;
  }
  for (const auto& [i, c] : args[slot]) {
    word[slot] = i;
    expand_args(A, r, args, slot + 1, word, coeff * c, total);
  }
}

} // namespace

SparseVec apply_multilinear(const AInftyAlgebra& A, int r,
                            const std::vector<SparseVec>& args) {
  if (static_cast<int>(args.size()) != r)
    fail(ErrorKind::Precondition, "apply_multilinear: argument count mismatch");
  SparseVec total;
  std::vector<int> word(r);
  expand_args(A, r, args, 0, word, Scalar(1), total);
  return total;
}

SparseTensor transform_tensor(const SparseTensor& T, const Matrix& input_change,
                              const Matrix& output_change) {
  const int k = T.arity();
  SparseTensor out(k);
  const int dim = input_change.rows;
  if (T.rows().empty()) return out;
  // T'(e_y) = output_change(T(P e_{y_1}, .., P e_{y_k})) with P = input_change,
  // P e_y = sum_x P[x][y] e_x.
  for_each_word(input_change.cols, k, [&](const std::vector<int>& yw) {
    SparseVec acc;
    std::vector<int> xw(k);
    std::function<void(int, Scalar)> rec = [&](int slot, Scalar c) {
      if (slot == k) {
        add_scaled(acc, T.apply(xw), c);
        return;
      }
      for (int x = 0; x < dim; ++x) {
        const Scalar& p = input_change.at(x, yw[slot]);
        if (p.is_zero()) continue;
        xw[slot] = x;
        rec(slot + 1, c * p);
      }
    };
    rec(0, Scalar(1));
    if (acc.empty()) return;
    SparseVec mapped = output_change.mul_sparse(acc);
    for (const auto& [o, c] : mapped) out.add(yw, o, c);
  });
  return out;
}

} // namespace ainf
