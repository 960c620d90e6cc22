#include "ainf/linear.hpp"

#include "ainf/error.hpp"

#include <algorithm>
#include <set>

namespace ainf {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::mul(const Matrix& rhs) const {
  if (cols != rhs.rows) fail(ErrorKind::Precondition, "matrix shape mismatch");
  Matrix out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += x * rhs.at(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
  return out;
}

Matrix Matrix::inverse() const {
  if (rows != cols) fail(ErrorKind::Precondition, "inverse of non-square matrix");
  Matrix aug(rows, 2 * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols + i) = 1;
  }
  auto pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != rows ||
      (rows > 0 && pivots.back() >= cols))
    fail(ErrorKind::Precondition, "singular matrix");
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = aug.at(i, cols + j);
  return out;
}

int Matrix::rank() const {
  Matrix copy = *this;
  return static_cast<int>(rref(copy).size());
}

SparseVec Matrix::mul_sparse(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [j, c] : v) {
    if (j >= cols) fail(ErrorKind::Precondition, "vector index out of range");
    for (int i = 0; i < rows; ++i) {
      if (at(i, j).is_zero()) continue;
      Scalar& slot = out[i];
      slot += at(i, j) * c;
      if (slot.is_zero()) out.erase(i);
    }
  }
  return out;
}

std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    Scalar inv = Scalar(1) / m.at(r, c);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  Matrix r = m;
  auto pivots = rref(r);
  std::set<int> pivot_set(pivots.begin(), pivots.end());
  std::vector<std::vector<Scalar>> out;
  for (int c = 0; c < m.cols; ++c) {
    if (pivot_set.count(c)) continue;
    std::vector<Scalar> v(m.cols);
    v[c] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = -r.at(static_cast<int>(k), c);
    out.push_back(std::move(v));
  }
  return out;
}

void LinearSystem::add_row(SparseVec coeff, Scalar rhs, std::string label) {
  rows.push_back({std::move(coeff), std::move(rhs), std::move(label)});
}

SolveResult solve(const LinearSystem& sys, int num_unknowns,
                  const std::function<Scalar(int)>& free_value) {
  SolveResult res;
  // pivot unknown -> solved row in the form  pivot = rhs + sum coeff[v] * v,
  // where no v is itself a pivot (Gauss-Jordan).
  std::map<int, LinearSystem::Row> pivot_rows;
  for (std::size_t ri = 0; ri < sys.rows.size(); ++ri) {
    LinearSystem::Row row = sys.rows[ri]; // equation form: coeff . x = rhs
    // Substitute already-solved pivots. Each substitution removes one pivot
    // unknown and introduces only non-pivot unknowns, so a fixpoint loop ends.
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [u, c] : row.coeff) {
        auto it = pivot_rows.find(u);
        if (it == pivot_rows.end()) continue;
        Scalar f = c;
        row.coeff.erase(u);
        row.rhs -= f * it->second.rhs;
        for (const auto& [v, d] : it->second.coeff) {
          Scalar& slot = row.coeff[v];
          slot += f * d;
          if (slot.is_zero()) row.coeff.erase(v);
        }
        changed = true;
        break;
      }
    }
    if (row.coeff.empty()) {
      if (!row.rhs.is_zero()) {
        res.consistent = false;
        res.witness_row = static_cast<int>(ri);
        return res;
      }
      continue;
    }
    int pivot = row.coeff.begin()->first;
    Scalar inv = Scalar(1) / row.coeff.begin()->second;
    for (auto& [v, d] : row.coeff) d *= inv;
    row.rhs *= inv;
    row.coeff.erase(pivot);
    for (auto& [v, d] : row.coeff) d = -d; // now: pivot = rhs + coeff . rest
    // Substitute the new pivot into existing solved rows.
    for (auto& [u, prow] : pivot_rows) {
      auto it = prow.coeff.find(pivot);
      if (it == prow.coeff.end()) continue;
      Scalar f = it->second;
      prow.coeff.erase(it);
      prow.rhs += f * row.rhs;
      for (const auto& [v, d] : row.coeff) {
        Scalar& slot = prow.coeff[v];
        slot += f * d;
        if (slot.is_zero()) prow.coeff.erase(v);
      }
    }
    pivot_rows.emplace(pivot, std::move(row));
  }
  res.assignment.assign(num_unknowns, Scalar(0));
  for (int u = 0; u < num_unknowns; ++u)
    if (!pivot_rows.count(u)) {
      res.free_unknowns.push_back(u);
      res.assignment[u] = free_value ? free_value(u) : Scalar(0);
    }
  for (const auto& [u, prow] : pivot_rows) {
    Scalar val = prow.rhs;
    for (const auto& [v, d] : prow.coeff) val += d * res.assignment[v];
    if (u < num_unknowns) res.assignment[u] = val;
  }
  return res;
}

SparseVec HodgeData::i_of(const SparseVec& h_coords) const {
  return incl.mul_sparse(h_coords);
}
SparseVec HodgeData::p_of(const SparseVec& v) const { return proj.mul_sparse(v); }
SparseVec HodgeData::h_of(const SparseVec& v) const { return hmtp.mul_sparse(v); }

namespace {

// True when `v` extends the independent set accumulated in `elim` (row space);
// if so, `elim` absorbs it.
bool absorb_independent(std::vector<std::vector<Scalar>>& elim,
                        std::vector<Scalar> v) {
  for (const auto& row : elim) {
    int lead = -1;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) {
        lead = static_cast<int>(j);
        break;
      }
    if (lead < 0) continue;
    if (v[lead].is_zero()) continue;
    Scalar f = v[lead] / row[lead];
    for (std::size_t j = 0; j < row.size(); ++j) v[j] -= f * row[j];
  }
  bool nonzero = std::any_of(v.begin(), v.end(),
                             [](const Scalar& x) { return !x.is_zero(); });
  if (nonzero) elim.push_back(std::move(v));
  return nonzero;
}

} // namespace

HodgeData chain_homology(const GradedBasis& basis, const SparseTensor& d) {
  const int n = basis.dim();
  if (d.arity() != 1) fail(ErrorKind::Precondition, "differential must have arity 1");
  Matrix D(n, n);
  for (const auto& [in, row] : d.rows())
    for (const auto& [out, c] : row) {
      if (basis.deg(out) != basis.deg(in[0]) + 1)
        fail(ErrorKind::Precondition,
             "differential entry " + basis.name(in[0]) + " -> " +
                 basis.name(out) + " is not degree +1");
      D.at(out, in[0]) = c;
    }
  Matrix D2 = D.mul(D);
  for (const auto& x : D2.a)
    if (!x.is_zero()) fail(ErrorKind::Precondition, "d^2 != 0");

  Matrix R = D;
  auto pivots = rref(R); // im(d) has basis { d(e_p) : p pivot }
  auto kerbasis = nullspace(D);

  // Greedily extend the image basis inside ker(d) by nullspace vectors.
  std::vector<std::vector<Scalar>> elim;
  std::vector<std::vector<Scalar>> im_basis;
  for (int p : pivots) {
    std::vector<Scalar> col(n);
    for (int i = 0; i < n; ++i) col[i] = D.at(i, p);
    if (!absorb_independent(elim, col))
      fail(ErrorKind::Precondition, "pivot image columns not independent");
    im_basis.push_back(std::move(col));
  }
  std::vector<std::vector<Scalar>> h_reps;
  for (auto& v : kerbasis)
    if (absorb_independent(elim, v)) h_reps.push_back(v);

  const int r = static_cast<int>(pivots.size());
  const int hdim = static_cast<int>(h_reps.size());

  // Change of basis T = [ im_basis | h_reps | e_p (p pivot) ].
  Matrix T(n, n);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < n; ++i) T.at(i, k) = im_basis[k][i];
  for (int k = 0; k < hdim; ++k)
    for (int i = 0; i < n; ++i) T.at(i, r + k) = h_reps[k][i];
  for (int k = 0; k < r; ++k) T.at(pivots[k], r + hdim + k) = 1;
  Matrix Tinv = T.inverse();

  HodgeData out;
  std::set<std::string> used;
  for (int k = 0; k < hdim; ++k) {
    int deg = 0, support = 0, single = -1;
    for (int i = 0; i < n; ++i)
      if (!h_reps[k][i].is_zero()) {
        if (support == 0) deg = basis.deg(i);
        else if (basis.deg(i) != deg)
          fail(ErrorKind::Precondition, "non-homogeneous homology representative");
        ++support;
        single = i;
      }
    std::string name;
    if (support == 1 && h_reps[k][single] == 1) name = basis.name(single);
    else name = "h" + std::to_string(k);
    while (used.count(name)) name += "'";
    used.insert(name);
    out.homology.elements.push_back({name, deg});
    SparseVec rep;
    for (int i = 0; i < n; ++i)
      if (!h_reps[k][i].is_zero()) rep[i] = h_reps[k][i];
    out.reps.push_back(std::move(rep));
  }

  out.incl = Matrix(n, hdim);
  for (int k = 0; k < hdim; ++k)
    for (int i = 0; i < n; ++i) out.incl.at(i, k) = h_reps[k][i];
  out.proj = Matrix(hdim, n);
  for (int k = 0; k < hdim; ++k)
    for (int j = 0; j < n; ++j) out.proj.at(k, j) = Tinv.at(r + k, j);
  // h sends the k-th image-basis coordinate to e_{pivots[k]}.
  Matrix S(n, n); // selector in T-coordinates
  for (int k = 0; k < r; ++k) S.at(pivots[k], k) = 1;
  out.hmtp = S.mul(Tinv);
  return out;
}

} // namespace ainf
