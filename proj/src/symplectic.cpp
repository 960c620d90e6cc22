#include "ainf/symplectic.hpp"

#include "ainf/error.hpp"

namespace ainf {

namespace {

std::string word_str(const GradedBasis& b, const std::vector<int>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += b.name(w[i]);
  }
  return s + ")";
}

long long sdeg_sum(const GradedBasis& b, const std::vector<int>& w) {
  long long s = 0;
  for (int i : w) s += b.sdeg(i);
  return s;
}

} // namespace

Scalar SymplecticForm::coeff(const std::vector<int>& I, int i,
                             const std::vector<int>& J, int j) const {
  auto it = entries.find(std::tie(I, i, J, j));
  return it == entries.end() ? Scalar(0) : it->second;
}

std::string SymplecticForm::render() const {
  std::string out;
  for (const auto& [key, c] : entries) {
    const auto& [I, i, J, j] = key;
    out += "omega[" + word_str(basis, I) + "; " + basis.name(i) + " | " +
           word_str(basis, J) + "; " + basis.name(j) +
           "] = " + format_scalar(c) + "\n";
  }
  return out;
}

SymplecticForm to_symplectic_form(const BimoduleMap& phi, int N) {
  const GradedBasis& ab = phi.src.alg.basis;
  if (phi.src.module.elements.size() != ab.elements.size())
    throw Error(ErrorKind::Precondition,
                "the two-form table needs a diagonal-type source");
  for (int i = 0; i < ab.dim(); ++i)
    if (phi.src.module.deg(i) != ab.deg(i))
      throw Error(ErrorKind::Precondition,
                  "the two-form table needs a diagonal-type source");

  SymplecticForm om;
  om.basis = ab;
  om.alpha = dual_placement_degree(phi);
  for (const auto& [kl, T] : phi.comps) {
    const auto& [k, l] = kl;
    if (k + l > N) continue;
    for (const auto& [in, row] : T.rows()) {
      std::vector<int> I(in.begin(), in.begin() + k);
      int i = in[k];
      std::vector<int> J(in.begin() + k + 1, in.end());
      for (const auto& [j, c] : row)
        if (!c.is_zero()) om.entries[{I, i, J, j}] = c;
    }
  }
  return om;
}

RelationReport check_symplectic_skew(const SymplecticForm& om) {
  RelationReport rep;
  for (const auto& [key, c] : om.entries) {
    ++rep.checked;
    const auto& [I, i, J, j] = key;
    long long K = (sdeg_sum(om.basis, I) + om.basis.sdeg(i)) *
                  (sdeg_sum(om.basis, J) + om.basis.sdeg(j));
    Scalar other = om.coeff(J, j, I, i);
    Scalar defect = other + Scalar(sign_pow(K)) * c;
    if (!defect.is_zero()) {
      Failure f;
      f.where = "two-form skew";
      for (int u : I) f.tuple.push_back(om.basis.name(u));
      f.tuple.push_back("[" + om.basis.name(i) + "]");
      for (int u : J) f.tuple.push_back(om.basis.name(u));
      f.tuple.push_back("@" + om.basis.name(j));
      f.defect = format_scalar(defect);
      rep.failures.push_back(std::move(f));
    }
  }
  return rep;
}

RelationReport check_symplectic_closedness(const SymplecticForm& om, int N) {
  RelationReport rep;
  const GradedBasis& ab = om.basis;
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
          br[s][t] = Scalar(rho) * om.coeff(left, fam[s], right, fam[t]);
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
              report("two-form closedness n=" + std::to_string(n) +
                         " triple (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + "," + std::to_string(k + 1) +
                         ")",
                     d);
          }
      Scalar tel = br[0][n - 1];
      for (int t = 0; t + 1 < n; ++t) tel += br[t + 1][t];
      if (!tel.is_zero())
        report("two-form telescoping n=" + std::to_string(n), tel);
    });
  }
  return rep;
}

} // namespace ainf
