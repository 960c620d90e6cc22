#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ainf/error.hpp"
#include "ainf/linear.hpp"

#include <random>

using namespace ainf;

namespace {

Matrix from_rows(const std::vector<std::vector<int>>& rows) {
  Matrix m(static_cast<int>(rows.size()),
           rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

Matrix random_invertible(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  while (true) {
    Matrix m(n, n);
    for (auto& x : m.a) x = entry(rng);
    Matrix c = m;
    if (static_cast<int>(rref(c).size()) == n) return m;
  }
}

} // namespace

TEST_CASE("rref pivots and rank") {
  Matrix m = from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(m.rank() == 2);
  Matrix c = m;
  auto piv = rref(c);
  CHECK(piv == std::vector<int>{0, 1});
  CHECK(c.at(0, 1) == 0); // reduced above the second pivot
}

TEST_CASE("inverse round trip on random invertible matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    Matrix m = random_invertible(n, rng);
    CHECK(m.mul(m.inverse()) == Matrix::identity(n));
    CHECK(m.inverse().mul(m) == Matrix::identity(n));
  }
  CHECK_THROWS_AS(from_rows({{1, 2}, {2, 4}}).inverse(), Error);
}

TEST_CASE("nullspace vectors are in the kernel and independent") {
  Matrix m = from_rows({{1, 2, 3, 0}, {0, 0, 1, 1}});
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (const auto& v : ns)
    for (int i = 0; i < m.rows; ++i) {
      Scalar s = 0;
      for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * v[j];
      CHECK(s == 0);
    }
}

TEST_CASE("sparse solve agrees with known solution and handles freedom") {
  // x0 + x1 = 3, x1 - x2 = 1, x2 free
  LinearSystem sys;
  sys.add_row({{0, Scalar(1)}, {1, Scalar(1)}}, Scalar(3), "r0");
  sys.add_row({{1, Scalar(1)}, {2, Scalar(-1)}}, Scalar(1), "r1");
  auto res = solve(sys, 3);
  REQUIRE(res.consistent);
  CHECK(res.free_unknowns == std::vector<int>{2});
  CHECK(res.assignment[2] == 0);
  CHECK(res.assignment[1] == 1);
  CHECK(res.assignment[0] == 2);

  auto res2 = solve(sys, 3, [](int) { return Scalar(5); });
  CHECK(res2.assignment[2] == 5);
  CHECK(res2.assignment[1] == 6);
  CHECK(res2.assignment[0] == -3);

  sys.add_row({{0, Scalar(1)}, {1, Scalar(1)}}, Scalar(4), "bad");
  auto res3 = solve(sys, 3);
  CHECK_FALSE(res3.consistent);
  CHECK(res3.witness_row == 2);
}

TEST_CASE("sparse solve on random consistent systems") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int rows = 1 + static_cast<int>(rng() % (2 * n));
    std::vector<Scalar> truth(n);
    for (auto& x : truth) x = entry(rng);
    LinearSystem sys;
    for (int r = 0; r < rows; ++r) {
      SparseVec co;
      Scalar rhs = 0;
      for (int j = 0; j < n; ++j) {
        int c = entry(rng);
        if (c == 0) continue;
        co[j] = c;
        rhs += Scalar(c) * truth[j];
      }
      sys.add_row(std::move(co), rhs);
    }
    auto res = solve(sys, n);
    REQUIRE(res.consistent);
    // residual check: the particular solution satisfies every row
    for (const auto& row : sys.rows) {
      Scalar s = 0;
      for (const auto& [j, c] : row.coeff) s += c * res.assignment[j];
      CHECK(s == row.rhs);
    }
  }
}

TEST_CASE("chain homology produces a valid special deformation retract") {
  // basis: a(0), b(0), x(1), y(1), z(2) with d(a)=x+y, d(x)=z, d(y)=-z.
  // So d^2(a) = z - z = 0. ker d in deg0: b and? d(b)=0. H^0 = <b>? a has d(a)!=0.
  GradedBasis basis;
  basis.elements = {{"a", 0}, {"b", 0}, {"x", 1}, {"y", 1}, {"z", 2}};
  SparseTensor d(1);
  d.add({0}, 2, Scalar(1));
  d.add({0}, 3, Scalar(1));
  d.add({2}, 4, Scalar(1));
  d.add({3}, 4, Scalar(-1));
  auto hd = chain_homology(basis, d);

  // dimensions: rank d = 2, ker d = 3, H = 1 in deg 0 (b) ... plus deg 1:
  // ker in deg1 = <x+y>, im into deg1 = <x+y> -> H^1 = 0; deg2: ker=<z>=im -> 0.
  REQUIRE(hd.homology.dim() == 1);
  CHECK(hd.homology.deg(0) == 0);

  const int n = basis.dim();
  // Build dense D, I, P, H and verify the side conditions.
  Matrix D(n, n);
  for (const auto& [in, row] : d.rows())
    for (const auto& [o, c] : row) D.at(o, in[0]) = c;
  Matrix IP = hd.incl.mul(hd.proj);
  Matrix lhs = D.mul(hd.hmtp);
  Matrix rhs = hd.hmtp.mul(D);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar want = (i == j ? Scalar(1) : Scalar(0)) - IP.at(i, j);
      CHECK(lhs.at(i, j) + rhs.at(i, j) == want);
    }
  CHECK(hd.proj.mul(hd.incl) == Matrix::identity(1));
  CHECK(hd.hmtp.mul(hd.hmtp) == Matrix(n, n));
  CHECK(hd.hmtp.mul(hd.incl) == Matrix(n, 1));
  CHECK(hd.proj.mul(hd.hmtp) == Matrix(1, n));
  CHECK(hd.proj.mul(D) == Matrix(1, n));
  CHECK(D.mul(hd.incl) == Matrix(n, 1));
}

TEST_CASE("chain homology on random differentials") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 15; ++trial) {
    // random two-step complex V0 -> V1 -> V2 with d1 d0 = 0:
    // pick d0 random, then d1 random on a left factor killing im(d0) is hard;
    // instead build d = Q d0 Q^{-1} style: take upper shift with random conjugation.
    int n0 = 1 + static_cast<int>(rng() % 2), n1 = 1 + static_cast<int>(rng() % 3),
        n2 = 1 + static_cast<int>(rng() % 2);
    GradedBasis basis;
    for (int i = 0; i < n0; ++i) basis.elements.push_back({"a" + std::to_string(i), 0});
    for (int i = 0; i < n1; ++i) basis.elements.push_back({"b" + std::to_string(i), 1});
    for (int i = 0; i < n2; ++i) basis.elements.push_back({"c" + std::to_string(i), 2});
    // d0: V0->V1 arbitrary; d1: V1->V2 built as B*A with A: V1->V0^T? Simplest:
    // choose rank-structured maps: d1 = C * d0^perp is overkill; use d1 = 0 half
    // the time, else d1 with columns in ker-ish by trial: just retry until d^2=0.
    for (int attempt = 0; attempt < 200; ++attempt) {
      SparseTensor d(1);
      Matrix D0(n1, n0), D1(n2, n1);
      for (auto& x : D0.a) x = entry(rng);
      for (auto& x : D1.a) x = entry(rng);
      Matrix prod = D1.mul(D0);
      bool ok = true;
      for (const auto& x : prod.a)
        if (!x.is_zero()) ok = false;
      if (!ok) continue;
      for (int j = 0; j < n0; ++j)
        for (int i = 0; i < n1; ++i)
          if (!D0.at(i, j).is_zero()) d.add({j}, n0 + i, D0.at(i, j));
      for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n2; ++i)
          if (!D1.at(i, j).is_zero()) d.add({n0 + j}, n0 + n1 + i, D1.at(i, j));
      auto hd = chain_homology(basis, d);
      const int n = basis.dim();
      Matrix D(n, n);
      for (const auto& [in, row] : d.rows())
        for (const auto& [o, c] : row) D.at(o, in[0]) = c;
      Matrix IP = hd.incl.mul(hd.proj);
      Matrix anti = D.mul(hd.hmtp);
      Matrix anti2 = hd.hmtp.mul(D);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Scalar want = (i == j ? Scalar(1) : Scalar(0)) - IP.at(i, j);
          CHECK(anti.at(i, j) + anti2.at(i, j) == want);
        }
      int hdim = hd.homology.dim();
      CHECK(hd.proj.mul(hd.incl) == Matrix::identity(hdim));
      CHECK(hd.hmtp.mul(hd.hmtp) == Matrix(n, n));
      CHECK(hd.hmtp.mul(hd.incl) == Matrix(n, hdim));
      CHECK(hd.proj.mul(hd.hmtp) == Matrix(hdim, n));
      break;
    }
  }
}

TEST_CASE("chain homology rejects non-differentials") {
  GradedBasis basis;
  basis.elements = {{"u", 0}, {"v", 1}, {"w", 2}};
  SparseTensor d(1);
  d.add({0}, 1, Scalar(1));
  d.add({1}, 2, Scalar(1)); // d^2(u) = w != 0
  CHECK_THROWS_AS(chain_homology(basis, d), Error);

  SparseTensor bad(1);
  CHECK_THROWS_AS(
      [&] {
        SparseTensor wrongdeg(1);
        wrongdeg.add({1}, 0, Scalar(1)); // degree -1 entry
        chain_homology(basis, wrongdeg);
      }(),
      Error);
}
