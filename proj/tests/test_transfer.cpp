#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ainf/transfer.hpp"
#include "gen.hpp"

using namespace ainf;

TEST_CASE("minimal model of an already-minimal algebra is the algebra") {
  auto A = gen::lambda_theta();
  auto T = minimal_model(A, 4);
  REQUIRE(T.minimal.dim() == 2);
  CHECK(T.minimal.ops == A.ops);
  CHECK(check_morphism(T.incl, 4).pass());
  CHECK(check_morphism(T.proj, 4).pass());
}

TEST_CASE("minimal model of the dual numbers is the ground field") {
  auto A = convert_convention(gen::dual_numbers_ns(), ConvDirection::NsToShifted);
  auto T = minimal_model(A, 4);
  REQUIRE(T.minimal.dim() == 1);
  CHECK(T.minimal.basis.deg(0) == 0);
  // one-dimensional unital: m2(e,e) = e, everything else forced by degree
  CHECK(T.minimal.apply(2, std::vector<int>{0, 0}).size() == 1);
  CHECK(check_ainfty(T.minimal, 4).pass());
  CHECK(check_morphism(T.incl, 4).pass());
  CHECK(check_morphism(T.proj, 4).pass());
}

TEST_CASE("transfer produces the expected triple product") {
  auto A = convert_convention(gen::massey_ns(), ConvDirection::NsToShifted);
  auto T = minimal_model(A, 4);
  REQUIRE(T.minimal.dim() == 5);
  CHECK(check_ainfty(T.minimal, 4).pass());
  CHECK(check_morphism(T.incl, 4).pass());
  CHECK(check_morphism(T.proj, 4).pass());
  // no differential on the minimal model
  CHECK_FALSE(T.minimal.has_op(1));
  // the surviving classes e, a, b, c, M; m3(a, b, c) = +-M
  const auto& H = T.minimal.basis;
  int ia = H.index_of("a"), ib = H.index_of("b"), ic = H.index_of("c"),
      iM = H.index_of("M");
  REQUIRE(ia >= 0);
  REQUIRE(ib >= 0);
  REQUIRE(ic >= 0);
  REQUIRE(iM >= 0);
  auto v = T.minimal.apply(3, std::vector<int>{ia, ib, ic});
  REQUIRE(v.size() == 1);
  CHECK(v.begin()->first == iM);
  CHECK((v.begin()->second == 1 || v.begin()->second == -1));
  // m2 of classes with multiplication into exact terms vanishes
  CHECK(T.minimal.apply(2, std::vector<int>{ia, ib}).empty());
}

TEST_CASE("projection is a left inverse of inclusion at arity one") {
  auto A = convert_convention(gen::massey_ns(), ConvDirection::NsToShifted);
  auto T = minimal_model(A, 3);
  auto qf = compose_morphisms(T.proj, T.incl);
  auto m = qf.linear_part();
  CHECK(m == Matrix::identity(T.minimal.dim()));
  CHECK(check_morphism(qf, 3).pass());
}

TEST_CASE("transfer through random basis changes stays valid") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    auto A = gen::random_ainfty(rng);
    auto T = minimal_model(A, 4);
    CHECK(check_ainfty(T.minimal, 4).pass());
    CHECK(check_morphism(T.incl, 4).pass());
    CHECK(check_morphism(T.proj, 4).pass());
    CHECK_FALSE(T.minimal.has_op(1));
  }
}

TEST_CASE("transferred structure of a conjugated massey algebra keeps m3") {
  std::mt19937_64 rng(37);
  auto base = convert_convention(gen::massey_ns(), ConvDirection::NsToShifted);
  auto A = gen::conjugate(base, gen::random_degree_change(base.basis, rng));
  auto T = minimal_model(A, 3);
  CHECK(T.minimal.has_op(3));
}
