#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ainf/error.hpp"
#include "ainf/filtered.hpp"
#include "ainf/potential.hpp"
#include "gen.hpp"

using namespace ainf;

namespace {

const Scalar kCap = 2;

// m_0 = c*e, contraction m_1(th) = a*e and Clifford square m_2(th,th) = b*e,
// all at energy (1,2) over the exterior fixture.
FilteredAInftyAlgebra curved_theta(const Scalar& c, const Scalar& a,
                                   const Scalar& b) {
  FilteredAInftyAlgebra A = gen::deformed_theta(1, b, a, kCap);
  if (!c.is_zero()) A.set_entry(0, Beta{1, 2}, {}, 0, c);
  return A;
}

// Contraction against the first generator of the two-generator exterior
// fixture: t1 -> e, t12 -> t2 at energy (1,2). A filtered cyclic deformation.
FilteredAInftyAlgebra contracted_two() {
  GappedMonoid G;
  G.generators.push_back(Beta{1, 2});
  FilteredAInftyAlgebra A =
      filtered_from_unfiltered(gen::lambda_two(), G, kCap);
  A.set_entry(1, Beta{1, 2}, {1}, 0, 1);
  A.set_entry(1, Beta{1, 2}, {3}, 2, 1);
  return A;
}

FilteredAInftyAlgebra truncate_alg(const FilteredAInftyAlgebra& A,
                                   const Scalar& cap) {
  FilteredAInftyAlgebra out;
  out.basis = A.basis;
  out.monoid = A.monoid;
  out.cap = cap;
  out.max_arity = A.max_arity;
  for (const auto& [key, T] : A.ops)
    if (key.second.lambda <= cap) out.ops.emplace(key, T);
  return out;
}

FilteredAInftyMorphism truncate_mor(const FilteredAInftyMorphism& H,
                                    const Scalar& cap) {
  FilteredAInftyMorphism out;
  out.source = truncate_alg(H.source, cap);
  out.target = truncate_alg(H.target, cap);
  out.max_arity = H.max_arity;
  for (const auto& [key, T] : H.comps)
    if (key.second.lambda <= cap) out.comps.emplace(key, T);
  return out;
}

FilteredAInftyMorphism identity_filtered(const FilteredAInftyAlgebra& A) {
  FilteredAInftyMorphism H;
  H.source = A;
  H.target = A;
  H.max_arity = 1;
  SparseTensor t(1);
  for (int i = 0; i < A.dim(); ++i) t.add({i}, i, 1);
  H.comps.emplace(std::make_pair(1, Beta{0, 0}), std::move(t));
  return H;
}

} // namespace

TEST_CASE("Novikov scalars multiply by adding energies and exponents") {
  NovikovScalar x = NovikovScalar::monomial(Scalar(3) / 2, 1, 0, 3);
  x.add_term(-1, 2, 1);
  CHECK(x.render() == "3/2 T^1 e^0 + -1 T^2 e^1");

  NovikovScalar y = NovikovScalar::monomial(2, 1, 1, 3);
  NovikovScalar p = x * y;
  CHECK(p.coeff(2, 1) == Scalar(3));
  CHECK(p.coeff(3, 2) == Scalar(-2));
  CHECK((x - x).is_zero());
  CHECK((x - x).render() == "0");
  CHECK((-y).coeff(1, 1) == Scalar(-2));

  NovikovScalar z;
  z.cap = 3;
  CHECK_THROWS_WITH_AS(z.add_term(1, -1, 0),
                       doctest::Contains("negative energy"), Error);
}

TEST_CASE("truncation at the cap is an algebra quotient") {
  NovikovScalar u = NovikovScalar::constant(1, 2);
  u.add_term(1, Scalar(3) / 2, 0);
  NovikovScalar sq = u * u; // (1 + T^{3/2})^2, the T^3 term is truncated
  CHECK(sq.coeff(0, 0) == Scalar(1));
  CHECK(sq.coeff(Scalar(3) / 2, 0) == Scalar(2));
  CHECK(sq.terms.size() == 2);
  // a fully dropped factor stays dropped
  NovikovScalar t = NovikovScalar::monomial(1, Scalar(3) / 2, 0, 2);
  CHECK((t * t).is_zero());
}

TEST_CASE("gapped monoid closure and the three conditions") {
  GappedMonoid G1{{Beta{1, 0}}};
  auto c1 = monoid_closure(G1, 3);
  REQUIRE(c1.size() == 4);
  for (int i = 0; i <= 3; ++i) CHECK(c1[i] == Beta{Scalar(i), 0});
  RelationReport r1 = check_gapped(G1, 3);
  CHECK(r1.pass());
  CHECK(r1.notes[0] == "closure size below cap 3: 4");

  GappedMonoid G2{{Beta{0, 2}}};
  RelationReport r2 = check_gapped(G2, 3);
  REQUIRE_FALSE(r2.pass());
  CHECK(r2.failures[0].defect == "zero energy with nonzero mu");
  CHECK(monoid_closure(G2, 3).size() == 1); // bad generators never summed

  GappedMonoid G3{{Beta{1, 0}, Beta{1, 2}}};
  auto c3 = monoid_closure(G3, 2);
  CHECK(c3.size() == 6);
  int fiber2 = 0;
  for (const Beta& b : c3)
    if (b.lambda == 2) ++fiber2;
  CHECK(fiber2 == 3); // (2,0), (2,2), (2,4)
  RelationReport r3 = check_gapped(G3, 2);
  CHECK(r3.pass());
  bool noted = false;
  for (const auto& n : r3.notes) noted = noted || n == "fiber at energy 2: 3";
  CHECK(noted);

  RelationReport r4 = check_gapped(GappedMonoid{{Beta{1, 1}}}, 2);
  REQUIRE_FALSE(r4.pass());
  CHECK(r4.failures[0].defect == "odd mu");
  RelationReport r5 = check_gapped(GappedMonoid{{Beta{-1, 0}}}, 2);
  REQUIRE_FALSE(r5.pass());
  CHECK(r5.failures[0].defect == "negative energy");
}

TEST_CASE("filtered set_entry enforces the shifted degree rule with mu offset") {
  FilteredAInftyAlgebra A = gen::deformed_theta(1, 0, 0, kCap);
  // sdeg(out) must be 1 + sum - mu: m_{2,(1,2)}(th,th) -> th has sdeg 0 != -1
  CHECK_THROWS_WITH_AS(A.set_entry(2, Beta{1, 2}, {1, 1}, 1, Scalar(1)),
                       doctest::Contains("degree rule violated"), Error);
  CHECK_THROWS_WITH_AS(A.set_entry(0, Beta{0, 0}, {}, 0, Scalar(1)),
                       doctest::Contains("positive energy"), Error);
  CHECK_THROWS_WITH_AS(A.set_entry(1, Beta{1, 1}, {1}, 1, Scalar(1)),
                       doctest::Contains("mu must be even"), Error);
  // above the cap: silently truncated
  A.set_entry(2, Beta{3, 2}, {1, 1}, 0, Scalar(1));
  CHECK(A.ops.count({2, Beta{3, 2}}) == 0);
}

TEST_CASE("energy-zero embedding reduces to the strict checkers") {
  GappedMonoid G; // no generators: closure is {(0,0)}
  for (const AInftyAlgebra& base : {gen::lambda_theta(), gen::lambda_two()}) {
    FilteredAInftyAlgebra A = filtered_from_unfiltered(base, G, kCap);
    CHECK(check_filtered_ainfty(A, 3, kCap).pass());
    AInftyAlgebra back = energy_zero_slice(A);
    CHECK(back.ops == base.ops);
  }
  FilteredAInftyAlgebra A =
      filtered_from_unfiltered(gen::lambda_theta(), G, kCap);
  CHECK(check_filtered_cyclic(A, gen::lambda_theta_pairing(), 3, kCap).pass());
}

TEST_CASE("Clifford-type deformation passes the levelwise relations") {
  FilteredAInftyAlgebra A = gen::deformed_theta(1, 5, 0, kCap);
  RelationReport rep = check_filtered_ainfty(A, 3, kCap);
  CHECK(rep.pass());
  CHECK(check_filtered_cyclic(A, gen::lambda_theta_pairing(), 3, kCap).pass());

  // with the contraction component as well
  FilteredAInftyAlgebra B = gen::deformed_theta(1, 5, 2, kCap);
  CHECK(check_filtered_ainfty(B, 3, kCap).pass());
  CHECK(check_filtered_cyclic(B, gen::lambda_theta_pairing(), 3, kCap).pass());
}

TEST_CASE("a relation-breaking entry is located at its arity and energy") {
  FilteredAInftyAlgebra A = gen::deformed_theta(1, 5, 0, kCap);
  A.monoid.generators.push_back(Beta{1, 0});
  A.set_entry(1, Beta{1, 0}, {0}, 1, Scalar(1)); // d(e) = th, not a derivation
  RelationReport rep = check_filtered_ainfty(A, 3, kCap);
  REQUIRE_FALSE(rep.pass());
  bool located = false;
  for (const auto& f : rep.failures)
    located = located || f.where == "relation k=2 beta=(1, 0)";
  CHECK(located);
  // the cyclic checker refuses to run on a broken structure
  CHECK_THROWS_WITH_AS(
      check_filtered_cyclic(A, gen::lambda_theta_pairing(), 3, kCap),
      doctest::Contains("structure relations fail"), Error);
}

TEST_CASE("curvature with unit output satisfies the k=0 and k=1 relations") {
  FilteredAInftyAlgebra A = curved_theta(7, 4, 5);
  RelationReport rep = check_filtered_ainfty(A, 3, kCap);
  CHECK(rep.pass());
  CHECK(rep.checked > 0);
  CHECK(check_filtered_cyclic(A, gen::lambda_theta_pairing(), 3, kCap).pass());
  AInftyAlgebra slice = energy_zero_slice(A);
  CHECK(slice.ops == gen::lambda_theta().ops);
}

TEST_CASE("contraction deformation of the two-generator fixture is cyclic") {
  FilteredAInftyAlgebra A = contracted_two();
  CHECK(check_filtered_ainfty(A, 3, kCap).pass());
  CHECK(check_filtered_cyclic(A, gen::lambda_two_pairing(), 3, kCap).pass());

  // perturbing one pairing entry keeps the relations but breaks cyclicity
  // exactly where the deformed operation pairs the rescaled slot
  Pairing gp = gen::lambda_two_pairing();
  gp.mat.at(0, 3) = 2;
  gp.mat.at(3, 0) = 2;
  RelationReport rep = check_filtered_cyclic(A, gp, 3, kCap);
  REQUIRE_FALSE(rep.pass());
  bool located = false;
  for (const auto& f : rep.failures)
    located = located || f.where == "cyclic k=1 beta=(1, 2)";
  CHECK(located);

  Pairing sing = gen::lambda_two_pairing();
  sing.mat.at(1, 2) = 0;
  sing.mat.at(2, 1) = 0;
  CHECK_THROWS_WITH_AS(check_filtered_cyclic(A, sing, 3, kCap),
                       doctest::Contains("singular"), Error);
}

TEST_CASE("cap monotonicity: truncations of passing structures pass") {
  FilteredAInftyAlgebra A = curved_theta(7, 4, 5);
  for (Scalar cap : {Scalar(1), Scalar(1) / 2}) {
    FilteredAInftyAlgebra T = truncate_alg(A, cap);
    CHECK(check_filtered_ainfty(T, 3, cap).pass());
    CHECK(check_filtered_cyclic(T, gen::lambda_theta_pairing(), 3, cap).pass());
  }
}

TEST_CASE("transported sources of filtered cyclic morphisms are cyclic") {
  std::mt19937_64 rng(2026);
  for (int rep = 0; rep < 3; ++rep) {
    gen::FilteredInstance inst =
        gen::random_filtered(rng, 3, kCap, rep % 2 == 1);
    CHECK(check_filtered_morphism(inst.h, 3, kCap).pass());
    CHECK(check_filtered_cyclic(inst.h.source, inst.g_B, 3, kCap).pass());
    CHECK(check_filtered_cyclic_morphism(inst.h, inst.g_B, inst.g_A, 3, kCap)
              .pass());

    // the energy-zero slice is the pull-back along the slice morphism alone
    AInftyAlgebra B0 = energy_zero_slice(inst.h.source);
    std::map<int, SparseTensor> c1;
    c1.emplace(1, inst.h.comps.at({1, Beta{0, 0}}));
    AInftyMorphism u =
        pull_back_source(inst.base.A.basis, c1, inst.base.seed, 4);
    CHECK(B0.ops == u.source.ops);
    AInftyMorphism h0 = energy_zero_slice(inst.h);
    CHECK(check_morphism(h0, 3).pass());
    CHECK(check_cyclic_morphism(h0, inst.g_B, inst.g_A, 3).pass());

    // truncation of everything to a smaller cap still passes
    FilteredAInftyMorphism ht = truncate_mor(inst.h, 1);
    CHECK(check_filtered_morphism(ht, 3, 1).pass());
    CHECK(check_filtered_cyclic_morphism(ht, inst.g_B, inst.g_A, 3, 1).pass());
  }
}

TEST_CASE("an energy-carrying multiple of the isometry violates cyclicity") {
  std::mt19937_64 rng(7);
  gen::FilteredInstance inst = gen::random_filtered(rng, 3, kCap, false);
  FilteredAInftyMorphism bad = inst.h;
  Beta b3{Scalar(1) / 2, 0};
  auto it = bad.comps.find(std::make_pair(1, Beta{0, 0}));
  REQUIRE(it != bad.comps.end());
  SparseTensor scaled(1);
  for (const auto& [in, row] : it->second.rows())
    for (const auto& [out, c] : row) scaled.add(in, out, c * 3);
  bad.comps.emplace(std::make_pair(1, b3), std::move(scaled));
  RelationReport rep =
      check_filtered_cyclic_morphism(bad, inst.g_B, inst.g_A, 3, kCap);
  REQUIRE_FALSE(rep.pass());
  bool at_b3 = false, at_2b3 = false;
  for (const auto& f : rep.failures) {
    at_b3 = at_b3 || f.where == "cyclic morphism k=2 beta=(1/2, 0)";
    at_2b3 = at_2b3 || f.where == "cyclic morphism k=2 beta=(1, 0)";
  }
  CHECK(at_b3);  // <h_{1,0}x, h_{1,b}y> + <h_{1,b}x, h_{1,0}y> != 0
  CHECK(at_2b3); // <h_{1,b}x, h_{1,b}y> != 0
}

TEST_CASE("filtered cyclization averages rotations with signs") {
  FilteredNCPoly p;
  p.vars = variables_for(gen::lambda_theta().basis);
  p.cap = kCap;
  p.add({0, 0}, NovikovScalar::monomial(1, 1, 0, kCap)); // x_e x_e, odd parity
  CHECK_THROWS_WITH_AS(filtered_cyclize(p, CyclicMode::strict),
                       doctest::Contains("x_e x_e"), Error);
  // the two rotations of x_e x_e carry opposite signs, so the average is zero
  CHECK(filtered_cyclize(p, CyclicMode::general).is_zero());

  FilteredNCPoly q;
  q.vars = p.vars;
  q.cap = kCap;
  q.add({0, 1}, NovikovScalar::monomial(6, 1, 1, kCap));
  FilteredNCPoly qc = filtered_cyclize(q, CyclicMode::strict);
  // x_e x_th averages into rotations with the Koszul step sign (odd * even)
  CHECK(qc.coeff({0, 1}) == NovikovScalar::monomial(3, 1, 1, kCap));
  CHECK(qc.coeff({1, 0}) == NovikovScalar::monomial(3, 1, 1, kCap));
  CHECK(filtered_cyclize(qc, CyclicMode::strict) == qc);
}

TEST_CASE("the filtered potential collects energy and exponent per word") {
  FilteredAInftyAlgebra A = curved_theta(7, 4, 5);
  Pairing g = gen::lambda_theta_pairing();
  FilteredNCPoly phi = compute_filtered_potential(A, g, 3);
  CHECK(phi.coeff({1}) == NovikovScalar::monomial(7, 1, 1, kCap));
  CHECK(phi.coeff({1, 1}) == NovikovScalar::monomial(2, 1, 1, kCap));
  CHECK(phi.coeff({1, 1, 1}) == NovikovScalar::monomial(Scalar(5) / 3, 1, 1, kCap));
  CHECK(phi.coeff({0, 0, 1}) == NovikovScalar::constant(Scalar(1) / 3, kCap));
  CHECK(phi.coeff({0, 1, 0}) == NovikovScalar::constant(Scalar(-1) / 3, kCap));
  CHECK(phi.coeff({1, 0, 0}) == NovikovScalar::constant(Scalar(1) / 3, kCap));
  CHECK(phi.terms.size() == 6);

  // exponent bookkeeping: 2n = sum of shifted degrees + 3 + alpha, per word
  for (const auto& [w, c] : phi.terms) {
    long long s = 0;
    for (int i : w) s += A.sdeg(i);
    for (const auto& [key, a] : c.terms)
      CHECK(2 * key.second == s + 3 + g.alpha);
  }

  // the embedded strict fixture reproduces the unfiltered potential
  GappedMonoid G;
  FilteredAInftyAlgebra E =
      filtered_from_unfiltered(gen::lambda_theta(), G, kCap);
  FilteredNCPoly fphi = compute_filtered_potential(E, g, 3);
  NCPoly uphi = compute_potential(gen::lambda_theta(), g, 3);
  CHECK(fphi.terms.size() == uphi.terms.size());
  for (const auto& [w, c] : uphi.terms)
    CHECK(fphi.coeff(w) == NovikovScalar::constant(c, kCap));
}

TEST_CASE("potential refuses non-cyclic filtered structures") {
  FilteredAInftyAlgebra A = contracted_two();
  Pairing gp = gen::lambda_two_pairing();
  gp.mat.at(0, 3) = 2;
  gp.mat.at(3, 0) = 2;
  // relations still hold, but the contraction is no longer cyclic for gp
  CHECK_THROWS_WITH_AS(compute_filtered_potential(A, gp, 3),
                       doctest::Contains("not cyclic"), Error);
}

TEST_CASE("the identity leaves the filtered potential fixed") {
  FilteredAInftyAlgebra A = curved_theta(7, 4, 5);
  Pairing g = gen::lambda_theta_pairing();
  FilteredAInftyMorphism id = identity_filtered(A);
  RelationReport rep = check_filtered_potential_invariance(A, g, A, g, id, 3);
  CHECK(rep.pass());
  CHECK(rep.notes[0] == "constant difference = 0");
}

TEST_CASE("filtered potentials transform cyclically up to a constant") {
  std::mt19937_64 rng(4096);
  int nonzero_constants = 0;
  for (int rep = 0; rep < 6; ++rep) {
    const bool with_h0 = rep >= 2;
    gen::FilteredInstance inst = gen::random_filtered(rng, 3, kCap, with_h0);
    RelationReport r = check_filtered_potential_invariance(
        inst.A, inst.g_A, inst.h.source, inst.g_B, inst.h, 3);
    CHECK(r.pass());
    REQUIRE(!r.notes.empty());
    if (!with_h0) {
      CHECK(r.notes[0] == "constant difference = 0");
    } else if (r.notes[0] != "constant difference = 0") {
      ++nonzero_constants;
    }

    // the energy-zero slice reproduces the unfiltered invariance statement
    RelationReport r0 = check_potential_invariance(
        energy_zero_slice(inst.A), inst.g_A, energy_zero_slice(inst.h.source),
        inst.g_B, energy_zero_slice(inst.h), 3);
    CHECK(r0.pass());
  }
  CHECK(nonzero_constants > 0); // h_0 generically shifts the constant term
}

TEST_CASE("unfiltered invariance embeds at energy zero") {
  std::mt19937_64 rng(11);
  gen::CyclicInstance ci = gen::random_cyclic(rng, 3, -1);
  GappedMonoid G;
  FilteredAInftyAlgebra T = filtered_from_unfiltered(ci.seed, G, kCap);
  FilteredAInftyAlgebra S = filtered_from_unfiltered(ci.A, G, kCap);
  FilteredAInftyMorphism H;
  H.source = S;
  H.target = T;
  H.max_arity = ci.to_seed.max_arity;
  for (const auto& [k, C] : ci.to_seed.comps)
    H.comps.emplace(std::make_pair(k, Beta{0, 0}), C);
  RelationReport fr =
      check_filtered_potential_invariance(T, ci.seed_g, S, ci.g, H, 3);
  CHECK(fr.pass());
  CHECK(fr.notes[0] == "constant difference = 0");
  CHECK(check_potential_invariance(ci.seed, ci.seed_g, ci.A, ci.g, ci.to_seed, 3)
            .pass());
}

TEST_CASE("invariance preconditions surface as errors") {
  std::mt19937_64 rng(99);
  gen::FilteredInstance inst = gen::random_filtered(rng, 3, kCap, true);
  FilteredAInftyMorphism bad = inst.h;
  auto it = bad.comps.find(std::make_pair(1, Beta{0, 0}));
  REQUIRE(it != bad.comps.end());
  SparseTensor doubled(1);
  for (const auto& [in, row] : it->second.rows())
    for (const auto& [out, c] : row) doubled.add(in, out, c * 2);
  it->second = doubled; // no longer an isometry
  CHECK_THROWS_WITH_AS(
      check_filtered_potential_invariance(inst.A, inst.g_A, bad.source,
                                          inst.g_B, bad, 3),
      doctest::Contains("morphism is not cyclic"), Error);
}
