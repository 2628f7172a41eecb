#include <random>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/filtered.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "models.hpp"

using namespace avq;
using avq::test::ip;
using avq::test::rp;
using avq::test::OrdinaryModel;


TEST_CASE("global model examples") {
  auto a = build_global_model(1, 4, 5);
  CHECK(a.e0_poly().degree() == 1);
  CHECK(a.M() == 4);
  auto b = build_global_model(2, 4, 7);
  CHECK(b.e0_poly() == cyclotomic(4));
  // zeta_4 lies in E0: Phi_4 splits over it
  NumberField E0(b.e0_poly());
  CHECK(nf_factor(E0, to_nf(E0, cyclotomic(4))).size() == 2);
  auto c = build_global_model(1, 1, 11);
  CHECK(c.base().degree() == 1);
  CHECK(c.e() == 1);
  CHECK_THROWS_AS(build_global_model(1, 5, 5), Error);
  CHECK_THROWS_AS(build_global_model(1, 4, 7), Error);  // ord(7 mod 4) = 2
  try {
    build_global_model(2, 1, 13);
    FAIL("expected SearchBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchBudgetExceeded);
    CHECK(e.retriable());
  }
}

TEST_CASE("model invariants") {
  for (auto [s, e, p] : {std::tuple{1L, 3L, 7L}, {2L, 4L, 3L}, {2L, 3L, 5L}, {4L, 5L, 2L}, {1L, 6L, 13L}, {2L, 8L, 3L}}) {
    auto g = build_global_model(s, e, p);
    // inertia has exact order e on t
    KElement x = g.t();
    for (long k = 1; k < e; ++k) {
      x = g.inertia(x);
      CHECK_FALSE(x == g.t());
    }
    CHECK(g.inertia(x) == g.t());
    // Frobenius^s is the identity on E0 and reduces to x -> x^p mod p
    NfElement z = g.zeta_M();
    if (g.m() > 1) {
      NfElement zm = z;
      for (long k = 1; k < g.M() / g.m(); ++k) zm = zm * z;  // zeta_m
      NfElement w = zm;
      for (long k = 0; k < s; ++k) w = g.frobenius(w);
      CHECK(w == zm);
    }
    CHECK(g.valuation(NfElement(p)) == 1);
    CHECK(g.valuation(g.frobenius(z + NfElement(p))) == g.valuation(z + NfElement(p)));
  }
}

TEST_CASE("coefficient field arithmetic") {
  auto g = build_global_model(2, 4, 3);
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int i = 0; i < 30; ++i) {
    KElement x(0);
    KElement tp(1);
    for (long j = 0; j < 4; ++j) {
      x += g.from_base(g.base().element(RatPoly{Rat(c(rng)), Rat(c(rng))})) * tp;
      tp = tp * g.t();
    }
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == KElement(1));
  }
  KElement t = g.t();
  CHECK(t * t * t * t == g.from_rat(3));
}

TEST_CASE("Hodge-Tate type (0,1)") {
  auto g = build_global_model(1, 1, 5);
  KMatrix l(2, 1);
  l(0, 0) = g.from_rat(1);
  CHECK(hodge_tate_check({g, l}, 1));
  KMatrix l4(4, 1);
  l4(0, 0) = g.from_rat(1);
  CHECK_FALSE(hodge_tate_check({g, l4}, 2));
  CHECK_FALSE(hodge_tate_check({g, KMatrix(2, 0)}, 1));
}

TEST_CASE("Galois stability") {
  OrdinaryModel m;
  KMatrix Tk = to_k(m.g, m.T), I = KMatrix::identity(2);
  CHECK(galois_stable_check(m.line(m.v1), Tk, I));
  CHECK(galois_stable_check(m.line(m.generic(5)), Tk, I));
  KMatrix e1(2, 1);
  e1(0, 0) = m.g.from_rat(1);
  CHECK_FALSE(galois_stable_check(m.line(e1), Tk, I));
  // v1 + c v2 without the t^2 twist is not inertia stable
  KMatrix bad(2, 1);
  for (std::size_t i = 0; i < 2; ++i) bad(i, 0) = m.v1(i, 0) + m.v2(i, 0);
  CHECK_FALSE(galois_stable_check(m.line(bad), Tk, I));
  CHECK(galois_stable_check(m.line(KMatrix::identity(2)), Tk, I));
}

TEST_CASE("weak admissibility screening on the ordinary model") {
  OrdinaryModel m;
  REQUIRE(m.val1 + m.val2 == 1);
  auto bad = wa_screen(m.F0, m.T, m.line(m.unit_root()));
  CHECK_FALSE(bad.passed);
  CHECK(bad.global_equal);
  bool found = false;
  for (const auto& s : bad.subobjects)
    if (s.dim == 1 && s.t_h == 1 && s.t_n == 0) found = true;
  CHECK(found);
  for (long c : {1L, 2L, -3L}) {
    auto good = wa_screen(m.F0, m.T, m.line(m.generic(c)));
    CHECK(good.passed);
    CHECK(good.t_n == 1);
    CHECK(good.t_h == 1);
    CHECK(good.subobjects.size() == 3);
  }
  CHECK(wa_screen(m.F0, m.T, m.line(m.v1)).passed == (m.val1 == 1));
}

TEST_CASE("supersingular module has no proper isotypic subobjects") {
  auto g = build_global_model(1, 1, 5);
  RatMatrix F0 = companion(rp({5, 0, 1}));
  KMatrix l(2, 1);
  l(0, 0) = g.from_rat(1);
  l(1, 0) = g.from_rat(7);
  auto rep = wa_screen(F0, RatMatrix::identity(2), {g, l});
  CHECK(rep.passed);
  CHECK(rep.subobjects.size() == 1);
}

TEST_CASE("skew forms with isotropic filtration") {
  OrdinaryModel m;
  for (long c : {1L, 4L}) {
    auto fi = m.line(m.generic(c));
    auto res = skew_form_filtered(m.F0, m.T, 7, fi);
    REQUIRE(res.ok);
    REQUIRE(res.witness.has_value());
    CHECK(res.parameters == 1);
    CHECK(verify_skew_witness(*res.witness, m.F0, m.T, 7, fi));
    CHECK((*res.witness)(0, 0) == 0);
  }
  // whole space cannot be isotropic for a nondegenerate form
  CHECK_FALSE(skew_form_filtered(m.F0, m.T, 7, m.line(KMatrix::identity(2))).ok);
  // X^2 - 5: det F0 = -5 forces B = 0
  auto g = build_global_model(1, 1, 5);
  KMatrix l(2, 1);
  l(0, 0) = g.from_rat(1);
  auto r = skew_form_filtered(companion(rp({-5, 0, 1})), RatMatrix::identity(2), 5, {g, l});
  CHECK_FALSE(r.ok);
  CHECK(r.parameters == 0);
  // tampering with the witness is detected
  auto fi = m.line(m.generic(1));
  auto res = skew_form_filtered(m.F0, m.T, 7, fi);
  RatMatrix W = *res.witness;
  W(0, 1) = W(0, 1) + 1;
  CHECK_FALSE(verify_skew_witness(W, m.F0, m.T, 7, fi));
}

TEST_CASE("skew forms on a 4-dimensional product") {
  // (X^2 - 5)^2 realised as two copies: the space of forms is larger and
  // a nondegenerate one pairs the copies.
  auto g = build_global_model(1, 1, 5);
  RatMatrix C = companion(rp({-5, 0, 1}));
  RatMatrix F0(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      F0(i, j) = C(i, j);
      F0(i + 2, j + 2) = C(i, j);
    }
  KMatrix fil(4, 2);
  fil(0, 0) = g.from_rat(1);
  fil(1, 1) = g.from_rat(1);
  auto fi = FiltrationInput{g, fil};
  auto res = skew_form_filtered(F0, RatMatrix::identity(4), 5, fi);
  REQUIRE(res.ok);
  CHECK(verify_skew_witness(*res.witness, F0, RatMatrix::identity(4), 5, fi));
  auto sampled = skew_form_filtered(F0, RatMatrix::identity(4), 5, fi, 7, 32, false);
  CHECK(sampled.ok);
  CHECK(sampled.method == "sampling");
}
