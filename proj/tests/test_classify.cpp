#include <algorithm>
#include <random>

#include "avq/classify.hpp"
#include "avq/error.hpp"
#include "avq/quatcorpus.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "helpers.hpp"
#include "models.hpp"

using namespace avq;
using avq::test::ip;
using avq::test::OrdinaryModel;

namespace {

Certificate run(long p, std::vector<QElementaryDescriptor> cs) {
  ClassifyInput in;
  in.p = p;
  in.components = std::move(cs);
  return classify(in);
}

IntPoly x2(long c) { return ip({c, 0, 1}); }

void check_sound(const Certificate& c) {
  if (!c.accepted) {
    CHECK_FALSE(c.clause.empty());
    return;
  }
  REQUIRE(c.condition1);
  REQUIRE(c.condition2);
  REQUIRE(c.condition3);
  CHECK(*c.condition1);
  CHECK(*c.condition2);
  CHECK(*c.condition3);
  if (c.condition4) CHECK(*c.condition4);
  long total = 0;
  for (const auto& row : c.components) {
    total += row.component.dim;
    CHECK(row.embedding_ok);
  }
  long dim = 0;
  for (const auto& e : c.isogeny_class) dim += e.dimension * e.exponent;
  CHECK(c.pchar.degree() == total);
  CHECK(2 * dim == total);
  // the componentwise split agrees with factoring the product directly
  if (total <= 16) CHECK(c.weil_factors == weil_split(c.pchar, c.p));
  CHECK(c.pchar.coeff(0) == ipow(Int(c.p), static_cast<unsigned long>(total / 2)));
}

// Everything a certificate states, without the echo of the input order.
auto summary(const Certificate& c) {
  std::vector<QElementaryDescriptor> comps;
  for (const auto& r : c.components) comps.push_back(r.component);
  return std::tuple{c.accepted, c.clause, c.pchar, comps, c.condition1, c.condition2, c.condition3,
                    c.ordinary, c.isogeny_class};
}

}  // namespace

TEST_CASE("quaternion component of inertia order 8") {
  for (long p : {3L, 5L, 7L, 11L, 13L, 19L, 23L, 29L, 31L}) {
    auto c = run(p, {{8, ip({p, 1}), 4}});
    CHECK_MESSAGE(c.accepted, "p=", p, " ", c.clause);
    CHECK(c.decided == "galois-pair");
    CHECK(c.pchar == pow(x2(p), 2));
    REQUIRE(c.isogeny_class.size() == 1);
    CHECK(c.isogeny_class[0].dimension == 1);
    CHECK(c.isogeny_class[0].exponent == 2);
    CHECK(c.citations.size() == 4);
    check_sound(c);
    // same input written as a factor of pchar(phi_0)
    CHECK(descriptor_from_phi0_factor(8, x2(p), 4, p) == QElementaryDescriptor{8, ip({p, 1}), 4});
  }
  for (long p : {17L, 41L, 73L}) {
    auto c = run(p, {{8, ip({p, 1}), 4}});
    CHECK_FALSE(c.accepted);
    CHECK(c.clause == kClauseWeil);
    auto d = run(p, {descriptor_from_phi0_factor(8, x2(p), 4, p)});
    CHECK_FALSE(d.accepted);
    CHECK(d.clause == kClauseDimension);
  }
}

TEST_CASE("phi0 factor with several base-change factors is refused") {
  // X^2 - 3 at r = 4, p = 7: s = 2, base change is (X - 3)^2, fine
  CHECK(descriptor_from_phi0_factor(4, x2(-3), 2, 7).pi_minpoly == ip({-3, 1}));
  // X^2 - X + 1 has roots zeta_6; squared they give zeta_3 and zeta_3^2, one factor
  CHECK_NOTHROW(descriptor_from_phi0_factor(4, ip({1, -1, 1}), 2, 7));
  // (X^2 - 7)(X^2 + 7) becomes (X - 7)^2 (X + 7)^2 after squaring
  CHECK_THROWS_AS(descriptor_from_phi0_factor(4, x2(-7) * x2(7), 4, 7), Error);
}

TEST_CASE("elliptic corpus: accepted, ordinary exactly when p = 1 mod e") {
  for (long e : {3L, 4L, 6L})
    for (long p = 5; p < 98; ++p) {
      if (!is_prime(p)) continue;
      auto ec = elliptic_descriptor(e, p);
      auto c = run(p, {ec.descriptor});
      CHECK_MESSAGE(c.accepted, "e=", e, " p=", p, " ", c.clause);
      CHECK(c.ordinary == ec.ordinary);
      CHECK(c.ordinary == (p % e == 1));
      CHECK(c.pchar == ec.frobenius);
      check_sound(c);
    }
}

TEST_CASE("X^2 - p needs even multiplicity") {
  for (long p : {2L, 3L, 5L, 13L}) {
    auto c = run(p, {{1, x2(-p), 2}});
    CHECK_FALSE(c.accepted);
    CHECK(c.clause == kClauseWeilParity);
    REQUIRE(c.condition1);
    CHECK_FALSE(*c.condition1);

    auto d = run(p, {{1, x2(-p), 4}});
    CHECK(d.accepted);
    REQUIRE(d.isogeny_class.size() == 1);
    CHECK(d.isogeny_class[0].dimension == 2);
    CHECK(d.isogeny_class[0].exponent == 1);
    check_sound(d);
  }
}

TEST_CASE("synthesized isogeny classes") {
  const long p = 5;
  auto a = synthesize_isogeny_class(pow(x2(-p), 2), p);
  REQUIRE(a.size() == 1);
  CHECK(a[0].delta == 2);
  CHECK(a[0].dimension == 2);
  CHECK(a[0].exponent == 1);
  CHECK(a[0].description.find("surface") != std::string::npos);

  auto b = synthesize_isogeny_class(pow(x2(p), 2), p);
  REQUIRE(b.size() == 1);
  CHECK(b[0].delta == 1);
  CHECK(b[0].dimension == 1);
  CHECK(b[0].exponent == 2);
  CHECK(b[0].endomorphism_algebra.find("commutative") != std::string::npos);

  IntPoly ord = ip({5, -2, 1});  // X^2 - 2X + 5, trace prime to 5
  auto mixed = synthesize_isogeny_class(pow(x2(-p), 2) * x2(p) * ord, p);
  REQUIRE(mixed.size() == 3);
  CHECK(std::is_sorted(mixed.begin(), mixed.end(), [](const auto& u, const auto& v) { return poly_less(u.g, v.g); }));
  std::vector<IntPoly> gs{x2(-p), x2(p), ord};
  std::sort(gs.begin(), gs.end(), poly_less);
  for (std::size_t i = 0; i < 3; ++i) CHECK(mixed[i].g == gs[i]);
  CHECK_THROWS_AS(synthesize_isogeny_class(x2(-p), p), Error);
}

TEST_CASE("certificates ignore the order of the components") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    long p = std::vector<long>{3, 5, 7, 11}[static_cast<std::size_t>(trial % 4)];
    std::vector<QElementaryDescriptor> cs;
    int k = std::uniform_int_distribution<int>(2, 4)(rng);
    for (int i = 0; i < k; ++i) {
      cs.push_back(test::random_valid_component(rng, p));
      if (i % 2 == 0) cs.push_back(dual_twist(cs.back(), p));
    }
    auto base = summary(run(p, cs));
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      std::shuffle(cs.begin(), cs.end(), rng);
      CHECK(summary(run(p, cs)) == base);
    }
  }
}

TEST_CASE("doubling every dimension preserves acceptance; soundness coupling") {
  std::mt19937 rng(12);
  int accepted = 0, total = 0;
  while (total < 120) {
    long p = std::vector<long>{3, 5, 7, 11, 13}[static_cast<std::size_t>(total % 5)];
    std::vector<QElementaryDescriptor> cs;
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < k; ++i) {
      auto c = test::random_valid_component(rng, p);
      cs.push_back(c);
      if (std::uniform_int_distribution<int>(0, 4)(rng)) cs.push_back(dual_twist(c, p));
    }
    auto c = run(p, cs);
    check_sound(c);
    ++total;
    if (!c.accepted) continue;
    ++accepted;
    for (auto& d : cs) d.dim *= 2;
    auto c2 = run(p, cs);
    CHECK(c2.accepted);
    check_sound(c2);
  }
  CHECK(accepted >= 100);
}

TEST_CASE("filtered classification on the ordinary CM model") {
  OrdinaryModel m;
  ClassifyInput in;
  in.p = 7;
  in.matrices = MatrixModel{m.F0, m.T};
  in.filtration = m.line(m.generic(5));
  auto c = classify(in);
  CHECK_MESSAGE(c.accepted, c.clause);
  CHECK(c.decided == "abelian-variety");
  REQUIRE(c.condition4);
  CHECK(*c.condition4);
  REQUIRE(c.filtration);
  CHECK(c.filtration->skew_verified);
  CHECK(c.filtration->wa.passed);
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0].component == QElementaryDescriptor{3, ip({7, -5, 1}), 2});
  check_sound(c);

  // a line the inertia does not preserve
  KMatrix e1(2, 1);
  e1(0, 0) = m.g.from_rat(1);
  in.filtration = m.line(e1);
  auto r = classify(in);
  CHECK_FALSE(r.accepted);
  CHECK(r.clause == kClauseGaloisStable);

  // components must match the matrices
  in.filtration = m.line(m.generic(5));
  in.components = {{3, ip({7, -5, 1}), 4}};
  CHECK_THROWS_AS(classify(in), Error);

  ClassifyInput no_matrices;
  no_matrices.p = 7;
  no_matrices.components = {{3, ip({7, -5, 1}), 2}};
  no_matrices.filtration = m.line(m.generic(5));
  CHECK_THROWS_AS(classify(no_matrices), Error);
}

TEST_CASE("filtered mode at p = 2 is refused with its own clause") {
  auto g = build_global_model(2, 3, 2);
  RatMatrix T = companion(to_rat(cyclotomic(3)));
  RatMatrix F0 = RatMatrix::identity(2) + Rat(2) * T;  // 1 + 2 zeta_3 has norm 3, irrelevant here
  KMatrix line(2, 1);
  line(0, 0) = g.from_rat(1);
  ClassifyInput in;
  in.p = 2;
  in.matrices = MatrixModel{F0, T};
  in.filtration = FiltrationInput{g, line};
  try {
    auto c = classify(in);
    CHECK_FALSE(c.accepted);
    CHECK(c.clause == kClauseOddPrime);
  } catch (const Error& e) {
    FAIL("unexpected error: ", e.what());
  }
}
