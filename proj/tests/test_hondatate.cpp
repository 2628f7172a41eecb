#include <random>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/hondatate.hpp"
#include "avq/numberfield.hpp"
#include "avq/weilpoly.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace avq;
using avq::test::ip;

namespace {
Rat invariant_sum(const HTClass& h) {
  Rat s = Rat(h.real_invariant_count, 2);
  for (const auto& v : h.invariants_p) s += v.inv;
  s.canonicalize();
  return s;
}
}  // namespace

TEST_CASE("invariant normalisation pins") {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    auto a = ht_invariants(ip({p, 0, 1}), 1, p);
    CHECK(a.delta == 1);
    CHECK(a.endo == EndoKind::Field);
    CHECK(a.real_invariant_count == 0);
    REQUIRE(a.invariants_p.size() == 1);
    CHECK(a.invariants_p[0].inv == 0);

    auto b = ht_invariants(ip({p, 1}), 2, p);
    CHECK(b.delta == 2);
    CHECK(b.endo == EndoKind::QuaternionDpInf);
    REQUIRE(b.invariants_p.size() == 1);
    CHECK(b.invariants_p[0].inv == Rat(1, 2));
    CHECK(b.real_invariant_count == 1);

    auto c = ht_invariants(ip({-p, 0, 1}), 1, p);
    CHECK(c.delta == 2);
    CHECK(c.endo == EndoKind::QuaternionDInf);
    CHECK(c.real_invariant_count == 2);
    REQUIRE(c.invariants_p.size() == 1);
    CHECK(c.invariants_p[0].inv == 0);
  }
}

TEST_CASE("classes with trivial Brauer part") {
  auto a = ht_invariants(ip({5, -1, 1}), 1, 5);  // ordinary, p splits
  CHECK(a.delta == 1);
  CHECK(a.invariants_p.size() == 2);
  // pi = 2 zeta_3 over F_4: 2 inert, f = 2, ord = 2.
  CHECK(ht_invariants(ip({4, 2, 1}), 2, 2).delta == 1);
  // pi = 2i over F_4: 2 ramified, ord = 2.
  CHECK(ht_invariants(ip({4, 0, 1}), 2, 2).delta == 1);
  CHECK(ht_invariants(ip({27, 0, 1}), 3, 3).delta == 1);
}

TEST_CASE("non-Weil input") {
  try {
    ht_invariants(ip({1, 0, 1}), 1, 5);
    FAIL("expected NotWeil");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotWeil);
  }
  CHECK_THROWS_AS(ht_invariants(ip({3, 1, 1}), 1, 5), Error);
}

TEST_CASE("reciprocity and delta on random Weil numbers") {
  std::mt19937 rng(11);
  const long ps[] = {2, 3, 5, 7};
  long seen_big_delta = 0;
  for (int i = 0; i < 200; ++i) {
    long p = ps[i % 4];
    long s = 1 + (i / 4) % 3;
    long q = 1;
    for (long j = 0; j < s; ++j) q *= p;
    IntPoly g = test::random_weil_minpoly(rng, q);
    auto h = ht_invariants(g, s, p);
    Rat sum = invariant_sum(h);
    CHECK_MESSAGE(sum.get_den() == 1, to_string(g));
    long lcm = 1;
    for (const auto& v : h.invariants_p) lcm = lcm_l(lcm, v.inv.get_den().get_si());
    CHECK(h.delta == (h.real_invariant_count > 0 ? 2 : lcm));
    // sum of f * ord over p-places is ord_p of the norm, s deg / 2
    long fo = 0;
    for (const auto& v : h.invariants_p) fo += v.place.f * v.place.ord_pi;
    CHECK(2 * fo == s * g.degree());
    if (h.delta > 2) ++seen_big_delta;
  }
  CHECK(seen_big_delta > 0);
}

TEST_CASE("Schofield embedding") {
  CsaDescriptor Q1{"Q", 1, {}}, Q3{"Q", 3, {}}, Q2{"Q", 2, {}};
  CsaDescriptor D{"Q", 2, {{"p", Rat(1, 2)}, {"inf", Rat(1, 2)}}};
  CsaDescriptor M2D{"Q", 4, D.invariants};
  CHECK(schofield_embeds(Q1, Q3));
  CHECK(schofield_embeds(D, M2D));
  CHECK_FALSE(schofield_embeds(D, Q2));
  CHECK(index_of_difference(D, Q2) == 2);
  auto loc = schofield_embeds_locally(D, Q2);
  CHECK_FALSE(loc.at("p"));
  CHECK_FALSE(loc.at("inf"));
  CsaDescriptor other{"Q(i)", 2, {}};
  try {
    schofield_embeds(D, other);
    FAIL("expected CentreMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CentreMismatch);
  }
  auto h = ht_invariants(ip({7, 1}), 2, 7);
  auto E = endomorphism_algebra(h);
  CHECK(E.degree == 2);
  CHECK(E.invariants.size() == 2);
}

TEST_CASE("n(r;pi) examples") {
  CHECK(n_r_pi(1, ip({5, 1}), 2, 5) == 1);
  CHECK(n_r_pi(2, ip({5, 1}), 2, 5) == 1);
  for (long p : {3L, 7L, 11L, 19L, 23L}) {
    // -p is a norm from Q_2(i) exactly when it is 1 mod 4
    auto ng = oracle::brute_norm_group(ip({1, 0, 1}), 2, 3);
    CHECK(ng.order(0, Int(((-p) % 8 + 8) % 8)) == 1);
    CHECK(n_r_pi(4, ip({p, 1}), 2, p) == 1);
  }
  // pi = +p^(s/2) with -1 in <p mod r>: the real place forces a factor 2
  CHECK(n_r_pi(3, ip({-5, 1}), 2, 5) % 2 == 0);
  CHECK(n_r_pi(4, ip({-7, 1}), 2, 7) % 2 == 0);
  CHECK_THROWS_AS(n_r_pi(8, ip({3, 1}), 1, 3), Error);
}

TEST_CASE("embedding test examples") {
  for (long p : {3L, 11L, 19L, 43L}) {
    auto rep = embedding_test(8, ip({p, 1}), 2, p, 4);
    CHECK(rep.ok);
    CHECK(rep.field_degree == 4);
    CHECK(rep.n == 1);
  }
  // ordinary elliptic with F = Q(zeta_3): X^2 - X + 7 (disc -27)
  auto rep = embedding_test(3, ip({7, -1, 1}), 1, 7, 1);
  CHECK(rep.ok);
  CHECK(rep.field_degree == 1);
  CHECK_FALSE(embedding_test(8, ip({3, 1}), 2, 3, 2).ok);
}

TEST_CASE("n divides s, delta divides the cyclotomic degree, monotonicity in m") {
  std::mt19937 rng(5);
  int checked = 0;
  for (long r : {3L, 4L, 5L, 7L, 8L, 9L, 12L}) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      if (gcd_l(r, p) != 1) continue;
      long s = mult_order(p, r);
      long q = 1;
      for (long j = 0; j < s; ++j) q *= p;
      for (int t = 0; t < 4; ++t) {
        IntPoly g = test::random_weil_minpoly(rng, q, s <= 2 ? 4 : 2);
        NumberField F(g);
        if (!sigma_p_exists(F, r, p)) continue;
        long n = n_r_pi(r, g, s, p);
        CHECK_MESSAGE(s % n == 0, to_string(g), " r=", r);
        auto h = ht_invariants(g, s, p);
        long deg = cyclotomic_degree_over(F, r).degree;
        CHECK_MESSAGE(deg % h.delta == 0, to_string(g), " r=", r);
        long m = deg * n;
        CHECK(embedding_test(r, g, s, p, m).ok);
        CHECK(embedding_test(r, g, s, p, 3 * m).ok);
        ++checked;
      }
    }
  }
  CHECK(checked >= 30);
}
