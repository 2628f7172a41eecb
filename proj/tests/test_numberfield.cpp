#include <set>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/numberfield.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace avq;
using avq::test::ip;

namespace {
NfPoly product(const std::vector<NfFactor>& fs) {
  NfPoly acc = NfPoly::constant(NfElement(1));
  for (const auto& f : fs)
    for (long i = 0; i < f.multiplicity; ++i) acc *= f.poly;
  return acc;
}
}  // namespace

TEST_CASE("field construction and element arithmetic") {
  CHECK_THROWS_AS(NumberField(ip({-4, 0, 1})), Error);
  CHECK_THROWS_AS(NumberField(ip({1, 0, 2})), Error);
  NumberField K(ip({-2, 0, 0, 1}));
  NfElement a = K.gen();
  CHECK(a * a * a == NfElement(2));
  NfElement b = a * a + a + NfElement(1);
  CHECK(b * b.inverse() == NfElement(1));
  // Norm of 1 + a + a^2 in Q(2^(1/3)): (a^3 - 1)/(a - 1) has norm 1/N(a - 1) = 1/1.
  CHECK(b.norm() == 1);
  CHECK(a.norm() == 2);
  CHECK(a.minpoly() == to_rat(ip({-2, 0, 0, 1})));
}

TEST_CASE("factorization over number fields") {
  NumberField Qi(ip({1, 0, 1}));
  auto f = nf_factor(Qi, to_nf(Qi, ip({1, 0, 1})));
  REQUIRE(f.size() == 2);
  CHECK(f[0].poly.degree() == 1);
  CHECK(product(f) == to_nf(Qi, ip({1, 0, 1})));

  NumberField Qm2(ip({2, 0, 1}));
  auto g = nf_factor(Qm2, to_nf(Qm2, cyclotomic(8)));
  REQUIRE(g.size() == 2);
  CHECK(g[0].poly.degree() == 2);
  CHECK(g[1].poly.degree() == 2);
  CHECK(product(g) == to_nf(Qm2, cyclotomic(8)));

  NumberField Q = NumberField::rationals();
  auto h = nf_factor(Q, to_nf(Q, cyclotomic(8)));
  REQUIRE(h.size() == 1);
  CHECK(h[0].poly.degree() == 4);

  // Repeated factors over the field.
  NfPoly sq = to_nf(Qi, ip({1, 0, 1})) * to_nf(Qi, ip({1, 0, 1})) * to_nf(Qi, ip({-3, 1}));
  auto s = nf_factor(Qi, sq);
  REQUIRE(s.size() == 3);
  CHECK(product(s) == sq);
}

TEST_CASE("factorization refines along the tower Q, Q(i), Q(zeta8)") {
  NumberField Qi(ip({1, 0, 1}));
  NumberField Q8(cyclotomic(8));
  IntPoly P = cyclotomic(8) * ip({1, 0, 1}) * ip({-2, 0, 1});
  auto small = nf_factor(Qi, to_nf(Qi, P));
  auto big = nf_factor(Q8, to_nf(Q8, P));
  CHECK(big.size() > small.size());
  // i in Q(zeta8) is zeta8^2; map each Q(i) factor and check that big factors divide it.
  NfElement i8 = Q8.gen() * Q8.gen();
  for (const auto& sf : small) {
    std::vector<NfElement> c;
    for (const auto& x : sf.poly.coeffs()) c.push_back(NfElement(x.value().coeff(0)) + NfElement(x.value().coeff(1)) * i8);
    NfPoly mapped(std::move(c));
    long covered = 0;
    for (const auto& bf : big)
      if ((mapped % bf.poly).is_zero()) covered += bf.poly.degree();
    CHECK(covered == mapped.degree());
  }
}

TEST_CASE("relative cyclotomic degrees") {
  NumberField Q = NumberField::rationals();
  auto d = cyclotomic_degree_over(Q, 8);
  CHECK(d.degree == 4);
  CHECK(d.H == std::vector<long>{1, 3, 5, 7});

  NumberField Q3(cyclotomic(3));
  auto e = cyclotomic_degree_over(Q3, 3);
  CHECK(e.degree == 1);
  CHECK(e.H == std::vector<long>{1});

  for (long p : {3L, 11L, 19L, 43L}) {
    NumberField F(ip({p, 0, 1}));
    auto c = cyclotomic_degree_over(F, 8);
    CHECK(c.degree == 4);
    CHECK(c.H.size() == 4);
    CHECK(nf_factor(F, to_nf(F, cyclotomic(8))).size() == 1);
  }
}

TEST_CASE("property: relative degree and subgroup structure") {
  std::vector<IntPoly> fields{ip({0, 1}), ip({1, 0, 1}), ip({2, 0, 1}), ip({-2, 0, 1}), ip({-5, 0, 1}),
                              ip({1, 1, 1}), cyclotomic(5), ip({-2, 0, 0, 1})};
  for (const auto& f : fields) {
    NumberField F(f);
    for (long r = 1; r <= 16; ++r) {
      auto c = cyclotomic_degree_over(F, r);
      CHECK(static_cast<long>(c.H.size()) == c.degree);
      CHECK(euler_phi(r) % c.degree == 0);
      std::set<long> H(c.H.begin(), c.H.end());
      for (long a : c.H)
        for (long b : c.H) CHECK(H.count(r == 1 ? 0 : a * b % r) == 1);
    }
  }
}

TEST_CASE("sigma_p") {
  NumberField Q = NumberField::rationals();
  for (long p : {3L, 5L, 7L, 11L}) CHECK(sigma_p_exists(Q, 8, p));
  NumberField Q5(cyclotomic(5));
  CHECK_FALSE(sigma_p_exists(Q5, 5, 7));
  CHECK_FALSE(sigma_p_exists(Q5, 5, 2));
  CHECK(sigma_p_exists(Q5, 5, 11));
  CHECK_THROWS_AS(sigma_p_exists(Q5, 5, 5), Error);
  NumberField F(ip({11, 0, 1}));
  CHECK(sigma_p_exists(F, 8, 11));
  // Periodic in p with period r.
  NumberField G(ip({2, 0, 1}));
  for (long p : {3L, 5L, 7L, 11L, 13L})
    CHECK(sigma_p_exists(G, 8, p) == sigma_p_exists(G, 8, p + 8 * 5));
}

TEST_CASE("real places") {
  CHECK(real_places(NumberField(ip({-7, 0, 1}))) == 2);
  CHECK(real_places(NumberField(ip({7, 0, 1}))) == 0);
  CHECK(real_places(NumberField(ip({-2, 0, 0, 1}))) == 1);
}
