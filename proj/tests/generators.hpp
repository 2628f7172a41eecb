#pragma once

#include <cmath>
#include <random>

#include "avq/arith.hpp"
#include "avq/exactalg.hpp"
#include "avq/poly.hpp"
#include "avq/weilpoly.hpp"

namespace avq::test {

// Random q-Weil minimal polynomial of degree 1, 2, 4 or 6, built from the
// palindromic shape X^d + a X^(d-1) + ... + a q^(d/2-1) X + q^(d/2) and
// filtered through the library predicates.
inline IntPoly random_weil_minpoly(std::mt19937& rng, long q, long max_degree = 6) {
  auto draw = [&](long bound) { return std::uniform_int_distribution<long>(-bound, bound)(rng); };
  const Int Q(q);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    long d = std::uniform_int_distribution<long>(1, max_degree / 2)(rng) * 2;
    std::vector<Int> c(static_cast<std::size_t>(d + 1));
    c[static_cast<std::size_t>(d)] = 1;
    const long h = d / 2;
    for (long i = 1; i <= h; ++i) {
      // |coefficient of X^(d-i)| <= binomial(d,i) q^(i/2)
      long bound = 1;
      for (long j = 0; j < i; ++j) bound = bound * (d - j) / (j + 1);
      double mag = bound * std::pow(std::sqrt(static_cast<double>(q)), static_cast<double>(i));
      Int a(draw(static_cast<long>(std::min(mag, 1e12))));
      c[static_cast<std::size_t>(d - i)] = a;
      if (i < h) c[static_cast<std::size_t>(i)] = a * ipow(Q, static_cast<unsigned long>(h - i));
    }
    c[0] = ipow(Q, static_cast<unsigned long>(h));
    IntPoly g(std::move(c));
    if (is_irreducible(g) && is_weil_minpoly(g, Q)) return g;
  }
  return IntPoly{Int(q), Int(0), Int(1)};
}

}  // namespace avq::test

#include "avq/numberfield.hpp"
#include "avq/tamerep.hpp"

namespace avq::test {

// Random component passing validate; N is a random multiple (1..3) of the
// smallest admissible dimension.
inline QElementaryDescriptor random_valid_component(std::mt19937& rng, long p) {
  const long rs[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 12};
  for (int attempt = 0; attempt < 10000; ++attempt) {
    long r = rs[std::uniform_int_distribution<int>(0, 9)(rng)];
    if (gcd_l(r, p) != 1) continue;
    long s = frobenius_exponent(r, p);
    long q = 1;
    for (long j = 0; j < s; ++j) q *= p;
    QElementaryDescriptor c{r, random_weil_minpoly(rng, q, s <= 2 ? 4 : 2), 1};
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0 && s % 2 == 0) {
      long h = 1;
      for (long j = 0; j < s / 2; ++j) h *= p;
      c.pi_minpoly = IntPoly{Int(std::uniform_int_distribution<int>(0, 1)(rng) ? h : -h), Int(1)};
    }
    NumberField F(c.pi_minpoly);
    if (!sigma_p_exists(F, r, p)) continue;
    long fd = F.degree() * (r <= 2 ? 1 : cyclotomic_degree_over(F, r).degree);
    c.dim = fd * std::uniform_int_distribution<long>(1, 3)(rng);
    if (validate(c, p).ok) return c;
  }
  throw std::runtime_error("no valid component found");
}

}  // namespace avq::test
