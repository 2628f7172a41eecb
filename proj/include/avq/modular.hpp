#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "avq/arith.hpp"
#include "avq/poly.hpp"

namespace avq::modp {

// Polynomials over F_p for word-sized p, coefficients in [0, p), lowest
// degree first, no trailing zeros.
using Coeffs = std::vector<std::int64_t>;

struct Field {
  std::int64_t p;
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % p + p) % p; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
  }
  std::int64_t inv(std::int64_t a) const;
  std::int64_t reduce(const Int& x) const;
};

void trim(Coeffs& a);
Coeffs from_int(const IntPoly& f, const Field& F);
long deg(const Coeffs& a);
Coeffs add(const Coeffs& a, const Coeffs& b, const Field& F);
Coeffs sub(const Coeffs& a, const Coeffs& b, const Field& F);
Coeffs mul(const Coeffs& a, const Coeffs& b, const Field& F);
std::pair<Coeffs, Coeffs> divrem(const Coeffs& a, const Coeffs& b, const Field& F);
Coeffs rem(const Coeffs& a, const Coeffs& b, const Field& F);
Coeffs monic(const Coeffs& a, const Field& F);
Coeffs gcd(Coeffs a, Coeffs b, const Field& F);
/// s*a + t*b = gcd (monic); returns {g, s, t}.
struct Bezout {
  Coeffs g, s, t;
};
Bezout xgcd(const Coeffs& a, const Coeffs& b, const Field& F);
Coeffs powmod(Coeffs base, Int e, const Coeffs& m, const Field& F);
Coeffs derivative(const Coeffs& a, const Field& F);
bool is_squarefree(const Coeffs& a, const Field& F);

struct ModFactor {
  Coeffs poly;  // monic irreducible
  long multiplicity;
};

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// (Berlekamp after a characteristic-p squarefree decomposition). The
/// leading coefficient is dropped. Output sorted by (degree, coefficients).
std::vector<ModFactor> factor(const Coeffs& f, const Field& F);

/// Kernel of a matrix over F_p given row-major as rows x cols; returns basis rows.
std::vector<Coeffs> kernel(std::vector<std::vector<std::int64_t>> m, std::size_t cols,
                           const Field& F);

}  // namespace avq::modp

namespace avq {

/// Lifts f = lc(f) * prod(factors) mod p to the same shape mod p^k.
/// The factors must be monic, pairwise coprime mod p and f squarefree mod p.
/// Returned lifts are monic with coefficients in [0, p^k).
std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<modp::Coeffs>& factors,
                                 std::int64_t p, unsigned long k);

IntPoly reduce_coeffs(const IntPoly& f, const Int& m);
IntPoly symmetric_coeffs(const IntPoly& f, const Int& m);

}  // namespace avq
