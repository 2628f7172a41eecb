#pragma once

#include <optional>
#include <vector>

#include "avq/arith.hpp"
#include "avq/poly.hpp"

namespace avq {

struct WeilFactor {
  IntPoly g;  // monic irreducible
  long multiplicity = 1;
  Int q;
  friend bool operator==(const WeilFactor&, const WeilFactor&) = default;
};

/// h with g(X) = X^(deg g / 2) * h(X + q/X), when g satisfies the
/// functional equation X^n g(q/X) = q^(n/2) g(X). Computed by peeling
/// coefficients from the top.
std::optional<IntPoly> real_weil_transform(const IntPoly& g, const Int& q);

/// True iff every complex root of the monic irreducible g has modulus sqrt(q).
/// Throws InvalidInput when g is not monic irreducible.
bool is_weil_minpoly(const IntPoly& g, const Int& q);

/// Every irreducible factor is Weil for q = p and X^2 - p occurs to even power.
bool is_p_weil_poly(const IntPoly& P, long p);

/// Monic polynomial whose roots are the s-th powers of the roots of P.
RatPoly base_change(const RatPoly& P, long s);
IntPoly base_change(const IntPoly& P, long s);

/// Factorization into certified Weil factors; throws NotWeil naming the
/// first offending factor.
std::vector<WeilFactor> weil_split(const IntPoly& P, long p);

}  // namespace avq
