#pragma once

#include <utility>
#include <vector>

#include "avq/arith.hpp"
#include "avq/poly.hpp"

namespace avq {

struct Factor {
  IntPoly poly;
  long multiplicity = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Irreducible factorization over Q of a nonzero integer polynomial.
///
/// Factors are primitive with positive leading coefficient and sorted by
/// (degree, coefficients). The leftover integer content (with sign) is
/// returned through `unit` when requested, so that
/// unit * prod(factor^mult) == p.
std::vector<Factor> factor_over_z(const IntPoly& p, Int* unit = nullptr);

bool is_irreducible(const IntPoly& p);

/// Squarefree decomposition over Q (Yun): pairs (monic squarefree part, multiplicity).
std::vector<std::pair<RatPoly, long>> squarefree_decomposition(const RatPoly& p);
RatPoly squarefree_part(const RatPoly& p);

/// Number of distinct real roots of p in the open interval (a, b).
/// Throws EndpointRoot when p(a) or p(b) vanishes.
long sturm_count(const RatPoly& p, const Rat& a, const Rat& b);
/// Number of distinct real roots on the whole line.
long real_root_count(const RatPoly& p);
/// A rational strictly larger than the absolute value of every complex root.
Rat cauchy_bound(const RatPoly& p);

IntPoly cyclotomic(long r);

Rat resultant(const RatPoly& p, const RatPoly& q);

/// Res_Y(m(Y), F(X, Y)) where F is given by coefficients in X whose entries
/// are polynomials in Y. Computed by evaluation at integer points and
/// interpolation; the X-degree of the result is bounded by deg_X F * deg m.
RatPoly resultant_in_y(const RatPoly& m, const std::vector<RatPoly>& f_by_x_degree);

/// Lagrange interpolation through (xs[i], ys[i]).
RatPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

/// Ordering used for deterministic output: by degree, then coefficients.
bool poly_less(const IntPoly& a, const IntPoly& b);

}  // namespace avq
