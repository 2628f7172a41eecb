#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "avq/arith.hpp"
#include "avq/poly.hpp"

namespace avq {

/// Default bound on l-adic working precision, in digits.
inline constexpr long kDefaultPrecisionCap = 4096;

struct PlaceData {
  long ell = 0;
  long e = 1;
  long f = 1;
  /// Valuation of the class of X, normalised so that ord(ell) = e.
  long ord_pi = 0;
  friend bool operator==(const PlaceData&, const PlaceData&) = default;
};

/// N_{F_u/Q_l}(x) = ell^w * unit, with the unit known modulo ell^digits.
struct LocalNorm {
  long w = 0;
  Int unit;
  long digits = 0;
};

/// The decomposition of Q[X]/(g) (x) Q_l into completions, computed from an
/// l-maximal order (Round 2) and lifted orthogonal idempotents.
class LadicSplitting {
 public:
  LadicSplitting(const IntPoly& g, long ell, long precision_cap = kDefaultPrecisionCap);

  long ell() const;
  long degree() const;
  const std::vector<PlaceData>& places() const;

  /// Valuation at place u of an element given in the power basis,
  /// normalised so that ord(ell) = e_u. Throws InvalidInput for zero.
  long ord(std::size_t u, const RatPoly& x) const;
  LocalNorm norm(std::size_t u, const RatPoly& x, long unit_digits) const;

  /// Places at which the residue polynomial h (taken mod ell) vanishes on the class of X.
  std::vector<std::size_t> places_of_residue_factor(const IntPoly& h) const;

  /// Gal(F_u(zeta_r)/F_u) embedded in (Z/r)^x, sorted.
  std::vector<long> cyclotomic_galois_group(std::size_t u, long r) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

std::vector<PlaceData> splitting_at(const IntPoly& g, long ell, long precision_cap = kDefaultPrecisionCap);

/// Lower Newton polygon of g at ell: the list of (slope, horizontal length),
/// slopes increasing. Zero coefficients are skipped.
struct NewtonSegment {
  Rat slope;
  long length;
};
std::vector<NewtonSegment> newton_polygon(const IntPoly& g, long ell);

/// An abelian extension top/base of completions at a place u of F above ell,
/// both inside F_u(zeta_r). Each field is named by the subgroup of
/// Gal(F_u(zeta_r)/F_u) ⊂ (Z/r)^x fixing it: top_group ⊂ base_group.
struct LocalCyclicExt {
  std::shared_ptr<const LadicSplitting> local;
  std::size_t place = 0;
  long r = 1;
  std::vector<long> base_group;
  std::vector<long> top_group;
};

/// Order of x (an element of F, embedded in the base) in base^x / N(top^x).
/// Computed from the cyclotomic norm residue symbol and the transfer to the
/// base; divides [top:base].
long local_norm_order(const LocalCyclicExt& ext, const RatPoly& x);

/// Norm residue symbol of N_{F_u/Q_l}(x) in (Z/r)^x.
long cyclotomic_symbol(const LocalNorm& n, long ell, long r);

/// Order of a modulo the subgroup S of (Z/r)^x.
long order_modulo(long a, const std::vector<long>& S, long r);

/// Subgroup of (Z/r)^x generated by gens, sorted.
std::vector<long> generated_subgroup(const std::vector<long>& gens, long r);

}  // namespace avq
