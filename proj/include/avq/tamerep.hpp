#pragma once

#include <string>
#include <vector>

#include "avq/arith.hpp"
#include "avq/localdata.hpp"
#include "avq/matrix.hpp"
#include "avq/poly.hpp"

namespace avq {

/// Q-elementary component Delta(r;pi): inertia of order r, pi a p^s-Weil
/// number with minimal polynomial g and s the order of p mod r, dimension N.
/// (r, g, N) determines the component up to isomorphism.
struct QElementaryDescriptor {
  long r = 1;
  IntPoly pi_minpoly;
  long dim = 0;
  friend bool operator==(const QElementaryDescriptor&, const QElementaryDescriptor&) = default;
};

bool descriptor_less(const QElementaryDescriptor& a, const QElementaryDescriptor& b);

/// Sorted by (r, g); identical (r, g) pairs merged by summing dimensions.
std::vector<QElementaryDescriptor> merge_components(std::vector<QElementaryDescriptor> cs);

/// Order of p in (Z/r)^x; 1 for r <= 2.
long frobenius_exponent(long r, long p);

// Clause identifiers, also used in certificates.
inline constexpr const char* kClauseCoprime = "inertia-order-prime-to-p";
inline constexpr const char* kClauseWeil = "pi-is-weil";
inline constexpr const char* kClauseSigmaP = "sigma-p-exists";
inline constexpr const char* kClauseDimension = "dimension-divisibility";

struct ValidationReport {
  bool ok = true;
  std::string clause;  // empty when ok
  std::string message;
  long s = 1;
  long field_degree = 0;  // [F(zeta_r):Q], 0 if not reached
};

ValidationReport validate(const QElementaryDescriptor& c, long p);

/// g(X^s)^(N / (s deg g)): the characteristic polynomial of phi_0 on the
/// component, of degree N. Throws InvalidInput if validation fails.
IntPoly frobenius_charpoly(const QElementaryDescriptor& c, long p);

/// Component of the dual Tate twist: pi replaced by p^s / pi.
QElementaryDescriptor dual_twist(const QElementaryDescriptor& c, long p);

struct TateRow {
  QElementaryDescriptor component;
  long field_degree = 0;  // [F(zeta_r):Q]
  long n = 1;             // n(r;pi)
  bool ok = false;
};

struct TateTypeReport {
  bool ok = true;
  std::vector<TateRow> rows;
};

/// Every merged component has Tate dimension: [F(zeta_r):Q] n(r;pi) | N.
TateTypeReport tate_type(const std::vector<QElementaryDescriptor>& cs, long p,
                         long precision_cap = kDefaultPrecisionCap);

/// Multiplicity of X^2 - p in P.
long multiplicity_of_x2_minus_p(const IntPoly& P, long p);

/// Stable under dual_twist with multiplicities, and X^2 - p occurs an even
/// number of times in the product of the Frobenius polynomials.
bool condition3_unfiltered(const std::vector<QElementaryDescriptor>& cs, long p);

/// Components of the representation given by F0 (Frobenius) and T (a tame
/// inertia generator) with F0 T F0^-1 = T^p. Throws InvalidInput when the
/// matrices violate that model and IrrationalSplit when the Q-elementary
/// pieces are not cut out by rational idempotents of this model.
std::vector<QElementaryDescriptor> decompose_matrices(const RatMatrix& F0, const RatMatrix& T, long p);

}  // namespace avq
