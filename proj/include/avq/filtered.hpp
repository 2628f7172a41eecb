#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avq/arith.hpp"
#include "avq/localdata.hpp"
#include "avq/matrix.hpp"
#include "avq/numberfield.hpp"

namespace avq {

/// C = B[t]/(t^e - p) with B = Q(zeta_M): an exact global stand-in for the
/// tame field K. t^e - p is Eisenstein at every prime of B above p because
/// p is unramified in B.
struct CoefficientField {
  NumberField base;
  long e = 1;
  long p = 0;
  NfElement zeta_e;    // in base
  NfPoly modulus;      // t^e - p over base
};

/// Element of a CoefficientField as a polynomial in t of degree < e over B.
/// A parentless element is a rational constant, as for NfElement.
class KElement {
 public:
  KElement() = default;
  KElement(long c) : c_(NfPoly::constant(NfElement(c))) {}
  KElement(const Rat& c) : c_(NfPoly::constant(NfElement(c))) {}
  KElement(std::shared_ptr<const CoefficientField> f, NfPoly c);

  bool is_zero() const { return c_.is_zero(); }
  const NfPoly& value() const { return c_; }
  NfElement coeff(long j) const;
  /// Q-coordinates: e blocks of [B:Q] rationals, block j for t^j.
  std::vector<Rat> rational_coords(const CoefficientField& f) const;

  KElement inverse() const;
  friend KElement operator+(const KElement& a, const KElement& b);
  friend KElement operator-(const KElement& a, const KElement& b);
  friend KElement operator-(const KElement& a) { return KElement(a.f_, -a.c_); }
  friend KElement operator*(const KElement& a, const KElement& b);
  friend KElement operator/(const KElement& a, const KElement& b) { return a * b.inverse(); }
  KElement& operator+=(const KElement& o) { return *this = *this + o; }
  KElement& operator-=(const KElement& o) { return *this = *this - o; }
  KElement& operator*=(const KElement& o) { return *this = *this * o; }
  friend bool operator==(const KElement& a, const KElement& b) { return a.c_ == b.c_; }

 private:
  static std::shared_ptr<const CoefficientField> join(const KElement& a, const KElement& b);
  std::shared_ptr<const CoefficientField> f_;
  NfPoly c_;
};

inline bool is_zero(const KElement& x) { return x.is_zero(); }

using KMatrix = Matrix<KElement>;

/// Global model of the tame extension K / K_0 / Q_p with K_0 of degree s and
/// tame ramification e. E0 = Q(zeta_m) with p inert (phi(m) = s, p generating
/// (Z/m)^x) models K_0; B = E0(zeta_e) = Q(zeta_M), M = lcm(m, e).
/// Frobenius lift: zeta -> zeta^p, t -> t. Inertia: t -> zeta_e t.
class GlobalModel {
 public:
  long s() const;
  long e() const;
  long p() const;
  long m() const;
  long M() const;
  /// Defining polynomial of E0; irreducible mod p.
  const IntPoly& e0_poly() const;
  const NumberField& base() const;
  const std::shared_ptr<const CoefficientField>& field() const;

  KElement from_base(const NfElement& b) const;
  KElement from_rat(const Rat& x) const;
  KElement t() const;
  KElement zeta_e() const;
  NfElement zeta_M() const;

  NfElement frobenius(const NfElement& b) const;
  KElement frobenius(const KElement& x) const;
  KElement inertia(const KElement& x) const;

  /// Valuation at a fixed place of B above p, normalised by v(p) = 1.
  long valuation(const NfElement& b) const;

  struct Data;
  explicit GlobalModel(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

 private:
  std::shared_ptr<const Data> d_;
};

/// Throws InvalidInput unless gcd(e, p) = 1 and ord(p mod e) | s, and
/// SearchBudgetExceeded when no m <= budget has phi(m) = s with p inert.
GlobalModel build_global_model(long s, long e, long p, long budget = 256);

KMatrix to_k(const GlobalModel& g, const RatMatrix& m);
KMatrix apply_frobenius(const GlobalModel& g, const KMatrix& m);
KMatrix apply_inertia(const GlobalModel& g, const KMatrix& m);

struct FiltrationInput {
  GlobalModel model;
  KMatrix fil1;  // columns span Fil^1 inside C^(2d)
};

/// dim Fil^1 = d inside a module of dimension 2d, and 0 < d.
bool hodge_tate_check(const FiltrationInput& fi, long d);

/// Fil^1 is carried into itself by x -> A sigma(x) for the inertia and the
/// Frobenius-lift generators, sigma the corresponding ring map of C.
bool galois_stable_check(const FiltrationInput& fi, const KMatrix& inertia, const KMatrix& frobenius);

struct SkewFormResult {
  bool ok = false;
  std::optional<RatMatrix> witness;  // Gram matrix over Q
  long parameters = 0;               // dimension of the space of admissible forms
  std::string method;                // "grid" (exact) or "sampling"
  unsigned long seed = 0;
};

/// Nondegenerate skew form B on Q^n with F0^T B F0 = p B, T^T B T = B and
/// Fil^1 totally isotropic. Exact for at most 6 parameters; above that,
/// random points are sampled up to retry_cap times and failure to find a
/// nonzero determinant raises RandomizedInconclusive.
SkewFormResult skew_form_filtered(const RatMatrix& F0, const RatMatrix& T, long p, const FiltrationInput& fi,
                                  unsigned long seed = 1, long retry_cap = 32, bool exact = true);

/// Re-substitutes a Gram matrix into every constraint.
bool verify_skew_witness(const RatMatrix& B, const RatMatrix& F0, const RatMatrix& T, long p,
                         const FiltrationInput& fi);

struct WaSubobject {
  std::string label;
  long dim = 0;
  long t_h = 0;
  Rat t_n;
  bool ok = true;
};

struct WaReport {
  bool passed = true;
  bool global_equal = true;  // t_N(D) = t_H(D)
  Rat t_n;
  long t_h = 0;
  std::vector<WaSubobject> subobjects;
  std::string label = "screened, not certified";
};

/// Weak admissibility screening over the isotypic subobjects generated by
/// the factors over B of the minimal polynomials of F0^s and T.
WaReport wa_screen(const RatMatrix& F0, const RatMatrix& T, const FiltrationInput& fi);

}  // namespace avq
