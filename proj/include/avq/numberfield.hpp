#pragma once

#include <memory>
#include <vector>

#include "avq/arith.hpp"
#include "avq/poly.hpp"

namespace avq {

class NfElement;

/// Q[X]/(f) for a monic irreducible f. Copies share the defining data, so
/// elements can refer back to their field cheaply.
class NumberField {
 public:
  /// Throws InvalidInput unless f is monic and irreducible over Q.
  explicit NumberField(const IntPoly& f);
  static NumberField rationals();

  const IntPoly& defining_poly() const { return d_->f; }
  const RatPoly& modulus() const { return d_->fr; }
  long degree() const { return d_->f.degree(); }

  NfElement gen() const;
  NfElement element(const RatPoly& v) const;
  NfElement from_coords(const std::vector<Rat>& c) const;

  friend bool operator==(const NumberField& a, const NumberField& b) {
    return a.d_ == b.d_ || a.d_->f == b.d_->f;
  }

  struct Data {
    IntPoly f;
    RatPoly fr;
  };

 private:
  explicit NumberField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
  friend class NfElement;
};

/// Element of a number field in the power basis. An element without a parent
/// is a rational constant; it combines with elements of any field, which lets
/// generic code write T(0) and T(1).
class NfElement {
 public:
  NfElement() = default;
  NfElement(long c) : v_(RatPoly::constant(Rat(c))) {}
  NfElement(const Rat& c) : v_(RatPoly::constant(c)) {}
  NfElement(std::shared_ptr<const NumberField::Data> f, RatPoly v);

  bool is_zero() const { return v_.is_zero(); }
  bool is_rational() const { return v_.degree() <= 0; }
  Rat rational_value() const { return v_.coeff(0); }
  /// Representative polynomial in the generator, degree < field degree.
  const RatPoly& value() const { return v_; }
  std::vector<Rat> coords(long degree) const;

  NfElement inverse() const;
  /// Norm to Q.
  Rat norm() const;
  Rat trace() const;
  /// Characteristic polynomial over Q of multiplication by this element.
  RatPoly charpoly() const;
  RatPoly minpoly() const;

  friend NfElement operator+(const NfElement& a, const NfElement& b);
  friend NfElement operator-(const NfElement& a, const NfElement& b);
  friend NfElement operator-(const NfElement& a) { return NfElement(a.f_, -a.v_); }
  friend NfElement operator*(const NfElement& a, const NfElement& b);
  friend NfElement operator/(const NfElement& a, const NfElement& b) { return a * b.inverse(); }
  NfElement& operator+=(const NfElement& o) { return *this = *this + o; }
  NfElement& operator-=(const NfElement& o) { return *this = *this - o; }
  NfElement& operator*=(const NfElement& o) { return *this = *this * o; }
  friend bool operator==(const NfElement& a, const NfElement& b) { return a.v_ == b.v_; }

  const std::shared_ptr<const NumberField::Data>& field_data() const { return f_; }

 private:
  static std::shared_ptr<const NumberField::Data> join(const NfElement& a, const NfElement& b);
  std::shared_ptr<const NumberField::Data> f_;
  RatPoly v_;
};

inline bool is_zero(const NfElement& x) { return x.is_zero(); }

using NfPoly = Poly<NfElement>;

NfPoly to_nf(const NumberField& F, const RatPoly& p);
NfPoly to_nf(const NumberField& F, const IntPoly& p);

struct NfFactor {
  NfPoly poly;  // monic irreducible over the field
  long multiplicity = 1;
};

/// Complete factorization over F into monic irreducibles (Trager). The
/// leading coefficient of P is dropped.
std::vector<NfFactor> nf_factor(const NumberField& F, const NfPoly& P);

struct CyclotomicData {
  long degree;            // [F(zeta_r):F]
  std::vector<long> H;    // exponents a with zeta^a conjugate to zeta over F, sorted
  NfPoly factor;          // the irreducible factor of Phi_r used to compute H
};

CyclotomicData cyclotomic_degree_over(const NumberField& F, long r);

/// True iff zeta -> zeta^p extends to an F-automorphism of F(zeta_r).
bool sigma_p_exists(const NumberField& F, long r, long p);

long real_places(const NumberField& F);

}  // namespace avq
