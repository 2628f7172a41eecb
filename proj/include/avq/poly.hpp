#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "avq/arith.hpp"
#include "avq/error.hpp"

namespace avq {

namespace detail {
// Unqualified call so that scalars declared after this header are found by ADL.
template <class T>
bool scalar_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

// Dense univariate polynomial, coefficients lowest degree first. The scalar
// only needs ring operators, construction from int and an is_zero overload;
// division additionally needs a field.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

  void set_coeff(std::size_t k, const T& a) {
    if (k >= c_.size()) c_.resize(k + 1, T(0));
    c_[k] = a;
    trim();
  }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> d(c_.size() - 1, T(0));
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return Poly(std::move(d));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Poly() - a; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::scalar_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Poly& a, const T& s) {
    std::vector<T> r(a.c_);
    for (auto& x : r) x = x * s;
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& s, const Poly& a) { return a * s; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Quotient and remainder; requires an invertible leading coefficient.
  std::pair<Poly, Poly> divrem(const Poly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::InvalidInput, "polynomial division by zero");
    std::vector<T> r(c_);
    long dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<T> q(static_cast<std::size_t>(degree() - dd + 1), T(0));
    T inv = T(1) / d.lead();
    for (long k = degree(); k >= dd; --k) {
      T f = r[static_cast<std::size_t>(k)] * inv;
      q[static_cast<std::size_t>(k - dd)] = f;
      if (detail::scalar_zero(f)) continue;
      for (long j = 0; j <= dd; ++j)
        r[static_cast<std::size_t>(k - dd + j)] =
            r[static_cast<std::size_t>(k - dd + j)] - f * d.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(dd));
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divrem(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divrem(b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (T(1) / lead());
  }

  /// this(inner(X)).
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  /// this(X^k).
  Poly inflate(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<T> r((c_.size() - 1) * k + 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
    return Poly(std::move(r));
  }

  /// X^deg * this(1/X).
  Poly reversed() const {
    std::vector<T> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::scalar_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Poly<T> pow(Poly<T> base, unsigned long e) {
  Poly<T> acc = Poly<T>::constant(T(1));
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

template <class T>
Poly<T> powmod(Poly<T> base, Int e, const Poly<T>& m) {
  Poly<T> acc = Poly<T>::constant(T(1)) % m;
  base = base % m;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = (acc * base) % m;
    e >>= 1;
    if (sgn(e) > 0) base = (base * base) % m;
  }
  return acc;
}

/// Monic gcd over a field.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    Poly<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

RatPoly to_rat(const IntPoly& p);
/// Content (positive gcd of coefficients, sign of leading coefficient folded
/// into the primitive part so that it has positive leading coefficient).
Int content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
/// Clears denominators and returns the primitive integer polynomial.
IntPoly primitive_part(const RatPoly& p);
/// Exact division in Z[X]; throws InvalidInput if not exact.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& d, const IntPoly& a);

std::string to_string(const IntPoly& p);
std::string to_string(const RatPoly& p);

}  // namespace avq
