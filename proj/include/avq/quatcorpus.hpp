#pragma once

#include <array>
#include <string>
#include <vector>

#include "avq/arith.hpp"
#include "avq/matrix.hpp"
#include "avq/tamerep.hpp"

namespace avq {

/// Hilbert symbol (a, b)_v for nonzero rationals; v = 0 denotes the real place.
int hilbert_symbol(const Rat& a, const Rat& b, long v);

/// Places where (a, b) ramifies, sorted, with 0 (infinity) first when present.
std::vector<long> ramification(const Rat& a, const Rat& b);

/// The quaternion algebra with i^2 = a, j^2 = b, ij = -ji.
struct QuaternionAlg {
  Rat a, b;
  friend bool operator==(const QuaternionAlg&, const QuaternionAlg&) = default;
};

/// Element x0 + x1 i + x2 j + x3 k (k = ij). A default-algebra element
/// (a = b = 0) is a rational scalar and combines with any algebra.
class Quat {
 public:
  Quat() = default;
  Quat(long c) { x_[0] = c; }
  Quat(const Rat& c) { x_[0] = c; }
  Quat(const QuaternionAlg& alg, std::array<Rat, 4> x) : alg_(alg), x_(std::move(x)), has_alg_(true) {}

  const std::array<Rat, 4>& coords() const { return x_; }
  bool is_zero() const;
  Quat conj() const;
  Rat reduced_norm() const;
  Rat reduced_trace() const { return 2 * x_[0]; }
  Quat inverse() const;

  friend Quat operator+(const Quat& a, const Quat& b);
  friend Quat operator-(const Quat& a, const Quat& b);
  friend Quat operator-(const Quat& a) { return Quat(0) - a; }
  friend Quat operator*(const Quat& a, const Quat& b);
  /// Right division a b^-1.
  friend Quat operator/(const Quat& a, const Quat& b) { return a * b.inverse(); }
  Quat& operator+=(const Quat& o) { return *this = *this + o; }
  Quat& operator-=(const Quat& o) { return *this = *this - o; }
  Quat& operator*=(const Quat& o) { return *this = *this * o; }
  friend bool operator==(const Quat& a, const Quat& b) { return a.x_ == b.x_; }

 private:
  static QuaternionAlg join(const Quat& a, const Quat& b, bool& has);
  QuaternionAlg alg_;
  std::array<Rat, 4> x_{};
  bool has_alg_ = false;
};

inline bool is_zero(const Quat& x) { return x.is_zero(); }

using QuatMatrix = Matrix<Quat>;

struct DpInfinity {
  long p = 0;
  QuaternionAlg alg;
  long auxiliary_prime = 0;     // r in (-r, -p) for p = 1 mod 8, else 0
  std::vector<long> ramified;   // verified to be {infinity, p}
};

/// D_{p,infinity}: (-1,-p) for p = 3 mod 4, (-2,-p) for p = 5 mod 8, and
/// (-r,-p) with r the least suitable prime for p = 1 mod 8.
DpInfinity dpinfty(long p, long budget = 100000);

struct TauReport {
  long p = 0;
  DpInfinity algebra;
  QuatMatrix f0;
  QuatMatrix tau;
  bool phi8_vanishes = false;       // tau^4 + 1 = 0
  bool frobenius_relation = false;  // f0 tau = tau^p f0
  Rat norm_squared;                 // det of tau on Q^8, the square of its reduced norm
};

/// Builds f0 = diag(j, j) and the tau of the residue class of p mod 8 and
/// checks both relations exactly. Throws InvalidInput for p = 1 mod 8 or
/// p even, RelationViolation if a relation fails.
TauReport verify_tau(long p);

struct EllipticCase {
  long e = 0;
  long p = 0;
  QElementaryDescriptor descriptor;
  IntPoly frobenius;  // characteristic polynomial of phi_0
  bool ordinary = false;
};

/// The 2-dimensional descriptor with inertia Phi_e (e in {3,4,6}): ordinary
/// X^2 - tX + p with Q(pi) = Q(zeta_e) when p = 1 mod e, and pi = -p over
/// F_{p^2} when p = -1 mod e.
EllipticCase elliptic_descriptor(long e, long p);

}  // namespace avq
