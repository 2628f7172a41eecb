#include "avq/quatcorpus.hpp"

#include <algorithm>

#include "avq/error.hpp"

namespace avq {

namespace {

// a = n/d has the square class of n d.
Int square_class_int(const Rat& a) {
  Rat c = a;
  c.canonicalize();
  return c.get_num() * c.get_den();
}

long val_and_unit(Int& x, long v) {
  long k = 0;
  const Int V(v);
  while (x % V == 0) {
    x /= V;
    ++k;
  }
  return k;
}

int legendre(const Int& u, long v) {
  Int r = u % Int(v);
  if (r < 0) r += v;
  return mpz_legendre(r.get_mpz_t(), Int(v).get_mpz_t());
}

int mod8(const Int& u) {
  Int r = u % Int(8);
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, long v) {
  if (sgn(a) == 0 || sgn(b) == 0) throw Error(ErrorCode::InvalidInput, "Hilbert symbol of zero");
  Int A = square_class_int(a), B = square_class_int(b);
  if (v == 0) return (A < 0 && B < 0) ? -1 : 1;
  if (v < 2 || !is_prime(v)) throw Error(ErrorCode::InvalidInput, "Hilbert symbol at a non-place");
  long al = val_and_unit(A, v), be = val_and_unit(B, v);
  if (v == 2) {
    int u = mod8(A), w = mod8(B);
    int eps_u = ((u - 1) / 2) % 2, eps_w = ((w - 1) / 2) % 2;
    int om_u = ((u * u - 1) / 8) % 2, om_w = ((w * w - 1) / 8) % 2;
    int e = eps_u * eps_w + static_cast<int>(al % 2) * om_w + static_cast<int>(be % 2) * om_u;
    return e % 2 ? -1 : 1;
  }
  int sign = ((al * be) % 2 == 1 && ((v - 1) / 2) % 2 == 1) ? -1 : 1;
  if (be % 2) sign *= legendre(A, v);
  if (al % 2) sign *= legendre(B, v);
  return sign;
}

std::vector<long> ramification(const Rat& a, const Rat& b) {
  std::vector<long> places{0, 2};
  for (const Int& x : {square_class_int(a), square_class_int(b)}) {
    Int y = abs(x);
    if (!y.fits_slong_p()) throw Error(ErrorCode::InvalidInput, "Hilbert symbol arguments too large");
    for (long q : prime_factors(y.get_si())) places.push_back(q);
  }
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  std::vector<long> out;
  for (long v : places)
    if (hilbert_symbol(a, b, v) == -1) out.push_back(v);
  return out;
}

// ------------------------------------------------------------------ Quat

QuaternionAlg Quat::join(const Quat& a, const Quat& b, bool& has) {
  has = a.has_alg_ || b.has_alg_;
  if (a.has_alg_ && b.has_alg_ && !(a.alg_ == b.alg_))
    throw Error(ErrorCode::InvalidInput, "arithmetic between different quaternion algebras");
  return a.has_alg_ ? a.alg_ : b.alg_;
}

bool Quat::is_zero() const {
  return std::all_of(x_.begin(), x_.end(), [](const Rat& c) { return sgn(c) == 0; });
}

Quat Quat::conj() const {
  Quat q = *this;
  for (int k = 1; k < 4; ++k) q.x_[k] = -q.x_[k];
  return q;
}

Rat Quat::reduced_norm() const {
  const Rat &a = alg_.a, &b = alg_.b;
  return x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] + a * b * x_[3] * x_[3];
}

Quat Quat::inverse() const {
  Rat n = reduced_norm();
  if (sgn(n) == 0) throw Error(ErrorCode::InvalidInput, "quaternion is not invertible");
  Quat q = conj();
  for (auto& c : q.x_) c /= n;
  return q;
}

Quat operator+(const Quat& a, const Quat& b) {
  Quat q;
  q.alg_ = Quat::join(a, b, q.has_alg_);
  for (int k = 0; k < 4; ++k) q.x_[k] = a.x_[k] + b.x_[k];
  return q;
}

Quat operator-(const Quat& a, const Quat& b) {
  Quat q;
  q.alg_ = Quat::join(a, b, q.has_alg_);
  for (int k = 0; k < 4; ++k) q.x_[k] = a.x_[k] - b.x_[k];
  return q;
}

Quat operator*(const Quat& x, const Quat& y) {
  Quat q;
  q.alg_ = Quat::join(x, y, q.has_alg_);
  const Rat &a = q.alg_.a, &b = q.alg_.b;
  const auto &u = x.x_, &v = y.x_;
  q.x_[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
  q.x_[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
  q.x_[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
  q.x_[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
  return q;
}

// ------------------------------------------------------------- D_{p,inf}

DpInfinity dpinfty(long p, long budget) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "D_{p,infinity} needs an odd prime p");
  DpInfinity d;
  d.p = p;
  const std::vector<long> want{0, p};
  auto accept = [&](long a) {
    d.alg = {Rat(-a), Rat(-p)};
    d.ramified = ramification(d.alg.a, d.alg.b);
    return d.ramified == want;
  };
  if (p % 4 == 3 && accept(1)) return d;
  if (p % 8 == 5 && accept(2)) return d;
  for (long r = 3; r <= budget; r += 4) {
    if (!is_prime(r) || r == p) continue;
    if (accept(r)) {
      d.auxiliary_prime = r;
      return d;
    }
  }
  throw Error(ErrorCode::SearchBudgetExceeded, "no auxiliary prime found for D_{p,infinity}");
}

// ------------------------------------------------------------------ tau

namespace {

// Left multiplication by q on D in the basis 1, i, j, k.
RatMatrix left_mult(const Quat& q, const QuaternionAlg& alg) {
  RatMatrix m(4, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<Rat, 4> e{};
    e[c] = 1;
    Quat col = q * Quat(alg, e);
    for (std::size_t r = 0; r < 4; ++r) m(r, c) = col.coords()[r];
  }
  return m;
}

}  // namespace

TauReport verify_tau(long p) {
  if (p < 3 || !is_prime(p) || p % 8 == 1)
    throw Error(ErrorCode::InvalidInput, "tau is only defined for odd p not congruent to 1 mod 8");
  TauReport rep;
  rep.p = p;
  rep.algebra = dpinfty(p);
  const QuaternionAlg& A = rep.algebra.alg;
  auto q = [&](Rat x0, Rat x1, Rat x2, Rat x3) { return Quat(A, {x0, x1, x2, x3}); };
  const Quat i = q(0, 1, 0, 0), j = q(0, 0, 1, 0), one = q(1, 0, 0, 0), zero = q(0, 0, 0, 0);
  const Rat half(1, 2);
  rep.f0 = QuatMatrix(2, 2, {j, zero, zero, j});
  if (p % 8 == 3) {
    rep.tau = QuatMatrix(2, 2, {zero, q(-half, half, 0, 0), one - i, zero});
  } else if (p % 8 == 5) {
    Quat xi_inv = i.inverse();
    rep.tau = QuatMatrix(2, 2, {xi_inv, xi_inv, -xi_inv, xi_inv});
  } else {
    rep.tau = QuatMatrix(2, 2, {zero, q(half, half, 0, 0), one + i, zero});
  }
  QuatMatrix t4 = pow(rep.tau, 4);
  rep.phi8_vanishes = (t4 + QuatMatrix::identity(2)).is_zero();
  rep.frobenius_relation = rep.f0 * rep.tau == pow(rep.tau, static_cast<unsigned long>(p)) * rep.f0;

  RatMatrix big(8, 8);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      RatMatrix L = left_mult(rep.tau(r, c), A);
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) big(4 * r + a, 4 * c + b) = L(a, b);
    }
  rep.norm_squared = determinant(big);
  if (!rep.phi8_vanishes || !rep.frobenius_relation)
    throw Error(ErrorCode::RelationViolation, "tau relations fail for p = " + std::to_string(p));
  return rep;
}

// -------------------------------------------------------------- elliptic

EllipticCase elliptic_descriptor(long e, long p) {
  if (e != 3 && e != 4 && e != 6) throw Error(ErrorCode::InvalidInput, "e must be 3, 4 or 6");
  if (!is_prime(p) || gcd_l(e, p) != 1) throw Error(ErrorCode::InvalidInput, "p must be a prime not dividing e");
  EllipticCase c;
  c.e = e;
  c.p = p;
  if (p % e == 1) {
    const long d = e == 4 ? 1 : 3;  // Q(zeta_e) = Q(sqrt(-d))
    for (long t = 1; t * t < 4 * p; ++t) {
      long m2 = 4 * p - t * t;
      if (m2 % d) continue;
      Int m(m2 / d), r;
      mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
      if (r * r != m) continue;
      c.frobenius = IntPoly{Int(p), Int(-t), Int(1)};
      c.descriptor = {e, c.frobenius, 2};
      c.ordinary = t % p != 0;
      return c;
    }
    throw Error(ErrorCode::InvalidInput, "no Frobenius trace with CM by Q(zeta_e)");
  }
  c.frobenius = IntPoly{Int(p), Int(0), Int(1)};
  c.descriptor = {e, IntPoly{Int(p), Int(1)}, 2};
  c.ordinary = false;
  return c;
}

}  // namespace avq
