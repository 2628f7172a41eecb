#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace avq {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Int& x) { return sgn(x) == 0; }
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

/// Exponent of the prime `l` in a nonzero integer.
long valuation(const Int& x, const Int& l);
/// Exponent of `l` in a nonzero rational (may be negative).
long valuation(const Rat& x, const Int& l);

Int ipow(const Int& base, unsigned long e);
Int powmod(const Int& base, const Int& e, const Int& m);
/// Inverse modulo m; throws InvalidInput when not invertible.
Int invmod(const Int& a, const Int& m);
/// Representative of x mod m in (-m/2, m/2].
Int symmetric_mod(const Int& x, const Int& m);
Int mod(const Int& x, const Int& m);

bool is_prime(long n);
bool is_prime(const Int& n);
long euler_phi(long n);
std::vector<long> prime_factors(long n);
std::vector<long> divisors(long n);
/// Multiplicative order of a modulo n (gcd(a,n)=1, n>=1). Order mod 1 is 1.
long mult_order(long a, long n);
long gcd_l(long a, long b);
long lcm_l(long a, long b);

/// "num/den" for non-integers, plain decimal otherwise.
std::string to_string(const Rat& q);
std::string to_string(const Int& z);
/// Accepts "a", "-a", "a/b".
Rat parse_rational(const std::string& s);

}  // namespace avq
