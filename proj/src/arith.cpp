#include "avq/arith.hpp"

#include <algorithm>
#include <cstdlib>

#include "avq/error.hpp"

namespace avq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::NotWeil: return "not-weil";
    case ErrorCode::EndpointRoot: return "endpoint-root";
    case ErrorCode::PrecisionExhausted: return "precision-exhausted";
    case ErrorCode::IrrationalSplit: return "irrational-split";
    case ErrorCode::SearchBudgetExceeded: return "search-budget-exceeded";
    case ErrorCode::RandomizedInconclusive: return "randomized-inconclusive";
    case ErrorCode::CentreMismatch: return "centre-mismatch";
    case ErrorCode::RelationViolation: return "relation-violation";
  }
  return "unknown";
}

long valuation(const Int& x, const Int& l) {
  if (sgn(x) == 0) throw Error(ErrorCode::InvalidInput, "valuation of zero");
  Int y = x;
  long v = 0;
  while (mpz_divisible_p(y.get_mpz_t(), l.get_mpz_t())) {
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), l.get_mpz_t());
    ++v;
  }
  return v;
}

long valuation(const Rat& x, const Int& l) {
  return valuation(Int(x.get_num()), l) - valuation(Int(x.get_den()), l);
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int powmod(const Int& base, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorCode::InvalidInput, "element not invertible modulo " + m.get_str());
  return r;
}

Int mod(const Int& x, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int symmetric_mod(const Int& x, const Int& m) {
  Int r = mod(x, m);
  if (2 * r > m) r -= m;
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime(const Int& n) { return sgn(n) > 0 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

long gcd_l(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

long euler_phi(long n) {
  long r = n;
  for (long q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

long mult_order(long a, long n) {
  if (n == 1) return 1;
  a %= n;
  if (a < 0) a += n;
  if (gcd_l(a, n) != 1) throw Error(ErrorCode::InvalidInput, "order of a non-unit");
  long x = a, k = 1;
  while (x != 1) {
    x = x * a % n;
    ++k;
  }
  return k;
}

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rational(const std::string& s) {
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0)
    throw Error(ErrorCode::InvalidInput, "bad rational literal '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace avq
