#include "avq/poly.hpp"

#include <sstream>

#include "avq/matrix.hpp"

namespace avq {

RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

Int content(const IntPoly& p) {
  Int g = 0;
  for (const auto& x : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (!p.is_zero() && sgn(p.lead()) < 0) g = -g;
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int c = content(p);
  std::vector<Int> out;
  for (const auto& x : p.coeffs()) {
    Int q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    out.push_back(q);
  }
  return IntPoly(std::move(out));
}

IntPoly primitive_part(const RatPoly& p) {
  Int l = 1;
  for (const auto& x : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> c;
  for (const auto& x : p.coeffs()) c.push_back(Int(x * l));
  return primitive_part(IntPoly(std::move(c)));
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = to_rat(a).divrem(to_rat(b));
  if (!r.is_zero()) throw Error(ErrorCode::InvalidInput, "inexact polynomial division");
  std::vector<Int> c;
  for (const auto& x : q.coeffs()) {
    if (x.get_den() != 1) throw Error(ErrorCode::InvalidInput, "non-integral polynomial quotient");
    c.push_back(x.get_num());
  }
  return IntPoly(std::move(c));
}

bool divides(const IntPoly& d, const IntPoly& a) {
  auto [q, r] = to_rat(a).divrem(to_rat(d));
  if (!r.is_zero()) return false;
  for (const auto& x : q.coeffs())
    if (x.get_den() != 1) return false;
  return true;
}

namespace {
template <class T>
std::string poly_str(const Poly<T>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = p.degree(); k >= 0; --k) {
    T c = p.coeff(static_cast<std::size_t>(k));
    if (is_zero(c)) continue;
    bool neg = sgn(c) < 0;
    T a = neg ? T(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = (a == T(1));
    if (k == 0 || !unit) os << to_string(a);
    if (k > 0) os << (unit ? "" : "*") << "X";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}
}  // namespace

std::string to_string(const IntPoly& p) { return poly_str(p); }
std::string to_string(const RatPoly& p) { return poly_str(p); }

RatMatrix companion(const RatPoly& monic) {
  const auto n = static_cast<std::size_t>(monic.degree());
  RatMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -monic.coeff(i) / monic.lead();
  return c;
}

}  // namespace avq
