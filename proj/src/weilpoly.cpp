#include "avq/weilpoly.hpp"

#include "avq/error.hpp"
#include "avq/exactalg.hpp"

namespace avq {

std::optional<IntPoly> real_weil_transform(const IntPoly& g, const Int& q) {
  const long n = g.degree();
  if (n < 0 || n % 2 != 0) return std::nullopt;
  const long m = n / 2;
  if (g.coeff(0) != ipow(q, static_cast<unsigned long>(m))) return std::nullopt;
  // Functional equation: g_k q^k = q^m g_(n-k).
  for (long k = 0; k <= n; ++k) {
    auto uk = static_cast<unsigned long>(k);
    if (g.coeff(uk) * ipow(q, uk) != ipow(q, static_cast<unsigned long>(m)) * g.coeff(static_cast<std::size_t>(n - k)))
      return std::nullopt;
  }
  // g = sum_k c_k X^(m-k) (X^2 + q)^k.
  IntPoly rest = g;
  std::vector<Int> h(static_cast<std::size_t>(m + 1));
  const IntPoly x2q{q, Int(0), Int(1)};
  for (long k = m; k >= 0; --k) {
    Int c = rest.coeff(static_cast<std::size_t>(m + k));
    h[static_cast<std::size_t>(k)] = c;
    if (sgn(c) == 0) continue;
    rest = rest - IntPoly::monomial(c, static_cast<std::size_t>(m - k)) * pow(x2q, static_cast<unsigned long>(k));
  }
  if (!rest.is_zero()) return std::nullopt;
  return IntPoly(std::move(h));
}

namespace {

bool weil_irreducible(const IntPoly& g, const Int& q) {
  const long n = g.degree();
  if (n == 1) return g.coeff(0) * g.coeff(0) == q;
  if (g == IntPoly{-q, Int(0), Int(1)}) return true;
  auto h = real_weil_transform(g, q);
  if (!h) return false;
  // Roots of g are those of X^2 - lambda X + q for lambda a root of h; they
  // lie on the circle iff lambda is real with lambda^2 <= 4q.
  RatPoly hs = squarefree_part(to_rat(*h));
  if (real_root_count(hs) != hs.degree()) return false;
  // h(t) = E(t^2) + t O(t^2); E^2 - Y O^2 has the roots lambda^2.
  std::vector<Rat> e, o;
  for (std::size_t i = 0; i < h->size(); ++i) (i % 2 ? o : e).emplace_back(h->coeff(i));
  RatPoly E(e), O(o);
  RatPoly h2 = E * E - RatPoly::x() * O * O;
  RatPoly s2 = squarefree_part(h2);
  Rat four_q = Rat(4 * q);
  if (is_zero(s2(four_q))) return false;
  return sturm_count(s2, -1, four_q) == real_root_count(s2);
}

}  // namespace

bool is_weil_minpoly(const IntPoly& g, const Int& q) {
  if (sgn(q) <= 0) throw Error(ErrorCode::InvalidInput, "q must be positive");
  if (!g.is_monic() || !is_irreducible(g))
    throw Error(ErrorCode::InvalidInput, to_string(g) + " is not monic irreducible");
  return weil_irreducible(g, q);
}

bool is_p_weil_poly(const IntPoly& P, long p) {
  if (!P.is_monic()) return false;
  const Int q(p);
  if (P.degree() % 2 != 0 || P.coeff(0) != ipow(q, static_cast<unsigned long>(P.degree() / 2))) return false;
  const IntPoly x2p{-q, Int(0), Int(1)};
  for (const auto& f : factor_over_z(P)) {
    if (!weil_irreducible(f.poly, q)) return false;
    if (f.poly == x2p && f.multiplicity % 2 != 0) return false;
  }
  return true;
}

RatPoly base_change(const RatPoly& P, long s) {
  if (s <= 0) throw Error(ErrorCode::InvalidInput, "base change exponent must be positive");
  if (!P.is_monic()) throw Error(ErrorCode::InvalidInput, "base change needs a monic polynomial");
  if (s == 1) return P;
  // Res_Y(P(Y), X - Y^s) = prod (X - lambda^s) for monic P.
  return resultant_in_y(P, {-RatPoly::monomial(Rat(1), static_cast<std::size_t>(s)), RatPoly::constant(1)});
}

IntPoly base_change(const IntPoly& P, long s) {
  RatPoly r = base_change(to_rat(P), s);
  std::vector<Int> c;
  for (const auto& x : r.coeffs()) c.push_back(x.get_num());
  return IntPoly(std::move(c));
}

std::vector<WeilFactor> weil_split(const IntPoly& P, long p) {
  if (!P.is_monic()) throw Error(ErrorCode::InvalidInput, "P must be monic");
  const Int q(p);
  const IntPoly x2p{-q, Int(0), Int(1)};
  std::vector<WeilFactor> out;
  for (const auto& f : factor_over_z(P)) {
    if (!weil_irreducible(f.poly, q))
      throw Error(ErrorCode::NotWeil, "factor " + to_string(f.poly) + " is not a " + std::to_string(p) + "-Weil polynomial");
    if (f.poly == x2p && f.multiplicity % 2 != 0)
      throw Error(ErrorCode::NotWeil, "factor " + to_string(f.poly) + " occurs to odd power");
    out.push_back({f.poly, f.multiplicity, q});
  }
  return out;
}

}  // namespace avq
