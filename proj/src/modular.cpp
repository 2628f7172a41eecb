#include "avq/modular.hpp"

#include <algorithm>

#include "avq/error.hpp"

namespace avq::modp {

std::int64_t Field::inv(std::int64_t a) const {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorCode::InvalidInput, "non-invertible residue");
  return t < 0 ? t + p : t;
}

std::int64_t Field::reduce(const Int& x) const {
  Int r = avq::mod(x, Int(static_cast<long>(p)));
  return r.get_si();
}

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs from_int(const IntPoly& f, const Field& F) {
  Coeffs c;
  for (const auto& x : f.coeffs()) c.push_back(F.reduce(x));
  trim(c);
  return c;
}

long deg(const Coeffs& a) { return static_cast<long>(a.size()) - 1; }

Coeffs add(const Coeffs& a, const Coeffs& b, const Field& F) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, const Field& F) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> divrem(const Coeffs& a, const Coeffs& b, const Field& F) {
  if (b.empty()) throw Error(ErrorCode::InvalidInput, "division by zero polynomial mod p");
  Coeffs r = a;
  if (r.size() < b.size()) return {{}, r};
  Coeffs q(r.size() - b.size() + 1, 0);
  std::int64_t inv = F.inv(b.back());
  for (long k = deg(r); k >= deg(b); --k) {
    std::int64_t f = F.mul(r[static_cast<std::size_t>(k)], inv);
    q[static_cast<std::size_t>(k - deg(b))] = f;
    if (!f) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t idx = static_cast<std::size_t>(k - deg(b)) + j;
      r[idx] = F.sub(r[idx], F.mul(f, b[j]));
    }
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

Coeffs rem(const Coeffs& a, const Coeffs& b, const Field& F) { return divrem(a, b, F).second; }

Coeffs monic(const Coeffs& a, const Field& F) {
  if (a.empty()) return a;
  std::int64_t inv = F.inv(a.back());
  Coeffs r(a);
  for (auto& x : r) x = F.mul(x, inv);
  return r;
}

Coeffs gcd(Coeffs a, Coeffs b, const Field& F) {
  while (!b.empty()) {
    Coeffs r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

Bezout xgcd(const Coeffs& a, const Coeffs& b, const Field& F) {
  Coeffs r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divrem(r0, r1, F);
    r0 = std::move(r1);
    r1 = std::move(r);
    Coeffs s2 = sub(s0, mul(q, s1, F), F);
    Coeffs t2 = sub(t0, mul(q, t1, F), F);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  std::int64_t inv = F.inv(r0.back());
  Coeffs c{inv};
  return {mul(r0, c, F), mul(s0, c, F), mul(t0, c, F)};
}

Coeffs powmod(Coeffs base, Int e, const Coeffs& m, const Field& F) {
  Coeffs acc{1};
  acc = rem(acc, m, F);
  base = rem(base, m, F);
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = rem(mul(acc, base, F), m, F);
    e >>= 1;
    if (sgn(e) > 0) base = rem(mul(base, base, F), m, F);
  }
  return acc;
}

Coeffs derivative(const Coeffs& a, const Field& F) {
  if (a.size() <= 1) return {};
  Coeffs d(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k)
    d[k - 1] = F.mul(a[k], static_cast<std::int64_t>(k % static_cast<std::size_t>(F.p)));
  trim(d);
  return d;
}

bool is_squarefree(const Coeffs& a, const Field& F) {
  if (deg(a) <= 0) return true;
  return deg(gcd(a, derivative(a, F), F)) == 0;
}

std::vector<Coeffs> kernel(std::vector<std::vector<std::int64_t>> m, std::size_t cols,
                           const Field& F) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    std::int64_t inv = F.inv(m[row][c]);
    for (auto& x : m[row]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      std::int64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[row][j]));
    }
    piv.push_back(c);
    ++row;
  }
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Coeffs> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Coeffs v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.sub(0, m[r][f]);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Berlekamp splitting of a monic squarefree polynomial.
std::vector<Coeffs> berlekamp(const Coeffs& f, const Field& F) {
  const std::size_t n = static_cast<std::size_t>(deg(f));
  if (n <= 1) return {f};
  // Row i of Q holds x^(i p) mod f; kernel of (Q - I)^T gives the algebra.
  std::vector<std::vector<std::int64_t>> qt(n, std::vector<std::int64_t>(n, 0));
  Coeffs xp = powmod(Coeffs{0, 1}, Int(static_cast<long>(F.p)), f, F);
  Coeffs cur{1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) qt[j][i] = j < cur.size() ? cur[j] : 0;
    qt[i][i] = F.sub(qt[i][i], 1);
    cur = rem(mul(cur, xp, F), f, F);
  }
  auto basis = kernel(qt, n, F);
  const std::size_t k = basis.size();
  std::vector<Coeffs> facs{f};
  for (auto& v : basis) {
    trim(v);
    if (deg(v) <= 0) continue;
    for (std::int64_t c = 0; c < F.p && facs.size() < k; ++c) {
      std::vector<Coeffs> next;
      Coeffs vc = sub(v, Coeffs{c}, F);
      for (const auto& g : facs) {
        if (deg(g) <= 1) {
          next.push_back(g);
          continue;
        }
        Coeffs h = gcd(g, vc, F);
        if (deg(h) > 0 && deg(h) < deg(g)) {
          next.push_back(h);
          next.push_back(divrem(g, h, F).first);
        } else {
          next.push_back(g);
        }
      }
      facs = std::move(next);
    }
    if (facs.size() == k) break;
  }
  for (auto& g : facs) g = monic(g, F);
  return facs;
}

// p-th root of a polynomial whose derivative vanishes.
Coeffs pth_root(const Coeffs& a, const Field& F) {
  Coeffs r;
  for (std::size_t i = 0; i < a.size(); i += static_cast<std::size_t>(F.p)) r.push_back(a[i]);
  trim(r);
  return r;
}

void sqf_rec(const Coeffs& f, long mult, const Field& F, std::vector<ModFactor>& out) {
  if (deg(f) <= 0) return;
  Coeffs df = derivative(f, F);
  if (df.empty()) {
    sqf_rec(pth_root(f, F), mult * F.p, F, out);
    return;
  }
  Coeffs c = gcd(f, df, F);
  Coeffs w = divrem(f, c, F).first;
  long i = 1;
  while (deg(w) > 0) {
    Coeffs y = gcd(w, c, F);
    Coeffs z = divrem(w, y, F).first;
    if (deg(z) > 0)
      for (auto& g : berlekamp(monic(z, F), F)) out.push_back({g, i * mult});
    ++i;
    w = y;
    c = divrem(c, y, F).first;
  }
  if (deg(c) > 0) sqf_rec(pth_root(c, F), mult * F.p, F, out);
}

}  // namespace

std::vector<ModFactor> factor(const Coeffs& f, const Field& F) {
  if (f.empty()) throw Error(ErrorCode::InvalidInput, "factor of zero polynomial mod p");
  std::vector<ModFactor> out;
  sqf_rec(monic(f, F), 1, F, out);
  // Merge equal factors arising from different squarefree layers.
  std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    return a.poly < b.poly;
  });
  std::vector<ModFactor> merged;
  for (auto& m : out) {
    if (!merged.empty() && merged.back().poly == m.poly)
      merged.back().multiplicity += m.multiplicity;
    else
      merged.push_back(m);
  }
  return merged;
}

}  // namespace avq::modp

namespace avq {

IntPoly reduce_coeffs(const IntPoly& f, const Int& m) {
  std::vector<Int> c;
  for (const auto& x : f.coeffs()) c.push_back(mod(x, m));
  return IntPoly(std::move(c));
}

IntPoly symmetric_coeffs(const IntPoly& f, const Int& m) {
  std::vector<Int> c;
  for (const auto& x : f.coeffs()) c.push_back(symmetric_mod(x, m));
  return IntPoly(std::move(c));
}

namespace {

IntPoly lift_coeffs(const modp::Coeffs& a) {
  std::vector<Int> c;
  for (auto x : a) c.emplace_back(static_cast<long>(x));
  return IntPoly(std::move(c));
}

// Division by a monic polynomial with coefficient reduction mod m.
std::pair<IntPoly, IntPoly> divrem_monic_mod(const IntPoly& a, const IntPoly& h, const Int& m) {
  std::vector<Int> r(a.coeffs());
  long dh = h.degree();
  if (a.degree() < dh) return {IntPoly(), reduce_coeffs(a, m)};
  std::vector<Int> q(static_cast<std::size_t>(a.degree() - dh + 1), Int(0));
  for (long k = a.degree(); k >= dh; --k) {
    Int f = mod(r[static_cast<std::size_t>(k)], m);
    q[static_cast<std::size_t>(k - dh)] = f;
    if (sgn(f) == 0) continue;
    for (long j = 0; j <= dh; ++j) {
      auto idx = static_cast<std::size_t>(k - dh + j);
      r[idx] = mod(r[idx] - f * h.coeffs()[static_cast<std::size_t>(j)], m);
    }
  }
  r.resize(static_cast<std::size_t>(dh));
  return {reduce_coeffs(IntPoly(std::move(q)), m), reduce_coeffs(IntPoly(std::move(r)), m)};
}

// One quadratic Hensel step: f = g h mod m (h monic), s g + t h = 1 mod m.
void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t, const Int& m) {
  Int m2 = m * m;
  IntPoly e = reduce_coeffs(f - g * h, m2);
  auto [q, r] = divrem_monic_mod(s * e, h, m2);
  IntPoly g2 = reduce_coeffs(g + t * e + q * g, m2);
  IntPoly h2 = reduce_coeffs(h + r, m2);
  IntPoly b = reduce_coeffs(s * g2 + t * h2 - IntPoly::constant(Int(1)), m2);
  auto [c, d] = divrem_monic_mod(s * b, h2, m2);
  IntPoly s2 = reduce_coeffs(s - d, m2);
  IntPoly t2 = reduce_coeffs(t - t * b - c * g2, m2);
  g = g2;
  h = h2;
  s = s2;
  t = t2;
}

}  // namespace

std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<modp::Coeffs>& factors,
                                 std::int64_t p, unsigned long k) {
  const modp::Field F{p};
  const Int target = ipow(Int(static_cast<long>(p)), k);
  std::vector<IntPoly> out;
  IntPoly rest = f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    // h = factors[i] (monic), g = lc * prod(remaining) mod p.
    modp::Coeffs gm{F.reduce(rest.lead())};
    for (std::size_t j = i + 1; j < factors.size(); ++j) gm = modp::mul(gm, factors[j], F);
    auto bz = modp::xgcd(gm, factors[i], F);
    if (modp::deg(bz.g) != 0) throw Error(ErrorCode::InvalidInput, "Hensel factors not coprime");
    IntPoly g = lift_coeffs(gm), h = lift_coeffs(factors[i]), s = lift_coeffs(bz.s),
            t = lift_coeffs(bz.t);
    Int m(static_cast<long>(p));
    while (m < target) {
      hensel_step(rest, g, h, s, t, m);
      m *= m;
    }
    out.push_back(reduce_coeffs(h, target));
    rest = reduce_coeffs(g, target);
  }
  // The last factor: rest is lc * u_last mod p^k; make it monic.
  Int inv = invmod(rest.lead(), target);
  out.push_back(reduce_coeffs(rest * inv, target));
  return out;
}

}  // namespace avq
