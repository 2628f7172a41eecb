#include "avq/localdata.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "avq/error.hpp"
#include "avq/matrix.hpp"
#include "avq/modular.hpp"

namespace avq {

namespace {

using Vec = std::vector<Int>;

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Hermite normal form of the lattice spanned by the rows; zero rows dropped.
std::vector<Vec> hnf(std::vector<Vec> a, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < a.size(); ++col) {
    bool found = false;
    while (true) {
      std::size_t p = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (sgn(a[i][col]) != 0 && (p == a.size() || abs(a[i][col]) < abs(a[p][col]))) p = i;
      if (p == a.size()) break;
      found = true;
      std::swap(a[r], a[p]);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (sgn(a[i][col]) == 0) continue;
        Int q = floor_div(a[i][col], a[r][col]);
        for (std::size_t j = col; j < n; ++j) a[i][j] -= q * a[r][j];
        if (sgn(a[i][col]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (sgn(a[r][col]) < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(a[i][col], a[r][col]);
      if (sgn(q) == 0) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

Int det_bareiss(std::vector<Vec> m) {
  const std::size_t n = m.size();
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<std::vector<std::int64_t>> to_small(const std::vector<Vec>& cols, std::size_t rows, const modp::Field& F) {
  // Matrix with the given vectors as columns.
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = F.reduce(cols[j][i]);
  return m;
}

std::size_t rank_mod(const std::vector<Vec>& cols, std::size_t rows, const modp::Field& F) {
  if (cols.empty()) return 0;
  return cols.size() - modp::kernel(to_small(cols, rows, F), cols.size(), F).size();
}

Vec lift(const modp::Coeffs& v) {
  Vec out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

long primitive_root(long ell) {
  if (ell == 2) return 1;
  auto qs = prime_factors(ell - 1);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (long q : qs)
      if (powmod(Int(g), Int((ell - 1) / q), Int(ell)) == 1) ok = false;
    if (ok) return g;
  }
}

}  // namespace

struct LadicSplitting::Impl {
  IntPoly g;
  std::size_t n = 0;
  long ell = 0;
  Int L;
  long cap = 0;
  RatMatrix basis, inv;  // rows of basis: order basis in power coordinates
  std::vector<std::vector<Vec>> mult;
  Vec one;
  std::vector<Vec> rad;         // radical of O/ell O (lifted residues)
  std::vector<Vec> idem;        // primitive idempotents mod ell, in place order
  std::vector<PlaceData> places;

  Vec mul(const Vec& a, const Vec& b, const Int& m) const {
    Vec c(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(b[j]) == 0) continue;
        Int ab = a[i] * b[j];
        const Vec& t = mult[i][j];
        for (std::size_t k = 0; k < n; ++k)
          if (sgn(t[k]) != 0) c[k] += ab * t[k];
      }
    }
    if (sgn(m) != 0)
      for (auto& x : c) x = mod(x, m);
    return c;
  }

  Vec power(Vec a, Int e, const Int& m) const {
    Vec acc = one;
    for (auto& x : acc) x = mod(x, m);
    while (sgn(e) > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mul(acc, a, m);
      e >>= 1;
      if (sgn(e) > 0) a = mul(a, a, m);
    }
    return acc;
  }

  Vec basis_vec(std::size_t i) const {
    Vec v(n, Int(0));
    v[i] = 1;
    return v;
  }

  // Coordinates in the order basis of an integral element of Z[X].
  Vec coords(const RatPoly& x) const {
    RatPoly r = x.degree() >= static_cast<long>(n) ? x % to_rat(g) : x;
    Vec out(n, Int(0));
    for (std::size_t j = 0; j < n; ++j) {
      Rat acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += r.coeff(i) * inv(i, j);
      if (acc.get_den() != 1) throw Error(ErrorCode::InvalidInput, "element is not l-integral");
      out[j] = acc.get_num();
    }
    return out;
  }

  void build_table() {
    inv = *avq::inverse(basis);
    RatPoly gr = to_rat(g);
    std::vector<RatPoly> elems;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rat> c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = basis(i, j);
      elems.emplace_back(c);
    }
    mult.assign(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        mult[i][j] = coords((elems[i] * elems[j]) % gr);
        mult[j][i] = mult[i][j];
      }
    one = coords(RatPoly::constant(1));
  }

  std::vector<Vec> radical() const {
    modp::Field F{ell};
    Int e = L;
    while (e < Int(static_cast<long>(n))) e *= L;
    std::vector<Vec> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(power(basis_vec(i), e, L));
    std::vector<Vec> out;
    for (auto& v : modp::kernel(to_small(images, n, F), n, F)) out.push_back(lift(v));
    return out;
  }

  // One Round 2 step; returns false when the order is already l-maximal.
  bool enlarge() {
    modp::Field F{ell};
    rad = radical();
    std::vector<Vec> gens = rad;
    for (std::size_t i = 0; i < n; ++i) {
      Vec v(n, Int(0));
      v[i] = L;
      gens.push_back(v);
    }
    std::vector<Vec> ib = hnf(gens, n);
    RatMatrix im(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) im(i, j) = ib[i][j];
    RatMatrix iminv = *avq::inverse(im);
    // Columns indexed by basis element a; rows by (I-basis c, coordinate).
    std::vector<std::vector<std::int64_t>> m(n * n, std::vector<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        Vec prod = mul(basis_vec(a), ib[c], Int(0));
        for (std::size_t j = 0; j < n; ++j) {
          Rat acc = 0;
          for (std::size_t i = 0; i < n; ++i) acc += Rat(prod[i]) * iminv(i, j);
          m[c * n + j][a] = F.reduce(acc.get_num());
        }
      }
    auto ker = modp::kernel(m, n, F);
    if (ker.empty()) return false;
    std::vector<Vec> lat;
    for (auto& v : ker) lat.push_back(lift(v));
    for (std::size_t i = 0; i < n; ++i) {
      Vec v(n, Int(0));
      v[i] = L;
      lat.push_back(v);
    }
    std::vector<Vec> h = hnf(lat, n);
    RatMatrix hm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) hm(i, j) = Rat(h[i][j]) / Rat(L);
    basis = hm * basis;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) basis(i, j).canonicalize();
    return true;
  }

  std::vector<Vec> primitive_idempotents() const {
    modp::Field F{ell};
    std::vector<Vec> fr;
    for (std::size_t i = 0; i < n; ++i) {
      Vec v = power(basis_vec(i), L, L);
      v[i] -= 1;
      fr.push_back(v);
    }
    std::vector<Vec> fixed;
    for (auto& v : modp::kernel(to_small(fr, n, F), n, F)) fixed.push_back(lift(v));
    std::vector<Vec> E{one};
    for (const auto& z : fixed) {
      // Minimal polynomial of z over F_ell by Krylov iteration.
      std::vector<Vec> krylov{one};
      modp::Coeffs minpoly;
      while (true) {
        krylov.push_back(mul(krylov.back(), z, L));
        auto ker = modp::kernel(to_small(krylov, n, F), krylov.size(), F);
        if (!ker.empty()) {
          minpoly = ker.front();
          break;
        }
      }
      modp::trim(minpoly);
      std::vector<Vec> next;
      for (const auto& fac : modp::factor(minpoly, F)) {
        // fac = X - c
        Int c(static_cast<long>(F.sub(0, fac.poly[0])));
        Vec zc = z;
        for (std::size_t i = 0; i < n; ++i) zc[i] = mod(zc[i] - c * one[i], L);
        Vec t = power(zc, L - 1, L);
        Vec ec(n);
        for (std::size_t i = 0; i < n; ++i) ec[i] = mod(one[i] - t[i], L);
        for (const auto& e : E) {
          Vec prod = mul(e, ec, L);
          if (std::any_of(prod.begin(), prod.end(), [](const Int& x) { return sgn(x) != 0; }))
            next.push_back(prod);
        }
      }
      E = std::move(next);
    }
    return E;
  }

  Vec lifted_idempotent(std::size_t u, const Int& m) const {
    Vec e = idem[u];
    for (int it = 0; it < 200; ++it) {
      Vec e2 = mul(e, e, m);
      Vec e3 = mul(e2, e, m);
      Vec next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = mod(3 * e2[i] - 2 * e3[i], m);
      if (next == e) return e;
      e = std::move(next);
    }
    throw Error(ErrorCode::PrecisionExhausted, "idempotent lifting did not converge");
  }

  // det of multiplication by y*e_u + (1 - e_u), modulo ell^P.
  Int place_norm_mod(std::size_t u, const Vec& y, long P) const {
    Int m = ipow(L, static_cast<unsigned long>(P));
    Vec e = lifted_idempotent(u, m);
    Vec z = mul(y, e, m);
    for (std::size_t i = 0; i < n; ++i) z[i] = mod(z[i] + one[i] - e[i], m);
    std::vector<Vec> mat(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
      Vec col = mul(z, basis_vec(i), m);
      for (std::size_t j = 0; j < n; ++j) mat[j][i] = col[j];
    }
    return mod(det_bareiss(mat), m);
  }

  // N_u(y) for y in the order; unit part known modulo ell^digits.
  LocalNorm norm_coords(std::size_t u, const Vec& y, long digits) const {
    long P = std::max<long>(20 * static_cast<long>(n), digits + 2);
    while (P <= cap) {
      Int v = place_norm_mod(u, y, P);
      if (sgn(v) != 0) {
        long w = valuation(v, L);
        if (w + digits < P) {
          Int unit = v / ipow(L, static_cast<unsigned long>(w));
          return {w, mod(unit, ipow(L, static_cast<unsigned long>(digits))), digits};
        }
      }
      P *= 2;
    }
    throw Error(ErrorCode::PrecisionExhausted,
                "l-adic precision cap " + std::to_string(cap) + " reached while computing a local norm");
  }

  LocalNorm norm(std::size_t u, const RatPoly& x, long digits) const {
    if (x.is_zero()) throw Error(ErrorCode::InvalidInput, "norm of zero");
    Int d = 1;
    for (const auto& c : x.coeffs()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    LocalNorm nm = norm_coords(u, coords(x * Rat(d)), digits);
    const auto& pl = places[u];
    long vd = valuation(d, L);
    Int du = d / ipow(L, static_cast<unsigned long>(vd));
    long deg_u = pl.e * pl.f;
    Int md = ipow(L, static_cast<unsigned long>(digits));
    nm.w -= vd * deg_u;
    if (digits > 0) nm.unit = mod(nm.unit * invmod(powmod(du, Int(deg_u), md), md), md);
    return nm;
  }

  Vec uniformizer(std::size_t u) const {
    const auto& pl = places[u];
    if (pl.e == 1) {
      Vec v = one;
      for (auto& x : v) x *= L;
      return v;
    }
    Int m = ipow(L, static_cast<unsigned long>(20 * n));
    Vec e = lifted_idempotent(u, m);
    auto try_elem = [&](const Vec& r) -> bool {
      Vec x = mul(r, e, m);
      return norm_coords(u, x, 0).w == pl.f;
    };
    for (const auto& r : rad)
      if (try_elem(r)) return mul(r, e, m);
    for (std::size_t i = 0; i < rad.size(); ++i)
      for (std::size_t j = i + 1; j < rad.size(); ++j) {
        Vec s(n);
        for (std::size_t k = 0; k < n; ++k) s[k] = rad[i][k] + rad[j][k];
        if (try_elem(s)) return mul(s, e, m);
      }
    throw Error(ErrorCode::InvalidInput, "no uniformizer found among radical elements");
  }
};

LadicSplitting::LadicSplitting(const IntPoly& g, long ell, long precision_cap) {
  if (!g.is_monic() || g.degree() < 1) throw Error(ErrorCode::InvalidInput, "splitting needs a monic polynomial");
  if (!is_prime(ell)) throw Error(ErrorCode::InvalidInput, std::to_string(ell) + " is not prime");
  auto im = std::make_shared<Impl>();
  im->g = g;
  im->n = static_cast<std::size_t>(g.degree());
  im->ell = ell;
  im->L = ell;
  im->cap = precision_cap;
  im->basis = RatMatrix::identity(im->n);
  im->build_table();
  while (im->enlarge()) im->build_table();
  im->rad = im->radical();

  modp::Field F{ell};
  const std::size_t n = im->n;
  auto idem = im->primitive_idempotents();
  Vec xc = im->coords(RatPoly::x());
  struct Entry {
    PlaceData pd;
    Vec e;
  };
  std::vector<Entry> entries;
  long total = 0;
  for (auto& e : idem) {
    std::vector<Vec> comp, rcomp;
    for (std::size_t i = 0; i < n; ++i) comp.push_back(im->mul(e, im->basis_vec(i), im->L));
    for (const auto& r : im->rad) rcomp.push_back(im->mul(e, r, im->L));
    long dim = static_cast<long>(rank_mod(comp, n, F));
    long rdim = static_cast<long>(rank_mod(rcomp, n, F));
    long f = dim - rdim;
    PlaceData pd{ell, dim / f, f, 0};
    total += dim;
    entries.push_back({pd, e});
  }
  if (total != static_cast<long>(n)) throw Error(ErrorCode::InvalidInput, "inconsistent l-adic decomposition");
  im->places.clear();
  for (auto& en : entries) {
    im->idem.push_back(en.e);
    im->places.push_back(en.pd);
  }
  for (std::size_t u = 0; u < im->places.size(); ++u) {
    if (sgn(g.coeff(0)) == 0) continue;  // g = X: the class of X is zero
    im->places[u].ord_pi = im->norm_coords(u, xc, 0).w / im->places[u].f;
  }
  // Deterministic place order.
  std::vector<std::size_t> order(im->places.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto &x = im->places[a], &y = im->places[b];
    if (x.ord_pi != y.ord_pi) return x.ord_pi < y.ord_pi;
    if (x.f != y.f) return x.f < y.f;
    if (x.e != y.e) return x.e < y.e;
    return im->idem[a] < im->idem[b];
  });
  std::vector<Vec> idem2;
  std::vector<PlaceData> pl2;
  for (auto i : order) {
    idem2.push_back(im->idem[i]);
    pl2.push_back(im->places[i]);
  }
  im->idem = std::move(idem2);
  im->places = std::move(pl2);
  impl_ = std::move(im);
}

long LadicSplitting::ell() const { return impl_->ell; }
long LadicSplitting::degree() const { return static_cast<long>(impl_->n); }
const std::vector<PlaceData>& LadicSplitting::places() const { return impl_->places; }

long LadicSplitting::ord(std::size_t u, const RatPoly& x) const {
  LocalNorm nm = impl_->norm(u, x, 0);
  return nm.w / impl_->places.at(u).f;
}

LocalNorm LadicSplitting::norm(std::size_t u, const RatPoly& x, long unit_digits) const {
  return impl_->norm(u, x, unit_digits);
}

std::vector<std::size_t> LadicSplitting::places_of_residue_factor(const IntPoly& h) const {
  Vec y = impl_->coords(to_rat(h));
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < impl_->places.size(); ++u)
    if (impl_->norm_coords(u, y, 0).w > 0) out.push_back(u);
  return out;
}

std::vector<long> LadicSplitting::cyclotomic_galois_group(std::size_t u, long r) const {
  const Impl& im = *impl_;
  const PlaceData& pl = im.places.at(u);
  const long ell = im.ell;
  long k = 0, m = r;
  while (m % ell == 0) {
    m /= ell;
    ++k;
  }
  std::vector<long> gens;
  // Uniformizer.
  gens.push_back(cyclotomic_symbol(im.norm_coords(u, im.uniformizer(u), k), ell, r));
  if (k > 0) {
    const Int lk = ipow(Int(ell), static_cast<unsigned long>(k));
    if (ell != 2) {
      Int omega = powmod(Int(primitive_root(ell)), ipow(Int(ell), static_cast<unsigned long>(k - 1)), lk);
      gens.push_back(cyclotomic_symbol({0, powmod(omega, Int(pl.e), lk), k}, ell, r));
    }
    long P = std::max<long>(20 * static_cast<long>(im.n), k + 2);
    Int mP = ipow(Int(ell), static_cast<unsigned long>(P));
    Vec e = im.lifted_idempotent(u, mP);
    Vec pi = im.uniformizer(u);
    Vec pij = e;
    for (long j = 1; j < pl.e * k; ++j) {
      pij = im.mul(pij, pi, mP);
      for (std::size_t i = 0; i < im.n; ++i) {
        Vec x = im.mul(pij, im.basis_vec(i), mP);
        for (std::size_t t = 0; t < im.n; ++t) x[t] = mod(x[t] + im.one[t], mP);
        gens.push_back(cyclotomic_symbol(im.norm_coords(u, x, k), ell, r));
      }
    }
  }
  return generated_subgroup(gens, r);
}

std::vector<PlaceData> splitting_at(const IntPoly& g, long ell, long precision_cap) {
  return LadicSplitting(g, ell, precision_cap).places();
}

std::vector<NewtonSegment> newton_polygon(const IntPoly& g, long ell) {
  std::vector<std::pair<long, long>> pts;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (sgn(g.coeff(i)) != 0) pts.emplace_back(static_cast<long>(i), valuation(g.coeff(i), Int(ell)));
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // Drop the middle point when it is not strictly below the chord.
      if ((y2 - y1) * (p.first - x1) >= (p.second - y1) * (x2 - x1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<NewtonSegment> out;
  for (std::size_t i = 1; i < hull.size(); ++i)
    out.push_back({Rat(hull[i].second - hull[i - 1].second, hull[i].first - hull[i - 1].first),
                   hull[i].first - hull[i - 1].first});
  for (auto& s : out) s.slope.canonicalize();
  return out;
}

long cyclotomic_symbol(const LocalNorm& nm, long ell, long r) {
  if (r <= 2) return 1 % r;
  long k = 0, m = r;
  while (m % ell == 0) {
    m /= ell;
    ++k;
  }
  if (nm.digits < k) throw Error(ErrorCode::InvalidInput, "norm known to insufficient precision");
  const Int lk = ipow(Int(ell), static_cast<unsigned long>(k));
  // Acts on zeta_{ell^k} through the inverse unit and on zeta_m as Frobenius^w.
  Int a1 = k > 0 ? invmod(mod(nm.unit, lk), lk) : Int(0);
  Int a2 = m > 1 ? (nm.w >= 0 ? powmod(Int(ell), Int(nm.w), Int(m)) : invmod(powmod(Int(ell), Int(-nm.w), Int(m)), Int(m)))
                 : Int(0);
  // CRT.
  Int a = a1 + lk * mod((a2 - a1) * invmod(mod(lk, Int(m)), Int(m)), Int(m));
  if (m == 1) a = a1;
  return mod(a, Int(r)).get_si();
}

std::vector<long> generated_subgroup(const std::vector<long>& gens, long r) {
  std::set<long> seen{1 % r};
  std::vector<long> frontier{1 % r};
  while (!frontier.empty()) {
    long x = frontier.back();
    frontier.pop_back();
    for (long g : gens) {
      long y = ((x * g) % r + r) % r;
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

long order_modulo(long a, const std::vector<long>& S, long r) {
  a = ((a % r) + r) % r;
  long x = a;
  for (long t = 1; t <= r; ++t) {
    if (std::binary_search(S.begin(), S.end(), x)) return t;
    x = x * a % r;
  }
  throw Error(ErrorCode::InvalidInput, "element is not a unit modulo r");
}

long local_norm_order(const LocalCyclicExt& ext, const RatPoly& x) {
  if (!ext.local) throw Error(ErrorCode::InvalidInput, "local extension without base data");
  const long r = ext.r, ell = ext.local->ell();
  auto G = ext.local->cyclotomic_galois_group(ext.place, r);
  auto T = ext.base_group, S = ext.top_group;
  std::sort(T.begin(), T.end());
  std::sort(S.begin(), S.end());
  if (!std::includes(G.begin(), G.end(), T.begin(), T.end()) || !std::includes(T.begin(), T.end(), S.begin(), S.end()))
    throw Error(ErrorCode::InvalidInput, "local extension groups are not nested inside the local Galois group");
  if (generated_subgroup(T, r) != T || generated_subgroup(S, r) != S)
    throw Error(ErrorCode::InvalidInput, "local extension groups must be subgroups");
  long k = 0;
  for (long m = r; m % ell == 0; m /= ell) ++k;
  long y = cyclotomic_symbol(ext.local->norm(ext.place, x, k), ell, r);
  // Transfer from F_u to the base: for abelian groups it is the power map.
  long t = static_cast<long>(G.size() / T.size());
  long z = powmod(Int(y), Int(t), Int(r)).get_si();
  return order_modulo(z, S, r);
}

}  // namespace avq
