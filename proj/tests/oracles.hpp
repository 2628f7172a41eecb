#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "avq/poly.hpp"

namespace avq::oracle {

using cld = std::complex<long double>;

// Durand-Kerner simultaneous iteration in long double.
inline std::vector<cld> roots(const IntPoly& f) {
  const long n = f.degree();
  std::vector<long double> a(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i)
    a[static_cast<std::size_t>(i)] = static_cast<long double>(f.coeff(static_cast<std::size_t>(i)).get_d()) /
                                     static_cast<long double>(f.lead().get_d());
  auto eval = [&](cld x) {
    cld acc = 0;
    for (long i = n; i >= 0; --i) acc = acc * x + a[static_cast<std::size_t>(i)];
    return acc;
  };
  long double radius = 1;
  for (long i = 0; i < n; ++i) radius = std::max(radius, 1 + std::fabs(a[static_cast<std::size_t>(i)]));
  std::vector<cld> z(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::polar(radius * 0.9L, 0.4L + 2.0L * M_PIl * i / n);
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cld d = 1;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) d *= z[i] - z[j];
      cld step = eval(z[i]) / d;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-17L) break;
  }
  return z;
}

// Every root has modulus sqrt(q), to a relative tolerance suited to
// multiple-root conditioning of small-degree inputs.
inline bool all_moduli_sqrt_q(const IntPoly& f, long q, long double tol = 1e-6L) {
  const long double target = std::sqrt(static_cast<long double>(q));
  for (const auto& z : roots(f))
    if (std::fabs(std::abs(z) - target) > tol * target) return false;
  return true;
}

// Power sums of the roots by Newton's identities, exact over Q.
inline std::vector<Rat> power_sums(const RatPoly& monic, long count) {
  const long n = monic.degree();
  auto e = [&](long k) {  // coefficients of X^n + c1 X^(n-1) + ...
    return k > n ? Rat(0) : monic.coeff(static_cast<std::size_t>(n - k));
  };
  std::vector<Rat> s(static_cast<std::size_t>(count + 1));
  s[0] = n;
  for (long k = 1; k <= count; ++k) {
    Rat acc = -k * e(k);
    for (long i = 1; i < k; ++i) acc -= e(i) * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = acc;
  }
  return s;
}

}  // namespace avq::oracle

#include <algorithm>
#include <random>
#include <set>

#include "avq/exactalg.hpp"
#include "avq/numberfield.hpp"

namespace avq::oracle {

// Subgroup of Z/d x (Z/l^k)^x generated by the classes (valuation mod d,
// unit mod l^k) of norms Res(h, x) of sampled elements x of Z[theta], where
// h (degree d) stays irreducible over Q_l. Once 1 + l^k Z_l consists of norms
// this is the full norm group modulo that subgroup.
struct NormGroup {
  long d = 1, ell = 2, k = 1;
  std::set<std::pair<long, long>> elems;

  bool contains(long w, const Int& unit) const {
    Int lk = ipow(Int(ell), static_cast<unsigned long>(k));
    long wm = ((w % d) + d) % d;
    return elems.count({wm, mod(unit, lk).get_si()}) > 0;
  }

  // Smallest t >= 1 with u^t a norm, u = l^w * unit.
  long order(long w, const Int& unit) const {
    Int lk = ipow(Int(ell), static_cast<unsigned long>(k));
    for (long t = 1; t <= 64; ++t)
      if (contains(t * w, powmod(unit, Int(t), lk))) return t;
    return -1;
  }
};

inline NormGroup brute_norm_group(const IntPoly& h, long ell, long k, unsigned seed = 1) {
  NormGroup G;
  G.d = h.degree();
  G.ell = ell;
  G.k = k;
  const Int lk = ipow(Int(ell), static_cast<unsigned long>(k));
  const RatPoly hr = to_rat(h);
  std::set<std::pair<long, long>> gens;
  auto add = [&](const std::vector<long>& c) {
    std::vector<Rat> v;
    for (long x : c) v.emplace_back(x);
    RatPoly x(v);
    if (x.is_zero()) return;
    Rat n = resultant(hr, x);
    if (is_zero(n)) return;
    Int N = n.get_num();
    long w = valuation(N, Int(ell));
    Int unit = N / ipow(Int(ell), static_cast<unsigned long>(w));
    gens.insert({w % G.d, mod(unit, lk).get_si()});
  };
  const long d = G.d;
  // Exhaustive small box, then random coefficients up to l^(k+1).
  std::vector<long> c(static_cast<std::size_t>(d), -2);
  while (true) {
    add(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == 2) c[i++] = -2;
    if (i == c.size()) break;
    ++c[i];
  }
  std::mt19937_64 rng(seed);
  const long span = ipow(Int(ell), static_cast<unsigned long>(k + 1)).get_si();
  for (int s = 0; s < 3000; ++s) {
    for (auto& x : c) x = static_cast<long>(rng() % static_cast<unsigned long>(span)) - span / 2;
    add(c);
  }
  // Closure in the finite group.
  std::vector<std::pair<long, long>> frontier{{0, 1 % lk.get_si()}};
  G.elems.insert(frontier.front());
  const long lks = lk.get_si();
  while (!frontier.empty()) {
    auto [w, u] = frontier.back();
    frontier.pop_back();
    for (const auto& [gw, gu] : gens) {
      std::pair<long, long> y{(w + gw) % d, static_cast<long>((static_cast<__int128>(u) * gu) % lks)};
      if (G.elems.insert(y).second) frontier.push_back(y);
    }
  }
  return G;
}

// Cyclotomic subfields K = Q(zeta_r)^S whose completion at l is a field:
// the test set for local norm orders over Q_2 and Q_3.
struct LocalNormCase {
  long ell, r;
  std::vector<long> global_group;  // S, fixing K in Q(zeta_r)
  IntPoly h;                       // minimal polynomial of the Gaussian period
  long local_degree;
};

inline std::vector<LocalNormCase> local_norm_cases(long ell, long max_local_degree) {
  std::vector<LocalNormCase> out;
  for (long r : {3L, 4L, 5L, 7L, 8L, 9L, 12L, 13L, 16L, 20L, 24L, 27L}) {
    std::vector<long> units;
    for (long a = 1; a < r; ++a)
      if (gcd_l(a, r) == 1) units.push_back(a);
    // Local decomposition group of Q_l(zeta_r): a mod m in <l>.
    long m = r;
    while (m % ell == 0) m /= ell;
    std::set<long> lpow;
    for (long x = 1 % m, i = 0; i < m + 1; ++i, x = x * ell % m) lpow.insert(x % m);
    std::vector<long> G;
    for (long a : units)
      if (lpow.count(a % m)) G.push_back(a);
    std::set<std::vector<long>> seen;
    for (long a : units)
      for (long b : units) {
        std::set<long> S{1};
        bool grew = true;
        while (grew) {
          grew = false;
          for (long x : std::vector<long>(S.begin(), S.end()))
            for (long g : {a, b})
              if (S.insert(x * g % r).second) grew = true;
        }
        std::vector<long> Sv(S.begin(), S.end());
        if (!seen.insert(Sv).second) continue;
        // Need G * S = (Z/r)^x so that K has a single place above l.
        std::set<long> GS;
        for (long g : G)
          for (long s : Sv) GS.insert(g * s % r);
        if (GS.size() != units.size()) continue;
        long local_deg = static_cast<long>(units.size() / Sv.size());
        if (local_deg < 2 || local_deg > max_local_degree) continue;
        NumberField Qr(cyclotomic(r));
        NfElement theta(0);
        for (long s : Sv) {
          NfElement z(1);
          for (long i = 0; i < s; ++i) z *= Qr.gen();
          theta += z;
        }
        RatPoly mp = theta.minpoly();
        if (mp.degree() != local_deg) continue;
        out.push_back({ell, r, Sv, primitive_part(mp), local_deg});
      }
  }
  return out;
}

}  // namespace avq::oracle

namespace avq::oracle {

// Exact p-Weil decision by a different route from the library: squarefree
// part via a hand-rolled rational Euclid, root inclusion discs in 64-bit
// long double, X^2 - p multiplicity by repeated exact division.
namespace detail {

using RVec = std::vector<Rat>;  // lowest degree first, no trailing zeros

inline void trim(RVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RVec rem(RVec a, const RVec& b) {
  trim(a);
  while (a.size() >= b.size()) {
    Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

inline RVec quo(RVec a, const RVec& b) {
  RVec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  trim(a);
  while (a.size() >= b.size()) {
    Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return q;
}

inline RVec gcd(RVec a, RVec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RVec r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  for (auto& x : a) x /= a.back();
  return a;
}

}  // namespace detail

struct DiscVerdict {
  bool weil = false;
  bool ambiguous = false;  // some disc straddles the circle without containing it
};

inline DiscVerdict p_weil_by_discs(const IntPoly& P, long p) {
  using detail::RVec;
  DiscVerdict v;
  if (P.degree() < 1 || P.lead() != 1) return v;
  RVec f;
  for (const auto& c : P.coeffs()) f.emplace_back(c);
  // multiplicity of X^2 - p
  const RVec x2p{Rat(-p), Rat(0), Rat(1)};
  long mult = 0;
  for (RVec g = f; detail::rem(g, x2p).empty(); g = detail::quo(g, x2p)) ++mult;
  if (mult % 2) return v;
  RVec df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * Rat(static_cast<long>(i)));
  RVec sq = detail::quo(f, detail::gcd(f, df));

  const std::size_t n = sq.size() - 1;
  std::vector<long double> a;
  for (const auto& c : sq) a.push_back(static_cast<long double>(c.get_d()));
  std::vector<Int> ints;
  bool integral = true;
  for (const auto& c : sq) {
    integral = integral && c.get_den() == 1;
    ints.push_back(c.get_num());
  }
  if (!integral) return v;  // cannot happen for a monic integer input
  auto z = roots(IntPoly(ints));
  const long double eps = std::numeric_limits<long double>::epsilon();
  const long double target = std::sqrt(static_cast<long double>(p));
  bool all_hit = true;
  for (const auto& x : z) {
    cld fx = 0, dfx = 0;
    long double bound = 0;
    for (std::size_t i = n + 1; i-- > 0;) {
      dfx = dfx * x + fx;
      fx = fx * x + a[i];
      bound = bound * std::abs(x) + std::fabs(a[i]);
    }
    // Evaluation error of Horner is at most about 2 n eps sum |a_i||x|^i.
    const long double err = 2.0L * static_cast<long double>(n + 1) * eps * bound;
    const long double radius = static_cast<long double>(n) * (std::abs(fx) + err) / std::abs(dfx);
    const long double d = std::fabs(std::abs(x) - target);
    if (d > radius) all_hit = false;
    if (radius > 1e-6L) v.ambiguous = true;
  }
  v.weil = all_hit;
  return v;
}

}  // namespace avq::oracle
