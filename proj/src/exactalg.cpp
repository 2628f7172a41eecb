#include "avq/exactalg.hpp"

#include <algorithm>
#include <map>

#include "avq/error.hpp"
#include "avq/modular.hpp"

namespace avq {

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (long k = a.degree(); k >= 0; --k) {
    auto i = static_cast<std::size_t>(k);
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

std::vector<std::pair<RatPoly, long>> squarefree_decomposition(const RatPoly& p) {
  std::vector<std::pair<RatPoly, long>> out;
  if (p.degree() <= 0) return out;
  RatPoly f = p.monic();
  RatPoly a = gcd(f, f.derivative());
  RatPoly b = f / a;
  RatPoly c = f.derivative() / a - b.derivative();
  long i = 1;
  while (b.degree() > 0) {
    RatPoly d = gcd(b, c);
    if (d.degree() > 0) out.emplace_back(d, i);
    b = b / d;
    c = c / d - b.derivative();
    ++i;
  }
  return out;
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

namespace {

Int norm2_ceil(const IntPoly& f) {
  Int s = 0;
  for (const auto& x : f.coeffs()) s += x * x;
  Int r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  return r + 1;
}

struct ModularImage {
  std::int64_t p;
  std::vector<modp::Coeffs> factors;
};

ModularImage choose_prime(const IntPoly& f) {
  ModularImage best{0, {}};
  int good = 0;
  for (long p = 3; good < 6 && p < 5000; p += 2) {
    if (!is_prime(p)) continue;
    modp::Field F{p};
    if (F.reduce(f.lead()) == 0) continue;
    auto fp = modp::from_int(f, F);
    if (!modp::is_squarefree(fp, F)) continue;
    ++good;
    auto fac = modp::factor(fp, F);
    if (best.p == 0 || fac.size() < best.factors.size()) {
      best.p = p;
      best.factors.clear();
      for (auto& m : fac) best.factors.push_back(m.poly);
    }
    if (best.factors.size() == 1) break;
  }
  if (best.p == 0) throw Error(ErrorCode::InvalidInput, "no good prime for factorization");
  return best;
}

// Zassenhaus for a primitive squarefree polynomial with positive leading
// coefficient and degree >= 2.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  const long n = f.degree();
  auto img = choose_prime(f);
  if (img.factors.size() == 1) return {f};
  const Int P(static_cast<long>(img.p));
  Int bound = 2 * abs(f.lead()) * ipow(Int(2), static_cast<unsigned long>(n)) * norm2_ceil(f) + 1;
  unsigned long k = 1;
  Int pk = P;
  while (pk <= bound) {
    pk *= P;
    ++k;
  }
  std::vector<IntPoly> lifted = hensel_lift(f, img.factors, img.p, k);

  std::vector<IntPoly> found;
  std::vector<std::size_t> live(lifted.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  IntPoly rem = f;
  std::size_t s = 1;
  while (2 * s <= live.size()) {
    bool hit = false;
    std::vector<std::size_t> sel(s);
    for (std::size_t i = 0; i < s; ++i) sel[i] = i;
    while (true) {
      IntPoly g = IntPoly::constant(rem.lead());
      for (auto i : sel) g = reduce_coeffs(g * lifted[live[i]], pk);
      g = symmetric_coeffs(g, pk);
      IntPoly cand = primitive_part(g);
      if (cand.degree() > 0 && divides(cand, rem)) {
        found.push_back(cand);
        rem = exact_div(rem, cand);
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < live.size(); ++j)
          if (std::find(sel.begin(), sel.end(), j) == sel.end()) keep.push_back(live[j]);
        live = std::move(keep);
        hit = true;
        break;
      }
      // Next s-subset of {0..live.size()-1} in lexicographic order.
      std::size_t i = s;
      while (i > 0 && sel[i - 1] == live.size() - s + i - 1) --i;
      if (i == 0) break;
      ++sel[i - 1];
      for (std::size_t j = i; j < s; ++j) sel[j] = sel[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (rem.degree() > 0) found.push_back(primitive_part(rem));
  return found;
}

}  // namespace

std::vector<Factor> factor_over_z(const IntPoly& p, Int* unit) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidInput, "factorization of the zero polynomial");
  Int c = content(p);
  if (unit) *unit = c;
  std::vector<Factor> out;
  if (p.degree() == 0) return out;
  IntPoly pp = primitive_part(p);
  for (auto& [part, mult] : squarefree_decomposition(to_rat(pp))) {
    IntPoly f = primitive_part(part);
    std::vector<IntPoly> irr = f.degree() <= 1 ? std::vector<IntPoly>{f} : zassenhaus(f);
    for (auto& g : irr) out.push_back({primitive_part(g), mult});
  }
  std::sort(out.begin(), out.end(),
            [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  return out;
}

bool is_irreducible(const IntPoly& p) {
  if (p.degree() <= 0) return false;
  auto f = factor_over_z(p);
  return f.size() == 1 && f[0].multiplicity == 1;
}

namespace {
int sign_at(const RatPoly& p, const Rat& x) { return sgn(p(x)); }

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    RatPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

long variations(const std::vector<RatPoly>& seq, const Rat& x) {
  long v = 0;
  int last = 0;
  for (const auto& q : seq) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

long sturm_count(const RatPoly& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidInput, "Sturm count of zero polynomial");
  if (!(a < b)) throw Error(ErrorCode::InvalidInput, "Sturm interval must satisfy a < b");
  if (is_zero(p(a)) || is_zero(p(b)))
    throw Error(ErrorCode::EndpointRoot, "Sturm interval endpoint is a root");
  if (p.degree() == 0) return 0;
  auto seq = sturm_sequence(p);
  return variations(seq, a) - variations(seq, b);
}

Rat cauchy_bound(const RatPoly& p) {
  Rat m = 0;
  for (long k = 0; k < p.degree(); ++k) {
    Rat r = abs(p.coeff(static_cast<std::size_t>(k)) / p.lead());
    if (r > m) m = r;
  }
  return m + 1;
}

long real_root_count(const RatPoly& p) {
  if (p.degree() <= 0) return 0;
  Rat b = cauchy_bound(p);
  return sturm_count(p, -b, b);
}

IntPoly cyclotomic(long r) {
  if (r < 1) throw Error(ErrorCode::InvalidInput, "cyclotomic index must be positive");
  // Product over d | r of (X^d - 1)^mu(r/d).
  IntPoly num = IntPoly::constant(Int(1)), den = IntPoly::constant(Int(1));
  for (long d : divisors(r)) {
    long m = r / d;
    int mu = 1;
    bool square = false;
    for (long q : prime_factors(m)) {
      if ((m / q) % q == 0) square = true;
      mu = -mu;
    }
    if (square) continue;
    IntPoly t = IntPoly::monomial(Int(1), static_cast<std::size_t>(d)) - IntPoly::constant(Int(1));
    (mu == 1 ? num : den) *= t;
  }
  return exact_div(num, den);
}

Rat resultant(const RatPoly& p, const RatPoly& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  RatPoly a = p, b = q;
  Rat acc = 1;
  while (true) {
    long da = a.degree(), db = b.degree();
    if (db == 0) {
      Rat r;
      mpq_class base = b.lead();
      r = 1;
      for (long i = 0; i < da; ++i) r *= base;
      return acc * r;
    }
    if (da == 0) {
      Rat r = 1;
      for (long i = 0; i < db; ++i) r *= a.lead();
      return acc * r;
    }
    if (da < db) {
      if ((da * db) % 2) acc = -acc;
      std::swap(a, b);
      continue;
    }
    RatPoly r = a % b;
    if (r.is_zero()) return 0;
    long dr = r.degree();
    if ((da * db) % 2) acc = -acc;
    for (long i = 0; i < da - dr; ++i) acc *= b.lead();
    a = std::move(b);
    b = std::move(r);
  }
}

RatPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rat> dd(ys);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  RatPoly acc;
  for (std::size_t k = n; k-- > 0;) {
    acc = acc * RatPoly{Rat(-xs[k]), Rat(1)} + RatPoly::constant(dd[k]);
  }
  return acc;
}

RatPoly resultant_in_y(const RatPoly& m, const std::vector<RatPoly>& f) {
  if (!m.is_monic()) throw Error(ErrorCode::InvalidInput, "resultant_in_y needs a monic modulus");
  const long bound = static_cast<long>(f.empty() ? 0 : f.size() - 1) * m.degree();
  std::vector<Rat> xs, ys;
  for (long x = 0; x <= bound; ++x) {
    RatPoly fx;
    Rat xp = 1;
    for (const auto& coeff : f) {
      fx += coeff * xp;
      xp *= x;
    }
    xs.emplace_back(x);
    ys.push_back(fx.is_zero() ? Rat(0) : resultant(m, fx));
  }
  return interpolate(xs, ys);
}

}  // namespace avq
