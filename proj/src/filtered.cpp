#include "avq/filtered.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/tamerep.hpp"

namespace avq {

// ---------------------------------------------------------------- KElement

namespace {

NfPoly reduce_t(const std::shared_ptr<const CoefficientField>& f, NfPoly c) {
  if (!f || c.degree() < f->e) return c;
  // t^e = p
  std::vector<NfElement> out(static_cast<std::size_t>(f->e), NfElement(0));
  for (long j = c.degree(); j >= 0; --j) {
    NfElement x = c.coeff(static_cast<std::size_t>(j));
    long k = j;
    while (k >= f->e) {
      x = x * NfElement(f->p);
      k -= f->e;
    }
    out[static_cast<std::size_t>(k)] += x;
  }
  return NfPoly(std::move(out));
}

}  // namespace

KElement::KElement(std::shared_ptr<const CoefficientField> f, NfPoly c) : f_(std::move(f)), c_(std::move(c)) {
  c_ = reduce_t(f_, std::move(c_));
}

NfElement KElement::coeff(long j) const { return c_.coeff(static_cast<std::size_t>(j)); }

std::vector<Rat> KElement::rational_coords(const CoefficientField& f) const {
  const long d = f.base.degree();
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(f.e * d));
  for (long j = 0; j < f.e; ++j) {
    auto c = coeff(j).coords(d);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::shared_ptr<const CoefficientField> KElement::join(const KElement& a, const KElement& b) {
  if (!a.f_) return b.f_;
  if (!b.f_ || a.f_ == b.f_) return a.f_;
  throw Error(ErrorCode::InvalidInput, "arithmetic between elements of different coefficient fields");
}

KElement operator+(const KElement& a, const KElement& b) { return KElement(KElement::join(a, b), a.c_ + b.c_); }
KElement operator-(const KElement& a, const KElement& b) { return KElement(KElement::join(a, b), a.c_ - b.c_); }
KElement operator*(const KElement& a, const KElement& b) { return KElement(KElement::join(a, b), a.c_ * b.c_); }

KElement KElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidInput, "inverse of zero in the coefficient field");
  if (c_.degree() == 0) return KElement(f_, NfPoly::constant(c_.coeff(0).inverse()));
  NfPoly r0 = f_->modulus, r1 = c_, s0, s1 = NfPoly::constant(NfElement(1));
  while (r1.degree() > 0) {
    auto [q, r] = r0.divrem(r1);
    NfPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  return KElement(f_, s1 * NfPoly::constant(r1.coeff(0).inverse()));
}

// ------------------------------------------------------------- GlobalModel

struct GlobalModel::Data {
  long s, e, p, m, M;
  IntPoly e0_poly;
  std::shared_ptr<const CoefficientField> field;
  NfElement zeta_M;
  std::shared_ptr<const LadicSplitting> at_p;
};

long GlobalModel::s() const { return d_->s; }
long GlobalModel::e() const { return d_->e; }
long GlobalModel::p() const { return d_->p; }
long GlobalModel::m() const { return d_->m; }
long GlobalModel::M() const { return d_->M; }
const IntPoly& GlobalModel::e0_poly() const { return d_->e0_poly; }
const NumberField& GlobalModel::base() const { return d_->field->base; }
const std::shared_ptr<const CoefficientField>& GlobalModel::field() const { return d_->field; }

KElement GlobalModel::from_base(const NfElement& b) const { return KElement(d_->field, NfPoly::constant(b)); }
KElement GlobalModel::from_rat(const Rat& x) const { return from_base(base().element(RatPoly::constant(x))); }
KElement GlobalModel::t() const { return KElement(d_->field, NfPoly::x()); }
KElement GlobalModel::zeta_e() const { return from_base(d_->field->zeta_e); }
NfElement GlobalModel::zeta_M() const { return d_->zeta_M; }

NfElement GlobalModel::frobenius(const NfElement& b) const {
  if (d_->M <= 2) return b;
  RatPoly xp = RatPoly::monomial(Rat(1), static_cast<std::size_t>(d_->p));
  return base().element(b.value().compose(xp));
}

KElement GlobalModel::frobenius(const KElement& x) const {
  std::vector<NfElement> c;
  for (long j = 0; j <= x.value().degree(); ++j) c.push_back(frobenius(x.coeff(j)));
  return KElement(d_->field, NfPoly(std::move(c)));
}

KElement GlobalModel::inertia(const KElement& x) const {
  std::vector<NfElement> c;
  NfElement z(1);
  for (long j = 0; j <= x.value().degree(); ++j) {
    c.push_back(x.coeff(j) * z);
    z = z * d_->field->zeta_e;
  }
  return KElement(d_->field, NfPoly(std::move(c)));
}

long GlobalModel::valuation(const NfElement& b) const { return d_->at_p->ord(0, b.value()); }

GlobalModel build_global_model(long s, long e, long p, long budget) {
  if (s < 1 || e < 1 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "need s, e >= 1 and p prime");
  if (gcd_l(e, p) != 1) throw Error(ErrorCode::InvalidInput, "tame ramification e must be prime to p");
  if (s % frobenius_exponent(e, p) != 0)
    throw Error(ErrorCode::InvalidInput, "the residue degree s must be a multiple of ord(p mod e)");
  // E0 = Q(zeta_m) with p inert of degree s; prefer the smallest compositum with Q(zeta_e).
  long best = 0, best_M = 0;
  for (long m = 1; m <= budget; ++m) {
    if (euler_phi(m) != s || gcd_l(m, p) != 1) continue;
    if (m > 2 && mult_order(p, m) != s) continue;
    if (m == 2) continue;  // same field as m = 1
    long M = lcm_l(m, e);
    if (best == 0 || M < best_M) {
      best = m;
      best_M = M;
    }
  }
  if (best == 0)
    throw Error(ErrorCode::SearchBudgetExceeded, "no cyclotomic field of degree " + std::to_string(s) +
                                                     " with p inert found below m = " + std::to_string(budget));
  auto d = std::make_shared<GlobalModel::Data>();
  d->s = s;
  d->e = e;
  d->p = p;
  d->m = best;
  d->M = best_M <= 2 ? 1 : best_M;
  d->e0_poly = best == 1 ? IntPoly{Int(-1), Int(1)} : cyclotomic(best);
  IntPoly bpoly = d->M == 1 ? IntPoly{Int(-1), Int(1)} : cyclotomic(d->M);
  NumberField B(bpoly);
  d->zeta_M = d->M == 1 ? NfElement(1) : B.gen();
  NfElement zeta_e = e == 2 ? B.element(RatPoly::constant(Rat(-1)))
                     : e == 1 ? B.element(RatPoly::constant(Rat(1)))
                              : B.element(RatPoly::monomial(Rat(1), static_cast<std::size_t>(d->M / e)));
  std::vector<NfElement> mod(static_cast<std::size_t>(e + 1), NfElement(0));
  mod[0] = NfElement(-p);
  mod[static_cast<std::size_t>(e)] = NfElement(1);
  d->field = std::make_shared<const CoefficientField>(CoefficientField{B, e, p, zeta_e, NfPoly(std::move(mod))});
  d->at_p = std::make_shared<const LadicSplitting>(bpoly, p);
  GlobalModel g(d);

  // Re-verify: E0 irreducible mod p, inertia of exact order e.
  if (best > 1) {
    auto pl = splitting_at(d->e0_poly, p);
    if (pl.size() != 1 || pl[0].f != s)
      throw Error(ErrorCode::InvalidInput, "internal: E0 polynomial is not irreducible mod p");
  }
  KElement z = g.zeta_e(), acc(1);
  for (long k = 1; k <= e; ++k) {
    acc = acc * z;
    if ((acc == KElement(1)) != (k == e)) throw Error(ErrorCode::InvalidInput, "internal: inertia order is not e");
  }
  return g;
}

KMatrix to_k(const GlobalModel& g, const RatMatrix& m) {
  KMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = g.from_rat(m(i, j));
  return out;
}

KMatrix apply_frobenius(const GlobalModel& g, const KMatrix& m) {
  return m.map([&](const KElement& x) { return g.frobenius(x); });
}

KMatrix apply_inertia(const GlobalModel& g, const KMatrix& m) {
  return m.map([&](const KElement& x) { return g.inertia(x); });
}

// ------------------------------------------------------------------ checks

bool hodge_tate_check(const FiltrationInput& fi, long d) {
  if (d <= 0 || static_cast<long>(fi.fil1.rows()) != 2 * d) return false;
  return static_cast<long>(rank(fi.fil1)) == d;
}

namespace {
template <class T>
bool span_contains(const Matrix<T>& big, const Matrix<T>& v) {
  return rank(big) == rank(Matrix<T>::hstack(big, v));
}
}  // namespace

bool galois_stable_check(const FiltrationInput& fi, const KMatrix& inertia, const KMatrix& frobenius) {
  const auto& g = fi.model;
  if (fi.fil1.cols() == 0) return true;
  return span_contains(fi.fil1, inertia * apply_inertia(g, fi.fil1)) &&
         span_contains(fi.fil1, frobenius * apply_frobenius(g, fi.fil1));
}

// --------------------------------------------------------------- skew form

namespace {

RatMatrix skew_basis(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix b(n, n);
  b(i, j) = 1;
  b(j, i) = -1;
  return b;
}

// Isotropy of Fil^1 under B, as Q-linear forms in the entries of B.
std::vector<std::vector<Rat>> isotropy_rows(const FiltrationInput& fi, const std::vector<RatMatrix>& basis) {
  const auto& f = *fi.model.field();
  const KMatrix& F = fi.fil1;
  std::vector<std::vector<Rat>> rows;
  for (std::size_t a = 0; a < F.cols(); ++a)
    for (std::size_t b = a + 1; b < F.cols(); ++b) {
      std::vector<std::vector<Rat>> coords;
      for (const auto& Bk : basis) {
        KElement v(0);
        for (std::size_t i = 0; i < Bk.rows(); ++i)
          for (std::size_t j = 0; j < Bk.cols(); ++j)
            if (sgn(Bk(i, j)) != 0) v += F(i, a) * fi.model.from_rat(Bk(i, j)) * F(j, b);
        coords.push_back(v.rational_coords(f));
      }
      for (std::size_t c = 0; c < coords.front().size(); ++c) {
        std::vector<Rat> row;
        for (const auto& v : coords) row.push_back(v[c]);
        rows.push_back(std::move(row));
      }
    }
  return rows;
}

}  // namespace

SkewFormResult skew_form_filtered(const RatMatrix& F0, const RatMatrix& T, long p, const FiltrationInput& fi,
                                  unsigned long seed, long retry_cap, bool exact) {
  const std::size_t n = F0.rows();
  if (!F0.square() || T.rows() != n || !T.square() || fi.fil1.rows() != n)
    throw Error(ErrorCode::InvalidInput, "Frobenius, inertia and filtration sizes disagree");
  SkewFormResult res;
  res.seed = seed;
  std::vector<RatMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) basis.push_back(skew_basis(n, i, j));
  std::vector<std::vector<Rat>> rows;
  const Rat P(p);
  std::vector<RatMatrix> l1, l2;
  for (const auto& Bk : basis) {
    l1.push_back(F0.transpose() * Bk * F0 - P * Bk);
    l2.push_back(T.transpose() * Bk * T - Bk);
  }
  for (const auto* L : {&l1, &l2})
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        std::vector<Rat> row;
        for (const auto& M : *L) row.push_back(M(a, b));
        rows.push_back(std::move(row));
      }
  if (!basis.empty()) {
    auto iso = isotropy_rows(fi, basis);
    rows.insert(rows.end(), iso.begin(), iso.end());
  }
  std::vector<RatMatrix> space;
  if (!basis.empty()) {
    RatMatrix A(rows.size(), basis.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < basis.size(); ++c) A(r, c) = rows[r][c];
    RatMatrix K = rows.empty() ? RatMatrix::identity(basis.size()) : kernel(A);
    for (std::size_t c = 0; c < K.cols(); ++c) {
      RatMatrix G(n, n);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (sgn(K(k, c)) != 0) G = G + K(k, c) * basis[k];
      space.push_back(std::move(G));
    }
  }
  res.parameters = static_cast<long>(space.size());
  if (space.empty() || n % 2 == 1) {
    res.method = "grid";
    return res;
  }
  auto at = [&](const std::vector<long>& x) {
    RatMatrix G(n, n);
    for (std::size_t k = 0; k < space.size(); ++k)
      if (x[k] != 0) G = G + Rat(x[k]) * space[k];
    return G;
  };
  auto accept = [&](RatMatrix G) {
    res.ok = true;
    res.witness = std::move(G);
    return res;
  };
  std::mt19937_64 rng(seed);
  const long k = res.parameters;
  if (exact && k <= 6) {
    res.method = "grid";
    // A nonzero polynomial of degree <= n in each variable cannot vanish on
    // all of {0..n}^k; try a few random points first.
    std::uniform_int_distribution<long> small(-1000, 1000);
    for (int tries = 0; tries < 4; ++tries) {
      std::vector<long> x(static_cast<std::size_t>(k));
      for (auto& v : x) v = small(rng);
      RatMatrix G = at(x);
      if (sgn(determinant(G)) != 0) return accept(std::move(G));
    }
    std::vector<long> x(static_cast<std::size_t>(k), 0);
    while (true) {
      RatMatrix G = at(x);
      if (sgn(determinant(G)) != 0) return accept(std::move(G));
      std::size_t i = 0;
      while (i < x.size() && x[i] == static_cast<long>(n)) x[i++] = 0;
      if (i == x.size()) break;
      ++x[i];
    }
    return res;
  }
  res.method = "sampling";
  std::uniform_int_distribution<long> big(-1000000, 1000000);
  for (long tries = 0; tries < retry_cap; ++tries) {
    std::vector<long> x(static_cast<std::size_t>(k));
    for (auto& v : x) v = big(rng);
    RatMatrix G = at(x);
    if (sgn(determinant(G)) != 0) return accept(std::move(G));
  }
  throw Error(ErrorCode::RandomizedInconclusive,
              "no nondegenerate skew form found after " + std::to_string(retry_cap) + " samples (seed " +
                  std::to_string(seed) + ")");
}

bool verify_skew_witness(const RatMatrix& B, const RatMatrix& F0, const RatMatrix& T, long p,
                         const FiltrationInput& fi) {
  if (!B.square() || B.rows() != F0.rows()) return false;
  if (!(B.transpose() == Rat(-1) * B)) return false;
  if (sgn(determinant(B)) == 0) return false;
  if (!(F0.transpose() * B * F0 == Rat(p) * B)) return false;
  if (!(T.transpose() * B * T == B)) return false;
  KMatrix iso = fi.fil1.transpose() * to_k(fi.model, B) * fi.fil1;
  return iso.is_zero();
}

// ------------------------------------------------------------- wa_screen

namespace {

using BMatrix = Matrix<NfElement>;

BMatrix to_b(const NumberField& B, const RatMatrix& m) {
  return m.map([&](const Rat& x) { return B.element(RatPoly::constant(x)); });
}

BMatrix eval_nf(const NfPoly& f, const BMatrix& m) {
  BMatrix acc(m.rows(), m.cols());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
    acc = acc * m + (*it) * BMatrix::identity(m.rows());
  return acc;
}

BMatrix vstack(const BMatrix& a, const BMatrix& b) {
  return BMatrix::hstack(a.transpose(), b.transpose()).transpose();
}

bool same_span(const BMatrix& a, const BMatrix& b) {
  auto r = rank(a);
  return r == rank(b) && r == rank(BMatrix::hstack(a, b));
}

}  // namespace

WaReport wa_screen(const RatMatrix& F0, const RatMatrix& T, const FiltrationInput& fi) {
  const auto& g = fi.model;
  const NumberField& B = g.base();
  const std::size_t n = F0.rows();
  if (fi.fil1.rows() != n || T.rows() != n) throw Error(ErrorCode::InvalidInput, "size mismatch in wa_screen");
  RatMatrix Phi = pow(F0, static_cast<unsigned long>(g.s()));
  if (!(Phi * T == T * Phi)) throw Error(ErrorCode::InvalidInput, "F0^s must commute with T");
  BMatrix PhiB = to_b(B, Phi), TB = to_b(B, T), F0B = to_b(B, F0);

  // Atoms: joint kernels of B-irreducible factors.
  std::vector<BMatrix> atoms;
  auto fp = nf_factor(B, to_nf(B, minimal_polynomial(Phi)));
  auto ft = nf_factor(B, to_nf(B, minimal_polynomial(T)));
  for (const auto& f : fp)
    for (const auto& h : ft) {
      BMatrix K = kernel(vstack(eval_nf(f.poly, PhiB), eval_nf(h.poly, TB)));
      if (K.cols() > 0) atoms.push_back(std::move(K));
    }
  // Orbits under the semilinear Frobenius x -> F0 sigma(x).
  std::vector<long> orbit(atoms.size(), -1);
  long norbits = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (orbit[i] >= 0) continue;
    std::size_t cur = i;
    while (orbit[cur] < 0) {
      orbit[cur] = norbits;
      BMatrix img = F0B * atoms[cur].map([&](const NfElement& x) { return g.frobenius(x); });
      auto it = std::find_if(atoms.begin(), atoms.end(), [&](const BMatrix& a) { return same_span(a, img); });
      if (it == atoms.end()) throw Error(ErrorCode::InvalidInput, "Frobenius does not permute isotypic pieces");
      cur = static_cast<std::size_t>(it - atoms.begin());
    }
    ++norbits;
  }
  if (norbits > 16) throw Error(ErrorCode::SearchBudgetExceeded, "too many isotypic pieces to screen");

  const long rank_fil = static_cast<long>(rank(fi.fil1));
  WaReport rep;
  for (unsigned long mask = 1; mask < (1UL << norbits); ++mask) {
    BMatrix D(n, 0);
    std::string label = "orbits{";
    for (long o = 0; o < norbits; ++o) {
      if (!(mask >> o & 1)) continue;
      label += (label.back() == '{' ? "" : ",") + std::to_string(o);
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (orbit[i] == o) D = BMatrix::hstack(D, atoms[i]);
    }
    label += "}";
    auto R = solve(D, PhiB * D);
    NfElement det = determinant(*R);
    WaSubobject sub;
    sub.label = label;
    sub.dim = static_cast<long>(D.cols());
    sub.t_n = Rat(g.valuation(det), g.s());
    sub.t_n.canonicalize();
    KMatrix DK = D.map([&](const NfElement& x) { return g.from_base(x); });
    sub.t_h = rank_fil + sub.dim - static_cast<long>(rank(KMatrix::hstack(fi.fil1, DK)));
    sub.ok = Rat(sub.t_h) <= sub.t_n;
    if (mask == (1UL << norbits) - 1) {
      rep.t_n = sub.t_n;
      rep.t_h = sub.t_h;
      rep.global_equal = sub.t_n == Rat(sub.t_h);
    }
    rep.passed = rep.passed && sub.ok;
    rep.subobjects.push_back(std::move(sub));
  }
  rep.passed = rep.passed && rep.global_equal;
  return rep;
}

}  // namespace avq
