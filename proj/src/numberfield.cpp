#include "avq/numberfield.hpp"

#include <algorithm>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"

namespace avq {

NumberField::NumberField(const IntPoly& f) {
  if (f.degree() < 1 || !f.is_monic())
    throw Error(ErrorCode::InvalidInput, "defining polynomial must be monic of positive degree");
  if (!is_irreducible(f))
    throw Error(ErrorCode::InvalidInput, "defining polynomial " + to_string(f) + " is reducible");
  d_ = std::make_shared<const Data>(Data{f, to_rat(f)});
}

NumberField NumberField::rationals() {
  IntPoly x = IntPoly::x();
  return NumberField(std::make_shared<const Data>(Data{x, to_rat(x)}));
}

NfElement NumberField::gen() const { return element(RatPoly::x()); }

NfElement NumberField::element(const RatPoly& v) const { return NfElement(d_, v); }

NfElement NumberField::from_coords(const std::vector<Rat>& c) const {
  if (static_cast<long>(c.size()) != degree())
    throw Error(ErrorCode::InvalidInput, "coordinate vector length differs from field degree");
  return element(RatPoly(c));
}

NfElement::NfElement(std::shared_ptr<const NumberField::Data> f, RatPoly v)
    : f_(std::move(f)), v_(std::move(v)) {
  if (f_ && v_.degree() >= f_->fr.degree()) v_ = v_ % f_->fr;
}

std::vector<Rat> NfElement::coords(long degree) const {
  std::vector<Rat> c(static_cast<std::size_t>(degree));
  for (long i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = v_.coeff(static_cast<std::size_t>(i));
  return c;
}

std::shared_ptr<const NumberField::Data> NfElement::join(const NfElement& a, const NfElement& b) {
  if (!a.f_) return b.f_;
  if (!b.f_ || a.f_ == b.f_ || a.f_->f == b.f_->f) return a.f_;
  throw Error(ErrorCode::InvalidInput, "arithmetic between elements of different number fields");
}

NfElement operator+(const NfElement& a, const NfElement& b) {
  return NfElement(NfElement::join(a, b), a.v_ + b.v_);
}

NfElement operator-(const NfElement& a, const NfElement& b) {
  return NfElement(NfElement::join(a, b), a.v_ - b.v_);
}

NfElement operator*(const NfElement& a, const NfElement& b) {
  return NfElement(NfElement::join(a, b), a.v_ * b.v_);
}

NfElement NfElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidInput, "inverse of zero in a number field");
  if (is_rational()) return NfElement(f_, RatPoly::constant(1 / v_.coeff(0)));
  // Extended Euclid: track s with s*v == r mod f.
  RatPoly r0 = f_->fr, r1 = v_, s0, s1 = RatPoly::constant(1);
  while (r1.degree() > 0) {
    auto [q, r] = r0.divrem(r1);
    RatPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  return NfElement(f_, s1 * (1 / r1.coeff(0)));
}

RatPoly NfElement::charpoly() const {
  const RatPoly& m = f_ ? f_->fr : RatPoly::x();
  // Res_Y(f(Y), X - v(Y)).
  return resultant_in_y(m, {-v_, RatPoly::constant(1)});
}

RatPoly NfElement::minpoly() const { return squarefree_part(charpoly()); }

Rat NfElement::norm() const {
  if (!f_) return v_.coeff(0);
  return resultant(f_->fr, v_);
}

Rat NfElement::trace() const {
  RatPoly c = charpoly();
  return -c.coeff(static_cast<std::size_t>(c.degree() - 1));
}

NfPoly to_nf(const NumberField& F, const RatPoly& p) {
  std::vector<NfElement> c;
  for (const auto& x : p.coeffs()) c.push_back(F.element(RatPoly::constant(x)));
  return NfPoly(std::move(c));
}

NfPoly to_nf(const NumberField& F, const IntPoly& p) { return to_nf(F, to_rat(p)); }

namespace {

template <class T>
std::vector<std::pair<Poly<T>, long>> yun(const Poly<T>& p) {
  std::vector<std::pair<Poly<T>, long>> out;
  if (p.degree() <= 0) return out;
  Poly<T> f = p.monic();
  Poly<T> a = gcd(f, f.derivative());
  Poly<T> b = f / a;
  Poly<T> c = f.derivative() / a - b.derivative();
  for (long i = 1; b.degree() > 0; ++i) {
    Poly<T> d = gcd(b, c);
    if (d.degree() > 0) out.emplace_back(d, i);
    b = b / d;
    c = c / d - b.derivative();
  }
  return out;
}

// Norm of a polynomial over F down to Q.
RatPoly poly_norm(const NumberField& F, const NfPoly& Q) {
  std::vector<RatPoly> cols;
  for (const auto& c : Q.coeffs()) cols.push_back(c.value());
  return resultant_in_y(F.modulus(), cols);
}

std::vector<NfPoly> trager(const NumberField& F, const NfPoly& A) {
  if (A.degree() <= 1) return {A.monic()};
  const NfElement alpha = F.gen();
  for (long k = 0; k < 64; ++k) {
    NfPoly shift{NfElement(-k) * alpha, NfElement(1)};
    NfPoly Q = k == 0 ? A : A.compose(shift);
    RatPoly N = poly_norm(F, Q);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    std::vector<NfPoly> out;
    NfPoly back{NfElement(k) * alpha, NfElement(1)};
    for (const auto& fac : factor_over_z(primitive_part(N))) {
      NfPoly g = gcd(Q, to_nf(F, fac.poly));
      if (g.degree() <= 0) continue;
      out.push_back((k == 0 ? g : g.compose(back)).monic());
    }
    return out;
  }
  throw Error(ErrorCode::InvalidInput, "no squarefree norm found for Trager factorization");
}

bool nf_less(const NfPoly& a, const NfPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (long i = a.degree(); i >= 0; --i) {
    RatPoly x = a.coeff(static_cast<std::size_t>(i)).value();
    RatPoly y = b.coeff(static_cast<std::size_t>(i)).value();
    if (x == y) continue;
    for (long j = std::max(x.degree(), y.degree()); j >= 0; --j) {
      Rat u = x.coeff(static_cast<std::size_t>(j)), v = y.coeff(static_cast<std::size_t>(j));
      if (u != v) return u < v;
    }
  }
  return false;
}

}  // namespace

std::vector<NfFactor> nf_factor(const NumberField& F, const NfPoly& P) {
  if (P.is_zero()) throw Error(ErrorCode::InvalidInput, "factorization of the zero polynomial");
  std::vector<NfFactor> out;
  for (auto& [part, mult] : yun(P))
    for (auto& g : trager(F, part)) out.push_back({g, mult});
  std::sort(out.begin(), out.end(), [](const NfFactor& a, const NfFactor& b) { return nf_less(a.poly, b.poly); });
  return out;
}

CyclotomicData cyclotomic_degree_over(const NumberField& F, long r) {
  if (r < 1) throw Error(ErrorCode::InvalidInput, "cyclotomic index must be positive");
  NfPoly phi = to_nf(F, cyclotomic(r));
  CyclotomicData out;
  out.factor = F.degree() == 1 ? phi : nf_factor(F, phi).front().poly;
  out.degree = out.factor.degree();
  for (long a = 1; a <= r; ++a) {
    if (gcd_l(a, r) != 1) continue;
    if (F.degree() == 1) {
      out.H.push_back(a % r);
      continue;
    }
    // g(X^a) mod g by Horner in F[X]/(g).
    NfPoly xa = powmod(NfPoly::x(), Int(a), out.factor);
    NfPoly acc;
    const auto& c = out.factor.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * xa + NfPoly::constant(*it)) % out.factor;
    if (acc.is_zero()) out.H.push_back(a % r);
  }
  std::sort(out.H.begin(), out.H.end());
  return out;
}

bool sigma_p_exists(const NumberField& F, long r, long p) {
  if (gcd_l(p, r) != 1) throw Error(ErrorCode::InvalidInput, "p must be prime to r");
  if (r <= 2) return true;
  auto H = cyclotomic_degree_over(F, r).H;
  return std::binary_search(H.begin(), H.end(), ((p % r) + r) % r);
}

long real_places(const NumberField& F) { return real_root_count(F.modulus()); }

}  // namespace avq
