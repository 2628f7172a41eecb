#include "avq/tamerep.hpp"

#include <algorithm>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/hondatate.hpp"
#include "avq/numberfield.hpp"
#include "avq/weilpoly.hpp"

namespace avq {

bool descriptor_less(const QElementaryDescriptor& a, const QElementaryDescriptor& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.pi_minpoly != b.pi_minpoly) return poly_less(a.pi_minpoly, b.pi_minpoly);
  return a.dim < b.dim;
}

std::vector<QElementaryDescriptor> merge_components(std::vector<QElementaryDescriptor> cs) {
  std::sort(cs.begin(), cs.end(), descriptor_less);
  std::vector<QElementaryDescriptor> out;
  for (auto& c : cs) {
    if (!out.empty() && out.back().r == c.r && out.back().pi_minpoly == c.pi_minpoly)
      out.back().dim += c.dim;
    else
      out.push_back(std::move(c));
  }
  return out;
}

long frobenius_exponent(long r, long p) { return r <= 2 ? 1 : mult_order(p, r); }

namespace {
Int p_power(long p, long s) { return ipow(Int(p), static_cast<unsigned long>(s)); }
}  // namespace

ValidationReport validate(const QElementaryDescriptor& c, long p) {
  ValidationReport rep;
  auto fail = [&](const char* clause, std::string msg) {
    rep.ok = false;
    rep.clause = clause;
    rep.message = std::move(msg);
    return rep;
  };
  if (!is_prime(p)) return fail(kClauseCoprime, "p = " + std::to_string(p) + " is not prime");
  if (c.r < 1 || gcd_l(c.r, p) != 1)
    return fail(kClauseCoprime, "r = " + std::to_string(c.r) + " must be positive and prime to p");
  if (c.dim < 1) return fail(kClauseDimension, "dimension must be positive");
  rep.s = frobenius_exponent(c.r, p);
  const IntPoly& g = c.pi_minpoly;
  const Int q = p_power(p, rep.s);
  if (g.degree() < 1 || !g.is_monic() || !is_irreducible(g) || !is_weil_minpoly(g, q))
    return fail(kClauseWeil, to_string(g) + " is not the minimal polynomial of a " + q.get_str() + "-Weil number");
  NumberField F(g);
  if (!sigma_p_exists(F, c.r, p))
    return fail(kClauseSigmaP, "no element of Gal(F(zeta_" + std::to_string(c.r) + ")/F) acts as zeta -> zeta^p");
  rep.field_degree = F.degree() * (c.r <= 2 ? 1 : cyclotomic_degree_over(F, c.r).degree);
  if (c.dim % rep.field_degree != 0)
    return fail(kClauseDimension, "[F(zeta_r):Q] = " + std::to_string(rep.field_degree) +
                                      " does not divide N = " + std::to_string(c.dim));
  return rep;
}

IntPoly frobenius_charpoly(const QElementaryDescriptor& c, long p) {
  auto rep = validate(c, p);
  if (!rep.ok) throw Error(ErrorCode::InvalidInput, "invalid component (" + rep.clause + "): " + rep.message);
  const long k = c.dim / (rep.s * c.pi_minpoly.degree());
  return pow(c.pi_minpoly.compose(IntPoly::monomial(Int(1), static_cast<std::size_t>(rep.s))),
             static_cast<unsigned long>(k));
}

QElementaryDescriptor dual_twist(const QElementaryDescriptor& c, long p) {
  // Roots q/pi_i: X^d g(q/X) / g(0).
  const IntPoly& g = c.pi_minpoly;
  const Int q = p_power(p, frobenius_exponent(c.r, p));
  const long d = g.degree();
  std::vector<Rat> out(static_cast<std::size_t>(d + 1));
  Int qk = 1;
  for (long j = 0; j <= d; ++j) {
    out[static_cast<std::size_t>(d - j)] = Rat(g.coeff(static_cast<std::size_t>(j)) * qk);
    qk *= q;
  }
  RatPoly rev = RatPoly(std::move(out)).monic();
  QElementaryDescriptor t = c;
  t.pi_minpoly = primitive_part(rev);
  return t;
}

TateTypeReport tate_type(const std::vector<QElementaryDescriptor>& cs, long p, long precision_cap) {
  TateTypeReport rep;
  for (const auto& c : merge_components(cs)) {
    auto v = validate(c, p);
    if (!v.ok) throw Error(ErrorCode::InvalidInput, "invalid component (" + v.clause + "): " + v.message);
    TateRow row{c, v.field_degree, n_r_pi(c.r, c.pi_minpoly, v.s, p, precision_cap), false};
    row.ok = c.dim % (row.field_degree * row.n) == 0;
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

long multiplicity_of_x2_minus_p(const IntPoly& P, long p) {
  const IntPoly d{Int(-p), Int(0), Int(1)};
  IntPoly rem = P;
  long m = 0;
  while (rem.degree() >= 2 && divides(d, rem)) {
    rem = exact_div(rem, d);
    ++m;
  }
  return m;
}

bool condition3_unfiltered(const std::vector<QElementaryDescriptor>& cs, long p) {
  auto merged = merge_components(cs);
  std::vector<QElementaryDescriptor> duals;
  for (const auto& c : merged) duals.push_back(dual_twist(c, p));
  if (merge_components(duals) != merged) return false;
  long m = 0;
  for (const auto& c : merged) m += multiplicity_of_x2_minus_p(frobenius_charpoly(c, p), p);
  return m % 2 == 0;
}

namespace {

// Matrix of M restricted to the invariant subspace spanned by the columns of B.
RatMatrix restrict_to(const RatMatrix& M, const RatMatrix& B) {
  auto x = solve(B, M * B);
  if (!x) throw Error(ErrorCode::InvalidInput, "subspace is not invariant");
  return *x;
}

bool same_span(const RatMatrix& A, const RatMatrix& B) {
  std::size_t ra = rank(A);
  return ra == rank(B) && ra == rank(RatMatrix::hstack(A, B));
}

long cyclotomic_index(const IntPoly& f) {
  // phi(r) = deg f forces r <= 2 deg^2 + 2 comfortably.
  const long d = f.degree();
  for (long r = 1; r <= 4 * d * d + 6; ++r)
    if (euler_phi(r) == d && cyclotomic(r) == f) return r;
  return 0;
}

// Guard that Q[phi, theta] splits into fields permuted by F0, so that the
// piece is a sum of Q-elementary components with rational idempotents.
void check_rational_centre(const RatMatrix& F0, const RatMatrix& Phi, const RatMatrix& T) {
  for (long c = 1; c <= 3; ++c) {
    RatMatrix u = Phi + Rat(c) * T;
    IntPoly m = primitive_part(minimal_polynomial(u));
    auto facs = factor_over_z(m);
    if (facs.size() <= 1) continue;
    std::vector<RatMatrix> kernels;
    for (const auto& f : facs) kernels.push_back(kernel(eval(to_rat(f.poly), u)));
    for (const auto& K : kernels) {
      RatMatrix image = F0 * K;
      bool hit = std::any_of(kernels.begin(), kernels.end(), [&](const RatMatrix& L) { return same_span(image, L); });
      if (!hit)
        throw Error(ErrorCode::IrrationalSplit,
                    "Frobenius does not permute the rational idempotents of Q[phi, theta]; supply descriptors");
    }
    return;
  }
}

}  // namespace

std::vector<QElementaryDescriptor> decompose_matrices(const RatMatrix& F0, const RatMatrix& T, long p) {
  if (!F0.square() || !T.square() || F0.rows() != T.rows() || F0.rows() == 0)
    throw Error(ErrorCode::InvalidInput, "F0 and T must be square of the same positive size");
  if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
  if (!inverse(F0)) throw Error(ErrorCode::InvalidInput, "F0 must be invertible");
  if (F0 * T != pow(T, static_cast<unsigned long>(p)) * F0)
    throw Error(ErrorCode::InvalidInput, "F0 T F0^-1 must equal T^p");
  RatPoly mF = minimal_polynomial(F0);
  if (gcd(mF, mF.derivative()).degree() > 0) throw Error(ErrorCode::InvalidInput, "F0 is not semisimple");
  IntPoly mT = primitive_part(minimal_polynomial(T));
  std::vector<QElementaryDescriptor> out;
  for (const auto& fac : factor_over_z(mT)) {
    const long r = cyclotomic_index(fac.poly);
    if (r == 0 || fac.multiplicity != 1)
      throw Error(ErrorCode::InvalidInput, "T must be semisimple of finite order");
    if (gcd_l(r, p) != 1) throw Error(ErrorCode::InvalidInput, "order of T must be prime to p");
    RatMatrix W = kernel(eval(to_rat(fac.poly), T));
    RatMatrix F0w = restrict_to(F0, W), Tw = restrict_to(T, W);
    const long s = frobenius_exponent(r, p);
    RatMatrix Phi = pow(F0w, static_cast<unsigned long>(s));
    for (const auto& g : factor_over_z(primitive_part(minimal_polynomial(Phi)))) {
      RatMatrix V = kernel(eval(to_rat(g.poly), Phi));
      check_rational_centre(restrict_to(F0w, V), restrict_to(Phi, V), restrict_to(Tw, V));
      out.push_back({r, g.poly, static_cast<long>(V.cols())});
    }
  }
  return merge_components(std::move(out));
}

}  // namespace avq
