#include "avq/classify.hpp"

#include <algorithm>
#include <map>

#include "avq/exactalg.hpp"

namespace avq {

namespace {

const std::vector<std::string> kCitations = {
    "waterhouse-maximal-order-realization",
    "tame-galois-pair-polarisability",
    "breuil-lifting-p-odd",
    "galois-descent",
};

IntPoly product_charpoly(const std::vector<QElementaryDescriptor>& cs, long p) {
  IntPoly acc = IntPoly::constant(Int(1));
  for (const auto& c : cs) acc = acc * frobenius_charpoly(c, p);
  return acc;
}

bool middle_coefficient_prime_to_p(const IntPoly& P, long p) {
  long n = P.degree();
  if (n < 0 || n % 2) return false;
  Int c = P.coeff(static_cast<std::size_t>(n / 2));
  return sgn(mod(c, Int(p))) != 0;
}

ComponentRow make_row(const QElementaryDescriptor& c, long p, long cap) {
  ComponentRow row;
  row.component = c;
  auto v = validate(c, p);
  row.s = v.s;
  row.valid = v.ok;
  row.failed_clause = v.clause;
  row.message = v.message;
  if (!v.ok) return row;
  const long dg = c.pi_minpoly.degree();
  row.cyclotomic_degree = v.field_degree / dg;
  row.delta = ht_invariants(c.pi_minpoly, row.s, p, cap).delta;
  auto emb = embedding_test(c.r, c.pi_minpoly, row.s, p, c.dim / dg, cap);
  row.n = emb.n;
  row.embedding_ok = emb.ok && c.dim % dg == 0;
  row.frobenius = frobenius_charpoly(c, p);
  return row;
}

// Factorization of pchar assembled from the components: each g(X^s) is small,
// whereas the full product can have degree in the dozens.
std::vector<WeilFactor> split_components(const std::vector<QElementaryDescriptor>& cs, long p) {
  std::map<IntPoly, long, bool (*)(const IntPoly&, const IntPoly&)> mult(poly_less);
  IntPoly X = IntPoly::x();
  for (const auto& c : cs) {
    const long s = frobenius_exponent(c.r, p);
    const long k = c.dim / (s * c.pi_minpoly.degree());
    for (const auto& f : factor_over_z(c.pi_minpoly.compose(pow(X, static_cast<unsigned long>(s)))))
      mult[f.poly] += f.multiplicity * k;
  }
  std::vector<WeilFactor> out;
  for (const auto& [g, m] : mult) out.push_back({g, m, Int(p)});
  return out;
}

bool factors_are_p_weil(const std::vector<WeilFactor>& ws, long p) {
  const IntPoly x2p{Int(-p), Int(0), Int(1)};
  for (const auto& w : ws) {
    if (!is_weil_minpoly(w.g, Int(p))) return false;
    if (w.g == x2p && w.multiplicity % 2) return false;
  }
  return true;
}

std::vector<IsogenyEntry> isogeny_entries(const std::vector<WeilFactor>& ws, long p) {
  std::vector<IsogenyEntry> out;
  for (const auto& w : ws) {
    auto h = ht_invariants(w.g, 1, p);
    if (w.multiplicity % h.delta)
      throw Error(ErrorCode::InvalidInput, "multiplicity of " + to_string(w.g) +
                                               " is not divisible by its Honda-Tate index " +
                                               std::to_string(h.delta));
    IsogenyEntry e;
    e.g = w.g;
    e.delta = h.delta;
    e.dimension = h.delta * w.g.degree() / 2;
    e.exponent = w.multiplicity / h.delta;
    e.endomorphism_algebra = h.endo_summary;
    e.description = "simple abelian " +
                    (e.dimension == 1 ? std::string("curve")
                                      : e.dimension == 2 ? std::string("surface")
                                                         : "variety of dimension " + std::to_string(e.dimension)) +
                    " with Frobenius polynomial (" + to_string(w.g) + ")^" + std::to_string(h.delta);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.g, b.g); });
  return out;
}

void reject(Certificate& cert, std::string clause, std::string reason) {
  if (!cert.accepted && !cert.clause.empty()) return;  // keep the first failure
  cert.accepted = false;
  cert.clause = std::move(clause);
  cert.reason = std::move(reason);
}

}  // namespace

QElementaryDescriptor descriptor_from_phi0_factor(long r, const IntPoly& f, long dim, long p) {
  if (r < 1 || p < 2 || f.degree() < 1)
    throw Error(ErrorCode::InvalidInput, "phi0 factor needs r >= 1, a prime p and a nonconstant polynomial");
  if (gcd_l(r, p) != 1) throw Error(ErrorCode::InvalidInput, "inertia order is divisible by p");
  const long s = frobenius_exponent(r, p);
  auto fs = factor_over_z(base_change(f, s));
  if (fs.size() != 1)
    throw Error(ErrorCode::InvalidInput,
                "base change of " + to_string(f) + " to s=" + std::to_string(s) + " is not a power of one irreducible");
  return {r, fs.front().poly, dim};
}

std::vector<IsogenyEntry> synthesize_isogeny_class(const IntPoly& P, long p) {
  return isogeny_entries(weil_split(P, p), p);
}

Certificate classify(const ClassifyInput& in, const ClassifyOptions& opt) {
  const long p = in.p;
  if (p < 2 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
  if (in.filtration && !in.matrices)
    throw Error(ErrorCode::InvalidInput, "a filtration needs the matrix model (F0, T)");

  Certificate cert;
  cert.p = p;
  cert.seed = opt.seed;
  cert.precision_cap = opt.precision_cap;
  cert.citations = kCitations;
  cert.decided = in.filtration ? "abelian-variety" : "galois-pair";
  cert.accepted = true;

  if (in.filtration && p == 2) {
    reject(cert, kClauseOddPrime, "filtered classification is only available for odd p");
    return cert;
  }

  std::vector<QElementaryDescriptor> cs = merge_components(in.components);
  if (in.matrices) {
    auto from_matrices = decompose_matrices(in.matrices->F0, in.matrices->T, p);
    if (!cs.empty() && cs != from_matrices)
      throw Error(ErrorCode::InvalidInput, "components do not match the decomposition of the matrix model");
    cs = std::move(from_matrices);
  }
  if (cs.empty()) throw Error(ErrorCode::InvalidInput, "no components");
  for (const auto& c : cs)
    if (c.dim <= 0) throw Error(ErrorCode::InvalidInput, "component dimensions must be positive");

  if (p == 2) cert.notes.push_back("p = 2: verdict concerns the Galois pair only");

  bool all_valid = true;
  for (const auto& c : cs) {
    cert.components.push_back(make_row(c, p, opt.precision_cap));
    const auto& row = cert.components.back();
    if (!row.valid) {
      all_valid = false;
      reject(cert, row.failed_clause, row.message);
    }
  }
  if (!all_valid) return cert;

  cert.pchar = product_charpoly(cs, p);
  cert.ordinary = middle_coefficient_prime_to_p(cert.pchar, p);

  auto factors = split_components(cs, p);
  cert.condition1 = factors_are_p_weil(factors, p);
  if (!*cert.condition1)
    reject(cert, kClauseWeilParity, "X^2 - p occurs to odd multiplicity in the Frobenius polynomial");
  else
    cert.weil_factors = factors;

  auto tt = tate_type(cs, p, opt.precision_cap);
  cert.condition2 = tt.ok;
  if (!tt.ok) {
    for (const auto& row : tt.rows)
      if (!row.ok) {
        reject(cert, kClauseTateDimension,
               "[F(zeta_r):Q] n(r;pi) = " + std::to_string(row.field_degree * row.n) + " does not divide N = " +
                   std::to_string(row.component.dim) + " for r = " + std::to_string(row.component.r));
        break;
      }
  }
  for (const auto& row : cert.components)
    if (!row.embedding_ok) reject(cert, kClauseTateDimension, "component fails the embedding divisibility");

  if (!in.filtration) {
    cert.condition3 = condition3_unfiltered(cs, p);
    if (!*cert.condition3)
      reject(cert, kClauseDualStable, "components are not stable under the dual Tate twist");
  } else {
    const auto& fi = *in.filtration;
    const auto& mm = *in.matrices;
    FiltrationReport fr;
    long total = 0;
    for (const auto& c : cs) total += c.dim;
    fr.skew = skew_form_filtered(mm.F0, mm.T, p, fi, opt.seed, opt.retry_cap);
    fr.skew_verified = fr.skew.ok && fr.skew.witness && verify_skew_witness(*fr.skew.witness, mm.F0, mm.T, p, fi);
    cert.condition3 = fr.skew_verified;
    if (!fr.skew_verified)
      reject(cert, kClauseSkewForm, "no nondegenerate compatible skew form with isotropic Fil^1");

    fr.hodge_tate = total % 2 == 0 && hodge_tate_check(fi, total / 2);
    const auto n = mm.T.rows();
    fr.galois_stable = fi.fil1.rows() == n && galois_stable_check(fi, to_k(fi.model, mm.T), KMatrix::identity(n));
    cert.condition4 = fr.hodge_tate && fr.galois_stable;
    if (!fr.hodge_tate) reject(cert, kClauseHodgeTate, "Fil^1 does not have half the dimension");
    if (!fr.galois_stable) reject(cert, kClauseGaloisStable, "Fil^1 is not stable under the Galois action");
    fr.wa = wa_screen(mm.F0, mm.T, fi);
    if (!fr.wa.passed)
      cert.notes.push_back("weak admissibility screening failed on a subobject; the verdict does not depend on it");
    cert.filtration = std::move(fr);
  }

  if (*cert.condition1) {
    try {
      cert.isogeny_class = isogeny_entries(cert.weil_factors, p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidInput) throw;
      cert.notes.push_back(std::string("isogeny class not synthesized: ") + e.what());
    }
  }
  if (cert.accepted) cert.reason = "all conditions hold";
  return cert;
}

}  // namespace avq
