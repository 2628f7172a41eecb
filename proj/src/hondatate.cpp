#include "avq/hondatate.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/numberfield.hpp"
#include "avq/weilpoly.hpp"

namespace avq {

const char* to_string(EndoKind k) {
  switch (k) {
    case EndoKind::Field: return "field";
    case EndoKind::QuaternionDpInf: return "quaternion-D-p-infinity";
    case EndoKind::QuaternionDInf: return "quaternion-D-infinity";
    case EndoKind::DivisionAlgebra: return "division-algebra";
  }
  return "unknown";
}

namespace {

Rat frac(Rat x) {
  x.canonicalize();
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rat out = x - Rat(fl);
  out.canonicalize();
  return out;
}

long denom(const Rat& x) { return frac(x).get_den().get_si(); }

}  // namespace

HTClass ht_invariants(const IntPoly& g, long s, long p, long precision_cap) {
  if (s < 1 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "need s >= 1 and p prime");
  const Int q = ipow(Int(p), static_cast<unsigned long>(s));
  if (!g.is_monic() || !is_irreducible(g) || !is_weil_minpoly(g, q))
    throw Error(ErrorCode::NotWeil, to_string(g) + " is not a " + q.get_str() + "-Weil minimal polynomial");
  HTClass h;
  h.g = g;
  h.s = s;
  h.p = p;
  long lcm = 1;
  for (const auto& v : splitting_at(g, p, precision_cap)) {
    Rat inv = frac(Rat(v.f * v.ord_pi, s));
    h.invariants_p.push_back({v, inv});
    lcm = lcm_l(lcm, denom(inv));
  }
  h.real_invariant_count = real_root_count(to_rat(g));
  h.delta = h.real_invariant_count > 0 ? 2 : lcm;
  const std::string F = "Q[X]/(" + to_string(g) + ")";
  if (h.real_invariant_count > 0 && g.degree() == 1) {
    h.endo = EndoKind::QuaternionDpInf;
    h.endo_summary = "quaternion algebra over Q ramified exactly at p and infinity";
  } else if (h.real_invariant_count > 0) {
    h.endo = EndoKind::QuaternionDInf;
    h.endo_summary = "quaternion algebra over Q(sqrt(p)) ramified exactly at the two real places";
  } else if (h.delta == 1) {
    h.endo = EndoKind::Field;
    h.endo_summary = "commutative field " + F;
  } else {
    h.endo = EndoKind::DivisionAlgebra;
    h.endo_summary = "division algebra of degree " + std::to_string(h.delta) + " over " + F;
  }
  return h;
}

CsaDescriptor endomorphism_algebra(const HTClass& h) {
  CsaDescriptor d;
  d.centre = to_string(h.g);
  d.degree = h.delta;
  for (std::size_t i = 0; i < h.invariants_p.size(); ++i)
    if (sgn(h.invariants_p[i].inv) != 0) d.invariants["p" + std::to_string(i)] = h.invariants_p[i].inv;
  for (long i = 0; i < h.real_invariant_count; ++i) d.invariants["inf" + std::to_string(i)] = Rat(1, 2);
  return d;
}

namespace {

std::map<std::string, long> local_indices(const CsaDescriptor& A, const CsaDescriptor& B) {
  if (A.centre != B.centre)
    throw Error(ErrorCode::CentreMismatch, "algebras over different centres: " + A.centre + " vs " + B.centre);
  std::set<std::string> places;
  for (const auto& [k, v] : A.invariants) places.insert(k);
  for (const auto& [k, v] : B.invariants) places.insert(k);
  std::map<std::string, long> out;
  for (const auto& v : places) {
    Rat a = A.invariants.count(v) ? A.invariants.at(v) : Rat(0);
    Rat b = B.invariants.count(v) ? B.invariants.at(v) : Rat(0);
    out[v] = denom(b - a);
  }
  return out;
}

}  // namespace

long index_of_difference(const CsaDescriptor& A, const CsaDescriptor& B) {
  long ind = 1;
  for (const auto& [v, i] : local_indices(A, B)) ind = lcm_l(ind, i);
  return ind;
}

bool schofield_embeds(const CsaDescriptor& A, const CsaDescriptor& B) {
  return B.degree % (index_of_difference(A, B) * A.degree) == 0;
}

std::map<std::string, bool> schofield_embeds_locally(const CsaDescriptor& A, const CsaDescriptor& B) {
  std::map<std::string, bool> out;
  for (const auto& [v, i] : local_indices(A, B)) out[v] = B.degree % (i * A.degree) == 0;
  return out;
}

long n_r_pi(long r, const IntPoly& g, long s, long p, long precision_cap) {
  if (r <= 2) return 1;
  if (gcd_l(r, p) != 1) throw Error(ErrorCode::InvalidInput, "r must be prime to p");
  if (mult_order(p, r) != s) throw Error(ErrorCode::InvalidInput, "s must be the order of p modulo r");
  NumberField F(g);
  auto H = cyclotomic_degree_over(F, r).H;
  if (!std::binary_search(H.begin(), H.end(), p % r))
    throw Error(ErrorCode::InvalidInput, "sigma_p does not exist for this field and r");
  const std::vector<long> P = generated_subgroup({p % r}, r);
  long n = 1;
  // A real place of the fixed field of sigma_p, with pi = +p^(s/2).
  if (real_places(F) > 0 && std::binary_search(P.begin(), P.end(), r - 1) && g.degree() == 1 &&
      s % 2 == 0 && g.coeff(0) == -ipow(Int(p), static_cast<unsigned long>(s / 2)))
    n = 2;
  for (long ell : prime_factors(r)) {
    auto local = std::make_shared<LadicSplitting>(g, ell, precision_cap);
    for (std::size_t u = 0; u < local->places().size(); ++u) {
      auto G = local->cyclotomic_galois_group(u, r);
      std::vector<long> T;
      std::set_intersection(G.begin(), G.end(), P.begin(), P.end(), std::back_inserter(T));
      LocalCyclicExt ext{local, u, r, T, {1}};
      n = lcm_l(n, local_norm_order(ext, RatPoly::x()));
    }
  }
  return n;
}

EmbeddingReport embedding_test(long r, const IntPoly& g, long s, long p, long m, long precision_cap) {
  EmbeddingReport rep;
  rep.m = m;
  rep.field_degree = r <= 2 ? 1 : cyclotomic_degree_over(NumberField(g), r).degree;
  rep.n = n_r_pi(r, g, s, p, precision_cap);
  rep.ok = m % (rep.field_degree * rep.n) == 0;
  return rep;
}

}  // namespace avq
