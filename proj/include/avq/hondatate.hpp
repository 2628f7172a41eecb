#pragma once

#include <map>
#include <string>
#include <vector>

#include "avq/arith.hpp"
#include "avq/localdata.hpp"
#include "avq/poly.hpp"

namespace avq {

struct LocalInvariant {
  PlaceData place;
  Rat inv;  // in [0, 1)
};

enum class EndoKind { Field, QuaternionDpInf, QuaternionDInf, DivisionAlgebra };
const char* to_string(EndoKind k);

/// Honda-Tate data of a p^s-Weil number pi with minimal polynomial g.
struct HTClass {
  IntPoly g;
  long s = 1;
  long p = 0;
  std::vector<LocalInvariant> invariants_p;
  long real_invariant_count = 0;  // real places, each contributing 1/2
  long delta = 1;
  EndoKind endo = EndoKind::Field;
  std::string endo_summary;
};

/// Throws NotWeil unless g is a p^s-Weil minimal polynomial.
HTClass ht_invariants(const IntPoly& g, long s, long p, long precision_cap = kDefaultPrecisionCap);

/// Central simple algebra over a named centre: degree plus local invariants
/// keyed by place label (missing places have invariant 0).
struct CsaDescriptor {
  std::string centre;
  long degree = 1;
  std::map<std::string, Rat> invariants;
};

CsaDescriptor endomorphism_algebra(const HTClass& h);

/// Index of [B] - [A]; throws CentreMismatch.
long index_of_difference(const CsaDescriptor& A, const CsaDescriptor& B);
/// A embeds in B iff ind([B] - [A]) deg A divides deg B.
bool schofield_embeds(const CsaDescriptor& A, const CsaDescriptor& B);
/// The same verdict place by place; the global answer is their conjunction.
std::map<std::string, bool> schofield_embeds_locally(const CsaDescriptor& A, const CsaDescriptor& B);

/// Order of pi modulo norms from F(zeta_r) to the fixed field of sigma_p,
/// combined over the relevant places. 1 for r <= 2.
long n_r_pi(long r, const IntPoly& g, long s, long p, long precision_cap = kDefaultPrecisionCap);

struct EmbeddingReport {
  bool ok = false;
  long field_degree = 1;  // [F(zeta_r):F]
  long n = 1;             // n(r;pi)
  long m = 0;
};

/// [F(zeta_r):F] n(r;pi) divides m.
EmbeddingReport embedding_test(long r, const IntPoly& g, long s, long p, long m,
                               long precision_cap = kDefaultPrecisionCap);

}  // namespace avq
