#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avq/filtered.hpp"
#include "avq/hondatate.hpp"
#include "avq/matrix.hpp"
#include "avq/tamerep.hpp"
#include "avq/weilpoly.hpp"

namespace avq {

inline constexpr int kCertificateSchemaVersion = 1;

// Clause identifiers beyond the per-component ones in tamerep.hpp.
inline constexpr const char* kClauseWeilParity = "x2-minus-p-even-multiplicity";
inline constexpr const char* kClauseTateDimension = "tate-dimension";
inline constexpr const char* kClauseDualStable = "dual-twist-stable";
inline constexpr const char* kClauseSkewForm = "skew-form";
inline constexpr const char* kClauseHodgeTate = "hodge-tate-type";
inline constexpr const char* kClauseGaloisStable = "galois-stable-filtration";
inline constexpr const char* kClauseOddPrime = "filtered-mode-needs-odd-p";

struct MatrixModel {
  RatMatrix F0;
  RatMatrix T;
};

struct ClassifyInput {
  long p = 0;
  std::vector<QElementaryDescriptor> components;  // may be empty when a matrix model is given
  std::optional<MatrixModel> matrices;
  std::optional<FiltrationInput> filtration;       // requires matrices
};

struct ClassifyOptions {
  long precision_cap = kDefaultPrecisionCap;
  unsigned long seed = 1;
  long retry_cap = 32;
};

struct ComponentRow {
  QElementaryDescriptor component;
  bool valid = false;
  std::string failed_clause;
  std::string message;
  long s = 1;
  long cyclotomic_degree = 0;  // [F(zeta_r):F]
  long delta = 0;
  long n = 0;                  // n(r;pi)
  bool embedding_ok = false;
  IntPoly frobenius;
};

struct IsogenyEntry {
  IntPoly g;          // Frobenius minimal polynomial of the simple factor
  long delta = 1;
  long dimension = 0;
  long exponent = 0;
  std::string endomorphism_algebra;
  std::string description;
  friend bool operator==(const IsogenyEntry&, const IsogenyEntry&) = default;
};

struct FiltrationReport {
  bool hodge_tate = false;
  bool galois_stable = false;
  SkewFormResult skew;
  bool skew_verified = false;
  WaReport wa;
};

struct Certificate {
  int schema_version = kCertificateSchemaVersion;
  bool accepted = false;
  std::string reason;
  std::string clause;
  long p = 0;
  std::string decided;  // "galois-pair" (unfiltered) or "abelian-variety" (filtered)
  std::vector<ComponentRow> components;
  IntPoly pchar;
  std::vector<WeilFactor> weil_factors;
  std::optional<bool> condition1, condition2, condition3, condition4;
  bool ordinary = false;  // middle coefficient of pchar prime to p
  std::vector<IsogenyEntry> isogeny_class;
  std::optional<FiltrationReport> filtration;
  std::vector<std::string> citations;
  std::vector<std::string> notes;
  unsigned long seed = 1;
  long precision_cap = kDefaultPrecisionCap;
};

Certificate classify(const ClassifyInput& in, const ClassifyOptions& opt = {});

/// Simple isogeny factors for a p-Weil polynomial: each Weil factor with its
/// Honda-Tate index delta and exponent multiplicity / delta.
std::vector<IsogenyEntry> synthesize_isogeny_class(const IntPoly& P, long p);

/// Component from a Frobenius factor f of pchar(phi_0): g is the unique
/// irreducible factor of the base change of f to s = ord(p mod r). Throws
/// InvalidInput when that base change has several distinct factors.
QElementaryDescriptor descriptor_from_phi0_factor(long r, const IntPoly& f, long dim, long p);

}  // namespace avq
