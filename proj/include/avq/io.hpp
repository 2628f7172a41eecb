#pragma once

#include <string>

#include "avq/classify.hpp"
#include "avq/hondatate.hpp"
#include "avq/quatcorpus.hpp"
#include "json.hpp"

namespace avq::io {

using Json = nlohmann::ordered_json;

// Scalars in input arrays may be JSON integers or strings. Strings are
// rationals ("3", "-2/5") or symbolic powers of the prime: "p", "-p",
// "p^3", "-2*p^2".
Rat parse_scalar(const Json& j, long p);
IntPoly parse_int_poly(const Json& j, long p);
RatMatrix parse_rat_matrix(const Json& j, long p);

/// Input descriptor:
///   {"p": 7?, "components": [{"r", "pi_minpoly" | "phi0_factor", "dim"}],
///    "matrices": {"F0": [[..]], "T": [[..]]}?, "filtration": {...}?}
/// The explicit p argument wins over the one in the document; one of them
/// must be present. Throws InvalidInput on schema violations.
ClassifyInput parse_classify_input(const Json& doc, long p = 0);

/// {"s", "e", "E0_poly"?, "fil1": [[entry]]} with fil1 row-major, columns
/// spanning Fil^1. An entry is a rational scalar or an array of e arrays of
/// rational coordinates over B = Q(zeta_M), one array per power of t.
FiltrationInput parse_filtration(const Json& j, long p);

Json rational(const Rat& q);  // "num/den"
Json integer(const Int& z);   // number when it fits in 64 bits, string otherwise
Json poly(const IntPoly& f);  // little-endian

Json to_json(const Certificate& c);
Json to_json(const HTClass& h);
Json to_json(const std::vector<QElementaryDescriptor>& cs);
Json to_json(const TauReport& t);

std::string render_text(const Certificate& c);
std::string render_text(const HTClass& h);

/// Deterministic serialisation: two-space indent, newline-terminated.
std::string dump(const Json& j);

}  // namespace avq::io
