#include "avq/io.hpp"

#include <regex>
#include <sstream>

#include "avq/error.hpp"

namespace avq::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

long get_long(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::vector<Json> as_array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return {j.begin(), j.end()};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string flag(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "not evaluated"; }

Json opt_flag(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Json rat_matrix(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json quat_matrix(const QuatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Json q = Json::array();
      for (const auto& c : m(i, j).coords()) q.push_back(rational(c));
      row.push_back(std::move(q));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json descriptor(const QElementaryDescriptor& c) {
  return Json{{"r", c.r}, {"pi_minpoly", poly(c.pi_minpoly)}, {"dim", c.dim}};
}

KElement parse_k_entry(const Json& j, const GlobalModel& g, long p) {
  if (!j.is_array()) return g.from_rat(parse_scalar(j, p));
  if (static_cast<long>(j.size()) > g.e()) bad("filtration entry has more t-powers than e");
  const auto deg = static_cast<std::size_t>(g.base().degree());
  KElement acc = g.from_rat(0), tj = g.from_rat(1);
  for (const auto& block : j) {
    if (!block.is_array() || block.size() > deg) bad("filtration entry block must list at most [B:Q] coordinates");
    std::vector<Rat> c(deg, Rat(0));
    for (std::size_t k = 0; k < block.size(); ++k) c[k] = parse_scalar(block[k], p);
    acc += g.from_base(g.base().from_coords(c)) * tj;
    tj *= g.t();
  }
  return acc;
}

}  // namespace

Rat parse_scalar(const Json& j, long p) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  if (!j.is_string()) bad("scalar must be an integer or a string");
  const std::string s = j.get<std::string>();
  static const std::regex sym(R"(^\s*([+-])?\s*(?:(\d+)\s*\*\s*)?p(?:\s*\^\s*(\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, sym)) {
    if (p <= 0) bad("symbolic coefficient '" + s + "' needs a prime");
    Int v = m[2].matched ? Int(m[2].str()) : Int(1);
    unsigned long k = m[3].matched ? std::stoul(m[3].str()) : 1;
    v *= ipow(Int(p), k);
    if (m[1].matched && m[1].str() == "-") v = -v;
    return Rat(v);
  }
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return parse_rational(t);
}

IntPoly parse_int_poly(const Json& j, long p) {
  std::vector<Int> c;
  for (const auto& x : as_array(j, "polynomial")) {
    Rat q = parse_scalar(x, p);
    if (q.get_den() != 1) bad("polynomial coefficients must be integers");
    c.push_back(q.get_num());
  }
  IntPoly f(std::move(c));
  if (f.is_zero()) bad("polynomial must be nonzero");
  return f;
}

RatMatrix parse_rat_matrix(const Json& j, long p) {
  auto rows = as_array(j, "matrix");
  if (rows.empty()) bad("matrix must be nonempty");
  const std::size_t n = as_array(rows[0], "matrix row").size();
  RatMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto row = as_array(rows[i], "matrix row");
    if (row.size() != n) bad("ragged matrix");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = parse_scalar(row[k], p);
  }
  return m;
}

FiltrationInput parse_filtration(const Json& j, long p) {
  GlobalModel g = build_global_model(get_long(j, "s"), get_long(j, "e"), p);
  if (j.contains("E0_poly") && parse_int_poly(j.at("E0_poly"), p) != g.e0_poly())
    bad("E0_poly does not match the model chosen for (s, e, p), expected " + to_string(g.e0_poly()));
  auto rows = as_array(require(j, "fil1"), "fil1");
  std::size_t cols = rows.empty() ? 0 : as_array(rows[0], "fil1 row").size();
  KMatrix fil(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto row = as_array(rows[i], "fil1 row");
    if (row.size() != cols) bad("ragged fil1");
    for (std::size_t k = 0; k < cols; ++k) fil(i, k) = parse_k_entry(row[k], g, p);
  }
  return {g, fil};
}

ClassifyInput parse_classify_input(const Json& doc, long p) {
  if (!doc.is_object()) bad("input must be a JSON object");
  if (p == 0 && doc.contains("p")) p = get_long(doc, "p");
  if (p < 2 || !is_prime(p)) bad("a prime p is required");
  ClassifyInput in;
  in.p = p;
  if (doc.contains("components")) {
    for (const auto& c : as_array(doc.at("components"), "components")) {
      long r = get_long(c, "r"), dim = get_long(c, "dim");
      const bool has_pi = c.contains("pi_minpoly"), has_phi = c.contains("phi0_factor");
      if (has_pi == has_phi) bad("each component needs exactly one of pi_minpoly and phi0_factor");
      if (has_pi) {
        IntPoly g = parse_int_poly(c.at("pi_minpoly"), p);
        if (!g.is_monic()) bad("pi_minpoly must be monic");
        in.components.push_back({r, g, dim});
      } else {
        IntPoly f = parse_int_poly(c.at("phi0_factor"), p);
        if (!f.is_monic()) bad("phi0_factor must be monic");
        in.components.push_back(descriptor_from_phi0_factor(r, f, dim, p));
      }
    }
  }
  if (doc.contains("matrices")) {
    const Json& m = doc.at("matrices");
    in.matrices = MatrixModel{parse_rat_matrix(require(m, "F0"), p), parse_rat_matrix(require(m, "T"), p)};
  }
  if (doc.contains("filtration")) {
    in.filtration = parse_filtration(doc.at("filtration"), p);
  }
  if (in.components.empty() && !in.matrices) bad("input needs components or matrices");
  return in;
}

Json rational(const Rat& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Json integer(const Int& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json poly(const IntPoly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(integer(c));
  return a;
}

Json to_json(const std::vector<QElementaryDescriptor>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(descriptor(c));
  return a;
}

Json to_json(const HTClass& h) {
  Json inv = Json::array();
  for (const auto& li : h.invariants_p)
    inv.push_back({{"ell", li.place.ell},
                   {"e", li.place.e},
                   {"f", li.place.f},
                   {"ord_pi", li.place.ord_pi},
                   {"inv", rational(li.inv)}});
  return Json{{"g", poly(h.g)},
              {"s", h.s},
              {"p", h.p},
              {"invariants_p", inv},
              {"real_places", h.real_invariant_count},
              {"delta", h.delta},
              {"endomorphism_kind", to_string(h.endo)},
              {"endomorphism_algebra", h.endo_summary}};
}

Json to_json(const TauReport& t) {
  return Json{{"p", t.p},
              {"algebra", {{"a", rational(t.algebra.alg.a)}, {"b", rational(t.algebra.alg.b)}}},
              {"ramified", t.algebra.ramified},
              {"f0", quat_matrix(t.f0)},
              {"tau", quat_matrix(t.tau)},
              {"phi8_of_tau_vanishes", t.phi8_vanishes},
              {"frobenius_relation", t.frobenius_relation},
              {"norm_squared", rational(t.norm_squared)}};
}

Json to_json(const Certificate& c) {
  Json comps = Json::array();
  for (const auto& r : c.components) {
    Json row = descriptor(r.component);
    row["valid"] = r.valid;
    if (!r.valid) {
      row["failed_clause"] = r.failed_clause;
      row["message"] = r.message;
    } else {
      row["s"] = r.s;
      row["cyclotomic_degree"] = r.cyclotomic_degree;
      row["delta"] = r.delta;
      row["n"] = r.n;
      row["embedding_ok"] = r.embedding_ok;
      row["frobenius_charpoly"] = poly(r.frobenius);
    }
    comps.push_back(std::move(row));
  }
  Json split = Json::array();
  for (const auto& w : c.weil_factors) split.push_back({{"g", poly(w.g)}, {"multiplicity", w.multiplicity}});
  Json iso = Json::array();
  for (const auto& e : c.isogeny_class)
    iso.push_back({{"g", poly(e.g)},
                   {"delta", e.delta},
                   {"dimension", e.dimension},
                   {"exponent", e.exponent},
                   {"endomorphism_algebra", e.endomorphism_algebra},
                   {"description", e.description}});

  Json out{{"schema_version", c.schema_version},
           {"verdict", c.accepted ? "accepted" : "rejected"},
           {"clause", c.accepted ? Json(nullptr) : Json(c.clause)},
           {"reason", c.reason},
           {"p", c.p},
           {"decided", c.decided},
           {"components", comps},
           {"pchar", c.pchar.is_zero() ? Json(nullptr) : poly(c.pchar)},
           {"weil_split", split},
           {"conditions",
            {{"1", opt_flag(c.condition1)},
             {"2", opt_flag(c.condition2)},
             {"3", opt_flag(c.condition3)},
             {"4", opt_flag(c.condition4)}}},
           {"ordinary", c.ordinary},
           {"isogeny_class", iso}};
  if (c.filtration) {
    const auto& f = *c.filtration;
    Json subs = Json::array();
    for (const auto& s : f.wa.subobjects)
      subs.push_back({{"label", s.label}, {"dim", s.dim}, {"t_h", s.t_h}, {"t_n", rational(s.t_n)}, {"ok", s.ok}});
    out["filtration"] = {
        {"hodge_tate", f.hodge_tate},
        {"galois_stable", f.galois_stable},
        {"skew_form",
         {{"ok", f.skew.ok},
          {"verified", f.skew_verified},
          {"method", f.skew.method},
          {"parameters", f.skew.parameters},
          {"seed", f.skew.seed},
          {"witness", f.skew.witness ? rat_matrix(*f.skew.witness) : Json(nullptr)}}},
        {"weak_admissibility",
         {{"label", f.wa.label},
          {"passed", f.wa.passed},
          {"global_equal", f.wa.global_equal},
          {"t_n", rational(f.wa.t_n)},
          {"t_h", f.wa.t_h},
          {"subobjects", subs}}}};
  } else {
    out["filtration"] = nullptr;
  }
  out["citations"] = c.citations;
  out["notes"] = c.notes;
  out["seed"] = c.seed;
  out["precision_cap"] = c.precision_cap;
  return out;
}

std::string render_text(const Certificate& c) {
  std::ostringstream o;
  o << "verdict: " << (c.accepted ? "ACCEPTED" : "REJECTED") << " (" << c.decided << ", p = " << c.p << ")\n";
  if (!c.accepted) o << "clause: " << c.clause << "\n";
  o << "reason: " << c.reason << "\n";
  o << "components:\n";
  for (const auto& r : c.components) {
    o << "  r=" << r.component.r << " g=" << to_string(r.component.pi_minpoly) << " N=" << r.component.dim;
    if (!r.valid) {
      o << "  invalid [" << r.failed_clause << "] " << r.message << "\n";
      continue;
    }
    o << " s=" << r.s << " [F(zeta_r):F]=" << r.cyclotomic_degree << " delta=" << r.delta << " n=" << r.n
      << " embeds=" << yes_no(r.embedding_ok) << "\n";
    o << "    frobenius: " << to_string(r.frobenius) << "\n";
  }
  if (!c.pchar.is_zero()) o << "pchar(phi_0): " << to_string(c.pchar) << "\n";
  o << "conditions: (1) " << flag(c.condition1) << ", (2) " << flag(c.condition2) << ", (3) "
    << flag(c.condition3) << ", (4) " << flag(c.condition4) << "\n";
  o << "ordinary: " << yes_no(c.ordinary) << "\n";
  if (!c.isogeny_class.empty()) {
    o << "isogeny class:\n";
    for (const auto& e : c.isogeny_class)
      o << "  " << e.description << ", exponent " << e.exponent << "; End^0: " << e.endomorphism_algebra << "\n";
  }
  if (c.filtration) {
    const auto& f = *c.filtration;
    o << "filtration: hodge-tate " << yes_no(f.hodge_tate) << ", galois-stable " << yes_no(f.galois_stable)
      << ", skew form " << yes_no(f.skew_verified) << " (" << f.skew.method << ")\n";
    o << "weak admissibility: " << (f.wa.passed ? "passed" : "failed") << " (" << f.wa.label << ")\n";
  }
  for (const auto& n : c.notes) o << "note: " << n << "\n";
  o << "citations:";
  for (const auto& s : c.citations) o << " " << s;
  o << "\nseed: " << c.seed << "\n";
  return o.str();
}

std::string render_text(const HTClass& h) {
  std::ostringstream o;
  o << "g = " << to_string(h.g) << " (q = " << h.p << "^" << h.s << ")\n";
  for (const auto& li : h.invariants_p)
    o << "  place above " << li.place.ell << " (e=" << li.place.e << ", f=" << li.place.f << "): inv "
      << to_string(li.inv) << "\n";
  o << "  real places: " << h.real_invariant_count << "\n";
  o << "delta = " << h.delta << "\n";
  o << "End^0: " << h.endo_summary << "\n";
  return o.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace avq::io
