#include "avq/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "avq/error.hpp"
#include "avq/exactalg.hpp"
#include "avq/io.hpp"

namespace avq::cli {

namespace {

using io::Json;

struct Common {
  std::string format = "json";
  long precision = kDefaultPrecisionCap;
  unsigned long seed = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--precision", c.precision, "Precision cap for l-adic and interval work")
      ->check(CLI::Range(kDefaultPrecisionCap, 1L << 24));
  sub->add_option("--seed", c.seed, "Seed for randomized steps");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

IntPoly parse_coeffs(const std::string& s, long p) {
  Json a = Json::array();
  for (const auto& item : split_list(s)) a.push_back(item);
  return io::parse_int_poly(a, p);
}

// --input is a path, "-" for standard input, or inline JSON.
Json load_input(const std::string& source) {
  std::string text;
  if (!source.empty() && source.front() == '{') {
    text = source;
  } else if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(source);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot read input file '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

void require_prime(long p) {
  if (p < 2 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "--p must be a prime");
}

int check_poly(long p, const std::string& coeffs, const Common& c, std::ostream& out) {
  require_prime(p);
  IntPoly P = parse_coeffs(coeffs, p);
  const bool ok = is_p_weil_poly(P, p);
  Json factors = Json::array();
  for (const auto& f : factor_over_z(P))
    factors.push_back({{"g", io::poly(f.poly)},
                       {"multiplicity", f.multiplicity},
                       {"weil", f.poly.is_monic() && is_weil_minpoly(f.poly, Int(p))}});
  if (c.format == "json") {
    out << io::dump(Json{{"p", p},
                         {"poly", io::poly(P)},
                         {"p_weil", ok},
                         {"x2_minus_p_multiplicity", multiplicity_of_x2_minus_p(P, p)},
                         {"factors", factors}});
  } else {
    out << to_string(P) << (ok ? " is " : " is not ") << "a " << p << "-Weil polynomial\n";
    for (const auto& f : factors)
      out << "  factor " << to_string(io::parse_int_poly(f["g"], p)) << " ^" << f["multiplicity"].get<long>()
          << (f["weil"].get<bool>() ? "" : "  (not Weil)") << "\n";
  }
  return ok ? kAccepted : kRejected;
}

int honda_tate(long p, long s, const std::string& coeffs, long r, long dim, const Common& c, std::ostream& out) {
  require_prime(p);
  if (s < 1) throw Error(ErrorCode::InvalidInput, "--s must be positive");
  IntPoly g = parse_coeffs(coeffs, p);
  HTClass h = ht_invariants(g, s, p, c.precision);
  Json j = io::to_json(h);
  std::optional<EmbeddingReport> emb;
  if (r > 0) {
    if (dim <= 0) throw Error(ErrorCode::InvalidInput, "--r needs --dim");
    emb = embedding_test(r, g, s, p, dim, c.precision);
    j["embedding"] = {{"r", r}, {"m", dim}, {"field_degree", emb->field_degree}, {"n", emb->n}, {"ok", emb->ok}};
  }
  if (c.format == "json") {
    out << io::dump(j);
  } else {
    out << io::render_text(h);
    if (emb)
      out << "embedding: [F(zeta_r):F] = " << emb->field_degree << ", n = " << emb->n << ", m = " << dim
          << (emb->ok ? ", divides\n" : ", does not divide\n");
  }
  return emb && !emb->ok ? kRejected : kAccepted;
}

int decompose(long p, const std::string& input, const Common& c, std::ostream& out) {
  require_prime(p);
  Json doc = load_input(input);
  const Json& m = doc.contains("matrices") ? doc.at("matrices") : doc;
  if (!m.contains("F0") || !m.contains("T")) throw Error(ErrorCode::InvalidInput, "input needs matrices F0 and T");
  auto cs = decompose_matrices(io::parse_rat_matrix(m.at("F0"), p), io::parse_rat_matrix(m.at("T"), p), p);
  if (c.format == "json") {
    out << io::dump(Json{{"p", p}, {"components", io::to_json(cs)}});
  } else {
    for (const auto& d : cs) out << "r=" << d.r << " g=" << to_string(d.pi_minpoly) << " N=" << d.dim << "\n";
  }
  return kAccepted;
}

int classify_cmd(long p, const std::string& input, const Common& c, long retry_cap, std::ostream& out) {
  Json doc = load_input(input);
  ClassifyInput in = io::parse_classify_input(doc, p);
  ClassifyOptions opt;
  opt.precision_cap = c.precision;
  opt.seed = c.seed;
  opt.retry_cap = retry_cap;
  Certificate cert = classify(in, opt);
  if (c.format == "json")
    out << io::dump(io::to_json(cert));
  else
    out << io::render_text(cert);
  return cert.accepted ? kAccepted : kRejected;
}

int corpus(const std::string& primes, const Common& c, std::ostream& out) {
  std::vector<long> ps;
  for (const auto& item : split_list(primes)) {
    long p = 0;
    try {
      p = std::stol(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad prime '" + item + "'");
    }
    require_prime(p);
    ps.push_back(p);
  }
  if (ps.empty()) throw Error(ErrorCode::InvalidInput, "--primes is empty");

  ClassifyOptions opt;
  opt.precision_cap = c.precision;
  opt.seed = c.seed;
  Json quat = Json::array(), ell = Json::array();
  std::ostringstream text;
  bool consistent = true;
  text << "inertia of order 8, component (8, X + p, 4):\n";
  for (long p : ps) {
    ClassifyInput in;
    in.p = p;
    in.components = {{8, IntPoly{Int(p), Int(1)}, 4}};
    auto cert = classify(in, opt);
    Json row{{"p", p}, {"verdict", cert.accepted ? "accepted" : "rejected"}};
    row["clause"] = cert.accepted ? Json(nullptr) : Json(cert.clause);
    text << "  p=" << p << ": " << (cert.accepted ? "accepted" : "rejected [" + cert.clause + "]");
    if (p % 2 == 1 && p % 8 != 1) {
      auto t = verify_tau(p);
      row["tau"] = io::to_json(t);
      text << "; D = (" << to_string(t.algebra.alg.a) << ", " << to_string(t.algebra.alg.b)
           << "), Phi_8(tau) = 0: " << (t.phi8_vanishes ? "yes" : "no")
           << ", f0 tau = tau^p f0: " << (t.frobenius_relation ? "yes" : "no");
      consistent = consistent && cert.accepted && t.phi8_vanishes && t.frobenius_relation;
    } else {
      row["tau"] = nullptr;
      consistent = consistent && !cert.accepted;
    }
    text << "\n";
    quat.push_back(std::move(row));
  }
  text << "elliptic curves with inertia of order e:\n";
  for (long e : {3L, 4L, 6L})
    for (long p : ps) {
      if (p < 5) continue;
      auto ec = elliptic_descriptor(e, p);
      ClassifyInput in;
      in.p = p;
      in.components = {ec.descriptor};
      auto cert = classify(in, opt);
      ell.push_back({{"e", e},
                     {"p", p},
                     {"component", io::to_json(std::vector{ec.descriptor})[0]},
                     {"frobenius", io::poly(ec.frobenius)},
                     {"verdict", cert.accepted ? "accepted" : "rejected"},
                     {"ordinary", cert.ordinary}});
      consistent = consistent && cert.accepted && cert.ordinary == ec.ordinary;
      text << "  e=" << e << " p=" << p << ": " << (cert.accepted ? "accepted" : "rejected") << ", "
           << (cert.ordinary ? "ordinary" : "supersingular") << ", frobenius " << to_string(ec.frobenius) << "\n";
    }
  if (c.format == "json")
    out << io::dump(Json{{"primes", ps}, {"quaternion", quat}, {"elliptic", ell}, {"consistent", consistent}, {"seed", c.seed}});
  else
    out << text.str() << "consistent: " << (consistent ? "yes" : "no") << "\n";
  return consistent ? kAccepted : kRejected;
}

int exit_for(const Error& e) {
  if (e.retriable() || e.code() == ErrorCode::EndpointRoot) return kRetriable;
  if (e.code() == ErrorCode::InvalidInput) return kInvalidInput;
  return kRejected;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tame Galois representations and abelian varieties: exact classification checks", "avq"};
  app.require_subcommand(1);

  Common common;
  long p = 0, s = 1, r = 0, dim = 0, retry_cap = 32;
  std::string coeffs, input, primes;

  auto* cp = app.add_subcommand("check-poly", "Is a polynomial a p-Weil polynomial");
  cp->add_option("--p", p, "Prime")->required();
  cp->add_option("--coeffs", coeffs, "Coefficients, constant term first, comma separated")->required();
  add_common(cp, common);

  auto* ht = app.add_subcommand("honda-tate", "Local invariants and endomorphism algebra of a Weil number");
  ht->add_option("--p", p, "Prime")->required();
  ht->add_option("--coeffs", coeffs, "Minimal polynomial, constant term first")->required();
  ht->add_option("--s", s, "The Weil number is a p^s-Weil number");
  ht->add_option("--r", r, "Also test the embedding of F(zeta_r) for this inertia order");
  ht->add_option("--dim", dim, "Dimension m for the embedding test");
  add_common(ht, common);

  auto* dc = app.add_subcommand("decompose", "Q-elementary components of a matrix model (F0, T)");
  dc->add_option("--p", p, "Prime")->required();
  dc->add_option("--input", input, "JSON file, '-' for stdin, or inline JSON")->required();
  add_common(dc, common);

  auto* cl = app.add_subcommand("classify", "Decide realisability and emit a certificate");
  cl->add_option("--p", p, "Prime (overrides the one in the input)");
  cl->add_option("--input", input, "JSON file, '-' for stdin, or inline JSON")->required();
  cl->add_option("--retry-cap", retry_cap, "Sampling attempts for large skew-form searches")
      ->check(CLI::PositiveNumber);
  add_common(cl, common);

  auto* co = app.add_subcommand("corpus", "Regenerate the quaternion and elliptic tables");
  co->add_option("--primes", primes, "Comma separated primes")->required();
  add_common(co, common);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAccepted;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAccepted;
  } catch (const CLI::ParseError& e) {
    err << "avq: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (cp->parsed()) return check_poly(p, coeffs, common, out);
    if (ht->parsed()) return honda_tate(p, s, coeffs, r, dim, common, out);
    if (dc->parsed()) return decompose(p, input, common, out);
    if (cl->parsed()) return classify_cmd(p, input, common, retry_cap, out);
    if (co->parsed()) return corpus(primes, common, out);
  } catch (const Error& e) {
    err << "avq: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "avq: invalid input: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace avq::cli
