// Command-line front end: enumerate, omega, boundary-expression, verify-m11.
// Exit codes: 0 success, 1 validation, 2 verification mismatch, 3 cache integrity.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "taut/database.hpp"
#include "taut/json_io.hpp"
#include "taut/relations.hpp"

using namespace taut;

namespace {

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw ValidationError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ValidationError("cannot write " + out);
  f << text;
}

Json cmd_enumerate(int g, int n, int max_edges) {
  if (max_edges < 0) throw ValidationError("negative edge bound");
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw ValidationError("unstable (g, n)");
  Json out = Json::array();
  for (const auto& G : enumerate_stable_graphs(g, n, max_edges)) {
    Json j = graph_to_json(G);
    j["key"] = canonical_key_hex(G);
    j["automorphisms"] = automorphism_count(G);
    out.push_back(j);
  }
  return out;
}

Json cmd_omega(int g, const std::string& ramification, int degree, const std::string& samples) {
  RampVector A = parse_list(ramification);
  const int n = static_cast<int>(A.size());
  validate_ramp(n, A);
  if (degree < 0) throw ValidationError("negative degree");
  std::cerr << "omega: g=" << g << " n=" << n << " degree<=" << degree << "\n";
  PixtonClass p(g, n, OmegaOptions{0, degree, {}});
  std::cerr << "omega: " << p.graph_count() << " graphs\n";
  QClass c;
  if (samples.empty()) {
    c = p.constant_term(A);
  } else {
    std::vector<long> rs = parse_list(samples);
    long spread = 0;
    for (long a : A) spread += a < 0 ? -a : a;
    for (long r : rs)
      if (r <= spread) throw ValidationError("r samples must exceed the sum of |a_i|");
    const std::size_t need = static_cast<std::size_t>(p.degree_bound()) + 1;
    if (rs.size() < 2 * need)
      throw ValidationError("need " + std::to_string(2 * need) + " r samples (two disjoint sets)");
    std::vector<long> s1(rs.begin(), rs.begin() + need), s2(rs.begin() + need, rs.begin() + 2 * need);
    PClass a = p.interpolate(A, s1);
    PClass b = p.interpolate(A, s2);
    if (!(a == b)) throw InterpolationMismatch("interpolants from the two r-sample sets disagree; retry with larger r");
    c = a.transform_coefficients([](const MultiPoly& m) { return m.constant_term(); });
  }
  Json j = class_to_json(c);
  j["ramification"] = A;
  return j;
}

Json cmd_boundary_expression(int g, int n, const std::string& monomial, const std::string& db_path) {
  Monomial m = parse_monomial(monomial, n);
  std::unique_ptr<RelationDatabase> db;
  if (!db_path.empty()) db = std::make_unique<RelationDatabase>(db_path);
  BoundaryEngine engine(db.get());
  std::cerr << "boundary-expression: " << monomial_key(g, n, m) << "\n";
  BoundaryExpression b = engine.express(g, n, m);
  Json j = expression_to_json(b);
  j["key"] = monomial_key(g, n, m);
  j["genus"] = g;
  j["markings"] = n;
  j["monomial"] = monomial_to_string(m);
  return j;
}

int cmd_verify_m11(const std::string& db_path) {
  std::unique_ptr<RelationDatabase> db;
  if (!db_path.empty()) db = std::make_unique<RelationDatabase>(db_path);
  BoundaryEngine engine(db.get());
  StableGraph loop = trivial_graph(0, 3);
  loop.label = {1, 0, 0};
  loop.partner = {0, 2, 1};
  const Stratum kappa = monomial_stratum(1, 1, {0}, {1});
  const Stratum psi = monomial_stratum(1, 1, {1});
  const Stratum irr = Stratum::bare(validate_stable_graph(loop));
  bool ok = true;
  auto report = [&](const std::string& what, const Rational& expected, const Rational& computed) {
    bool same = expected == computed;
    ok = ok && same;
    std::cout << (same ? "ok       " : "MISMATCH ") << what << ": expected " << expected.get_str() << ", computed "
              << computed.get_str() << "\n";
  };
  // delta_irr is half the loop stratum.
  QClass r1 = dr_relation_coefficient(1, {1, 1, 1, 1}, {0, 1, 1, 1, 0}, {2, 3, 4, 5});
  report("a1a2a3a4: kappa1", make_rational(576, 4), r1.coefficient(kappa));
  report("a1a2a3a4: delta_irr", make_rational(-48, 4), r1.coefficient(irr) * 2);
  QClass r2 = dr_relation_coefficient(1, {2, 1, 1, 0}, {0, 1, 1, 1, 0}, {2, 3, 4, 5});
  const Rational scale = r2.coefficient(irr) * 2 / -1;
  report("a1^2a2a3 / scale: kappa1", 9, r2.coefficient(kappa) / scale);
  report("a1^2a2a3 / scale: psi1", 3, r2.coefficient(psi) / scale);
  report("a1^2a2a3 / scale: delta_irr", -1, r2.coefficient(irr) * 2 / scale);
  QClass k = engine.express(1, 1, Monomial{{0}, {1}}).value;
  QClass p = engine.express(1, 1, Monomial{{1}, {}}).value;
  report("kappa1 in delta_irr", make_rational(1, 12), k.coefficient(irr) * 2);
  report("psi1 in delta_irr", make_rational(1, 12), p.coefficient(irr) * 2);
  const bool single = k.size() == 1 && p.size() == 1;
  std::cout << (single ? "ok       " : "MISMATCH ") << "expressions supported on delta_irr alone\n";
  if (!ok || !single) throw Mismatch("verify-m11 found a mismatch");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tautological ring calculator"};
  app.require_subcommand(1);
  int genus = 0, markings = 0, degree = 0, max_edges = 0;
  std::string ramification, monomial, db, out, samples;

  auto* en = app.add_subcommand("enumerate", "stable graphs of type (g, n)");
  en->add_option("--genus", genus)->required();
  en->add_option("--markings", markings)->required();
  en->add_option("--max-edges,--degree", max_edges)->required();
  en->add_option("--out", out);

  auto* om = app.add_subcommand("omega", "constant term of the DR cycle class Omega");
  om->add_option("--genus", genus)->required();
  om->add_option("--ramification", ramification, "comma-separated integers summing to 0")->required();
  om->add_option("--degree", degree)->required();
  om->add_option("--r-samples", samples, "comma-separated r values, two disjoint sets");
  om->add_option("--out", out);

  auto* be = app.add_subcommand("boundary-expression", "boundary expression of a psi/kappa monomial");
  be->add_option("--genus", genus)->required();
  be->add_option("--markings", markings)->required();
  be->add_option("--monomial", monomial, "e.g. psi1^2*kappa1")->required();
  be->add_option("--db", db);
  be->add_option("--out", out);

  auto* vm = app.add_subcommand("verify-m11", "run both M11 pipelines and compare");
  vm->add_option("--db", db);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*en) emit(cmd_enumerate(genus, markings, max_edges), out);
    if (*om) emit(cmd_omega(genus, ramification, degree, samples), out);
    if (*be) emit(cmd_boundary_expression(genus, markings, monomial, db), out);
    if (*vm) return cmd_verify_m11(db);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const IntegrityError& e) {
    std::cerr << "cache integrity error: " << e.what() << "\n";
    return 3;
  } catch (const Mismatch& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const InterpolationMismatch& e) {
    std::cerr << "interpolation mismatch: " << e.what() << "\n";
    return 2;
  } catch (const DefectError& e) {
    std::cerr << "internal defect: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
