// chiral: command-line front end.
// Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chiral/acceptance.hpp"
#include "chiral/axioms.hpp"
#include "chiral/basis.hpp"
#include "chiral/classical.hpp"
#include "chiral/ds.hpp"
#include "chiral/engine.hpp"
#include "chiral/errors.hpp"
#include "chiral/ihr.hpp"
#include "chiral/io.hpp"
#include "chiral/lie.hpp"
#include "chiral/poisson.hpp"
#include "chiral/wgen.hpp"

using namespace chiral;
using json = nlohmann::ordered_json;

namespace {

struct Report {
  json machine = json::object();
  std::vector<std::string> human;
  int code = 0;

  void line(const std::string& s) { human.push_back(s); }
  void fail(const std::string& s) {
    code = 1;
    human.push_back("FAIL: " + s);
  }
};

struct Globals {
  std::string format = "human";
  std::string out;
};

std::string row_str(const std::vector<size_t>& r) {
  std::string s = "[";
  for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

std::string seconds_since(std::chrono::steady_clock::time_point t0) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

PartitionMu partition_for(const std::string& text, int n) {
  const PartitionMu mu = PartitionMu::parse(text);
  if (mu.N != n)
    throw UsageError("partition " + mu.str() + " has size " + std::to_string(mu.N) + ", not N = " +
                     std::to_string(n));
  return mu;
}

BigRational parse_rational(const std::string& text) {
  try {
    BigRational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw UsageError("bad rational '" + text + "'");
  }
}

// ---- check ----------------------------------------------------------------

Report cmd_check(const std::string& path, int weight_cutoff, int length_cutoff) {
  Report r;
  const std::string text = read_file(path);
  r.machine["command"] = "check";
  if (is_poisson_file(text)) {
    JetAlgebra alg(poisson_from_json(text));
    const auto w = check_vertex_poisson(alg);
    r.machine["kind"] = "vertex Poisson";
    r.machine["ok"] = !w;
    if (w) {
      r.machine["witness"] = *w;
      r.fail("vertex Poisson identity fails: " + *w);
    } else {
      r.line("skewsymmetry and Jacobi hold on all generator pairs and triples");
    }
    return r;
  }
  const Presentation p = presentation_from_json(text);
  const AxiomReport a = check_axioms(p, AxiomOptions{weight_cutoff, length_cutoff, 6});
  r.machine["presentation"] = p.name;
  r.machine["weight_cutoff"] = weight_cutoff;
  r.machine["length_cutoff"] = length_cutoff;
  r.machine["ok"] = a.ok;
  r.machine["skew_checked"] = a.skew_checked;
  r.machine["jacobi_checked"] = a.jacobi_checked;
  r.machine["identities"] = a.lines;
  for (const auto& l : a.lines) r.line(l);
  r.line(p.name + ": " + std::to_string(a.skew_checked) + " skewsymmetry and " +
         std::to_string(a.jacobi_checked) + " Jacobi identities checked");
  if (!a.ok) {
    r.machine["witness"] = a.witness.value_or("");
    r.fail(a.witness.value_or("axiom violation"));
  }
  return r;
}

// ---- ope ------------------------------------------------------------------

Report cmd_ope(const std::string& path, const std::string& a_text, const std::string& b_text) {
  Report r;
  const Presentation p = presentation_from_json(read_file(path));
  Engine eng(p);
  const Element a = parse_element(p, a_text, &eng), b = parse_element(p, b_text, &eng);
  const LambdaPoly br = eng.bracket(a, b);
  r.machine["command"] = "ope";
  r.machine["presentation"] = p.name;
  r.machine["a"] = format_element(p, a);
  r.machine["b"] = format_element(p, b);
  json prods = json::array();
  for (int n = br.degree(); n >= -1; --n) {
    const Element v = n >= 0 ? br.product(n) : eng.normal_product(a, b);
    const std::string s = format_element(p, v);
    prods.push_back({{"n", n}, {"value", s}});
    r.line("a_(" + std::to_string(n) + ") b = " + s);
  }
  r.machine["products"] = prods;
  return r;
}

// ---- basis ----------------------------------------------------------------

Report cmd_basis(const std::string& path, const std::string& weight, std::optional<int> ghost,
                 std::optional<int> length_cutoff, std::optional<int> e_charge) {
  Report r;
  const Presentation p = presentation_from_json(read_file(path));
  BasisQuery q;
  q.weight = parse_rational(weight);
  q.ghost = ghost;
  q.length_cutoff = length_cutoff;
  q.e_charge = e_charge;
  const auto ms = enumerate_basis(p, q);
  r.machine["command"] = "basis";
  r.machine["presentation"] = p.name;
  r.machine["weight"] = q.weight.get_str();
  if (ghost) r.machine["ghost"] = *ghost;
  if (length_cutoff) r.machine["length_cutoff"] = *length_cutoff;
  if (e_charge) r.machine["e_charge"] = *e_charge;
  json list = json::array();
  for (const auto& m : ms) {
    const std::string s = format_element(p, Element(m));
    list.push_back(s);
    r.line(s);
  }
  r.machine["dimension"] = ms.size();
  r.machine["monomials"] = list;
  r.line("dimension " + std::to_string(ms.size()));
  return r;
}

// ---- ds-reduce ------------------------------------------------------------

Report cmd_ds_reduce(int n, const std::string& mu_text, int cutoff) {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const PartitionMu mu = partition_for(mu_text, n);
  const GoodGrading g = build_nilpotent(mu);
  DSComplex ds(g);
  r.machine["command"] = "ds-reduce";
  r.machine["N"] = n;
  r.machine["mu"] = mu.str();
  r.machine["cutoff"] = cutoff;
  r.machine["conventions"] = {{"bilinear_form", "tr(xy)"}, {"dual_coxeter", n}};
  r.line("DS reduction of gl" + std::to_string(n) + " at " + mu.str() + ", weights 0.." +
         std::to_string(cutoff) + " (form tr(xy), dual Coxeter " + std::to_string(n) + ")");

  const DSquaredReport d2 = ds.check_d_squared(cutoff);
  r.machine["d_squared"] = {{"ok", d2.ok}, {"checks", d2.checks}};
  r.line("d^2 = 0: " + std::string(d2.ok ? "ok" : "FAILS") + " (" + std::to_string(d2.checks) +
         " checks)");
  if (!d2.ok) r.fail("d^2 != 0: " + d2.witness);

  const CohomologyTable t = ds.cohomology(cutoff);
  std::vector<BigRational> sw;
  for (const auto& s : slice_coordinates(g)) sw.push_back(s.weight);
  const std::vector<size_t> slice = slice_character(sw, cutoff);
  json rows = json::array();
  bool concentrated = true;
  for (int gh = 0; gh <= t.max_ghost; ++gh) {
    std::vector<size_t> row;
    for (const auto& w : t.cohomology_dims) row.push_back(w[gh]);
    if (gh > 0 && row != std::vector<size_t>(row.size(), 0)) concentrated = false;
    rows.push_back({{"ghost", gh}, {"dims", row}});
    r.line("H^" + std::to_string(gh) + " by weight: " + row_str(row));
  }
  std::vector<size_t> row0;
  for (const auto& w : t.cohomology_dims) row0.push_back(w[0]);
  r.machine["cohomology"] = rows;
  r.machine["complex_dims"] = t.complex_dims;
  r.machine["slice_character"] = slice;
  r.machine["concentrated"] = concentrated;
  r.machine["hbar_homogeneous"] = t.hbar_homogeneous;
  r.line("slice character: " + row_str(slice));
  if (!concentrated) r.fail("cohomology in nonzero ghost degree");
  if (row0 != slice) r.fail("degree-zero dims differ from the slice character");

  const auto gens = extract_generators(ds, cutoff);
  json gl = json::array();
  std::string ws;
  for (const auto& x : gens) {
    gl.push_back({{"weight", x.weight.get_str()}, {"rep", format_element(ds.big(), x.rep)}});
    ws += (ws.empty() ? "" : ",") + x.weight.get_str();
  }
  r.machine["generators"] = gl;
  r.line("generator weights: {" + ws + "}");

  if (cutoff >= 2) {
    const auto v = identify_virasoro(ds);
    if (v) {
      r.machine["virasoro"] = {{"c", v->c.str()}, {"L", format_element(ds.big(), v->L)}};
      r.line("c(k) = " + v->c.str());
    } else {
      r.machine["virasoro"] = nullptr;
      r.line("no Virasoro element found");
    }
  }

  ClassicalDS cl(g);
  const CompareReport cmp = classical_compare(ds, cl, cutoff);
  r.machine["classical_compare"] = {{"ok", cmp.ok}, {"cells", cmp.cells}};
  r.line("classical compare: " + std::string(cmp.ok ? "equal" : "MISMATCH") + " on " +
         std::to_string(cmp.cells) + " cells");
  if (!cmp.ok) r.fail("classical compare: " + cmp.witness);
  r.line("time " + seconds_since(t0));
  return r;
}

// ---- classical ------------------------------------------------------------

Report cmd_classical_file(const std::string& path, std::optional<std::string> casimir) {
  Report r;
  const std::string text = read_file(path);
  const PoissonPresentation pp =
      is_poisson_file(text) ? poisson_from_json(text) : classical_limit(presentation_from_json(text));
  r.machine["command"] = "classical";
  r.machine["poisson"] = json::parse(poisson_to_json(pp));
  JetAlgebra alg(pp);
  const auto w = check_vertex_poisson(alg);
  r.machine["vertex_poisson"] = !w;
  r.line("vertex Poisson axioms: " + std::string(w ? "FAIL" : "ok"));
  if (w) r.fail(*w);
  if (casimir) {
    const auto res = casimir_search(alg, parse_rational(*casimir), BigRational(1, 2));
    json list = json::array();
    for (const auto& c : res) {
      json cls = json::array();
      for (const auto& x : c.classes) cls.push_back(format_jet(pp, x));
      list.push_back({{"weight", c.weight.get_str()}, {"classes", cls}});
      std::string s;
      for (const auto& x : cls) s += (s.empty() ? "" : ", ") + x.get<std::string>();
      r.line("Casimir classes at weight " + c.weight.get_str() + ": {" + s + "}");
    }
    r.machine["casimir"] = list;
  }
  return r;
}

Report cmd_classical_ds(int n, const std::string& mu_text, int cutoff) {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const PartitionMu mu = partition_for(mu_text, n);
  const GoodGrading g = build_nilpotent(mu);
  ClassicalDS c(g);
  r.machine["command"] = "classical";
  r.machine["N"] = n;
  r.machine["mu"] = mu.str();
  r.machine["cutoff"] = cutoff;
  const DSquaredReport d2 = c.check_d_squared(cutoff);
  r.machine["d_squared"] = {{"ok", d2.ok}, {"checks", d2.checks}};
  r.line("classical BRST of gl" + std::to_string(n) + " at " + mu.str() + ": d^2 = 0 " +
         (d2.ok ? "ok" : "FAILS"));
  if (!d2.ok) r.fail(d2.witness);
  const CohomologyTable t = c.cohomology(cutoff);
  json rows = json::array();
  std::vector<size_t> row0;
  bool concentrated = true;
  for (int gh = 0; gh <= t.max_ghost; ++gh) {
    std::vector<size_t> row;
    for (const auto& w : t.cohomology_dims) row.push_back(w[gh]);
    if (gh == 0) row0 = row;
    if (gh > 0 && row != std::vector<size_t>(row.size(), 0)) concentrated = false;
    rows.push_back({{"ghost", gh}, {"dims", row}});
    r.line("H^" + std::to_string(gh) + " by weight: " + row_str(row));
  }
  std::vector<BigRational> sw;
  for (const auto& s : slice_coordinates(g)) sw.push_back(s.weight);
  const std::vector<size_t> slice = slice_character(sw, cutoff);
  r.machine["cohomology"] = rows;
  r.machine["slice_character"] = slice;
  r.machine["concentrated"] = concentrated;
  r.line("slice character: " + row_str(slice));
  if (!concentrated) r.fail("cohomology in nonzero ghost degree");
  if (row0 != slice) r.fail("degree-zero dims differ from the slice character");
  r.line("time " + seconds_since(t0));
  return r;
}

// ---- ihr-verify -----------------------------------------------------------

Report cmd_ihr_verify(int n, const std::string& mu_text, const std::string& alpha_text,
                      int cutoff, const std::string& solution_out, const std::string& load) {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const PartitionMu mu = partition_for(mu_text, n);
  const CorootAlpha alpha = CorootAlpha::parse(alpha_text);
  const PartitionMu target = coroot_add(mu, alpha, n);
  r.machine["command"] = "ihr-verify";
  r.machine["N"] = n;
  r.machine["mu"] = mu.str();
  r.machine["alpha"] = std::to_string(alpha.i) + "," + std::to_string(alpha.j);
  r.machine["target"] = target.str();
  r.machine["cutoff"] = cutoff;
  r.machine["lattice_normalization"] = "dressings kept";
  r.line("embedding of V(gl" + std::to_string(n) + ") into W " + target.str() +
         " (x) localized fields, weights <= " + std::to_string(cutoff) +
         "; lattice normalization: dressings kept");

  std::optional<EmbeddingProblem> prob;
  try {
    prob = pin_comoment(gl_embedding_problem(n, mu, alpha));
  } catch (const NoComoment&) {
    throw;
  } catch (const Error& e) {
    r.machine["embedding"] = {{"built", false}, {"reason", e.what()}};
    r.fail(std::string("embedding not built: ") + e.what());
  }
  if (prob) {
    try {
      EmbeddingSolution s;
      if (!load.empty()) {
        s.problem = *prob;
        s.images = solution_images_from_json(*prob, read_file(load));
        s.certificate = verify_embedding(*prob, s.images, cutoff);
      } else {
        s = solve_embedding(*prob, cutoff);
      }
      const EmbeddingCertificate& c = s.certificate;
      json images = json::object(), inj = json::array();
      for (size_t i = 0; i < s.images.size(); ++i) {
        const std::string name = prob->source.gen(static_cast<int>(i)).name;
        const std::string v = format_element(prob->target, s.images[i]);
        images[name] = v;
        r.line(name + " -> " + v);
      }
      std::string ranks;
      for (const auto& [w, k] : c.injectivity) {
        inj.push_back({{"weight", w}, {"rank", k}});
        ranks += (ranks.empty() ? "" : ",") + std::to_string(k);
      }
      json emb = {{"built", true},
                  {"label", prob->label},
                  {"images", images},
                  {"certificate",
                   {{"pairs_checked", c.pairs_checked},
                    {"injectivity", inj},
                    {"classical_ok", c.classical_ok}}}};
      if (load.empty()) {
        emb["unknowns"] = s.unknowns;
        emb["free_parameters"] = s.free_parameters;
        r.line(std::to_string(s.unknowns) + " unknowns, " + std::to_string(s.free_parameters) +
               " free parameters");
      }
      emb["source"] = load.empty() ? "solver" : "solution file";
      r.machine["embedding"] = emb;
      r.line("certificate: " + std::to_string(c.pairs_checked) +
             " pair residuals zero; injective ranks [" + ranks + "]; classical shadow " +
             (c.classical_ok ? "Poisson" : "FAILS"));
      if (!c.classical_ok) r.fail("classical shadow: " + c.classical_witness);
      if (!solution_out.empty()) {
        write_file(solution_out, solution_to_json(s));
        r.line("solution written to " + solution_out);
      }
    } catch (const Unsolvable& e) {
      r.machine["embedding"] = {{"built", true}, {"error", e.what()}};
      r.fail(std::string("unsolvable: ") + e.what());
    } catch (const AnsatzTooSmall& e) {
      r.machine["embedding"] = {{"built", true}, {"error", e.what()}};
      r.fail(std::string("ansatz too small: ") + e.what());
    } catch (const ResidualNonzero& e) {
      r.machine["embedding"] = {{"built", true}, {"error", e.what()}};
      r.fail(std::string("verification: ") + e.what());
    }
  }

  try {
    const StagesReport st = stages_check(n, mu, alpha, cutoff);
    json sj = {{"from", st.from.str()},
               {"to", st.to.str()},
               {"staged", st.staged},
               {"direct", st.direct},
               {"higher_vanish", st.higher_vanish},
               {"ok", st.ok}};
    if (st.root) sj["root"] = {st.root->first + 1, st.root->second + 1};
    r.machine["stages"] = sj;
    r.line("stages " + st.from.str() + " -> " + st.to.str() + ": staged " + row_str(st.staged) +
           (st.ok ? " = " : " != ") + "direct " + row_str(st.direct));
    if (!st.ok) r.fail("reduction by stages disagrees");
  } catch (const Error& e) {
    r.machine["stages"] = {{"built", false}, {"reason", e.what()}};
    r.fail(std::string("stages not built: ") + e.what());
  }
  r.line("time " + seconds_since(t0));
  return r;
}

// ---- accept ---------------------------------------------------------------

Report cmd_accept(const std::vector<std::string>& only) {
  Report r;
  const auto ids = select_criteria(only);
  const auto results = run_acceptance(ids, &std::cerr);
  r.machine = json::parse(machine_report(results));
  std::istringstream hs(human_report(results));
  for (std::string l; std::getline(hs, l);) r.line(l);
  for (const auto& x : results)
    if (!x.pass) r.code = 1;
  return r;
}

void emit(const Report& r, const Globals& g) {
  std::string text;
  if (g.format == "machine") {
    text = r.machine.dump(2) + "\n";
  } else {
    for (const auto& l : r.human) text += l + "\n";
  }
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact vertex algebra and Drinfeld-Sokolov reduction toolkit"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--format", glob.format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--out", glob.out, "Write the report to this file");

  std::string path, a_text, b_text, weight = "0", mu_text, alpha_text = "1,2", casimir_cut,
                                    solution_out, load;
  int wcut = 3, lcut = 2, n = 0, cutoff = 3;
  std::optional<int> ghost, basis_len, e_charge;
  std::vector<std::string> only;

  auto* check = app.add_subcommand("check", "Check the vertex algebra axioms of a presentation file");
  check->add_option("path", path, "Presentation file")->required();
  check->add_option("--weight-cutoff", wcut)->check(CLI::PositiveNumber);
  check->add_option("--length-cutoff", lcut)->check(CLI::PositiveNumber);

  auto* ope = app.add_subcommand("ope", "All n-th products of two elements");
  ope->add_option("path", path, "Presentation file")->required();
  ope->add_option("--a", a_text, "Left element")->required();
  ope->add_option("--b", b_text, "Right element")->required();

  auto* basis = app.add_subcommand("basis", "PBW basis of a graded piece");
  basis->add_option("path", path, "Presentation file")->required();
  basis->add_option("--weight", weight, "Conformal weight, e.g. 3/2");
  basis->add_option("--ghost", ghost);
  basis->add_option("--length-cutoff", basis_len)->check(CLI::PositiveNumber);
  basis->add_option("--e-charge", e_charge);

  auto* ds = app.add_subcommand("ds-reduce", "Quantum Drinfeld-Sokolov reduction report");
  ds->add_option("--N", n)->required()->check(CLI::PositiveNumber);
  ds->add_option("--mu", mu_text)->required();
  ds->add_option("--cutoff", cutoff)->check(CLI::NonNegativeNumber);

  auto* cl = app.add_subcommand("classical", "Classical limits and classical BRST reduction");
  cl->add_option("path", path, "Presentation or Poisson file");
  cl->add_option("--N", n)->check(CLI::PositiveNumber);
  cl->add_option("--mu", mu_text);
  cl->add_option("--cutoff", cutoff)->check(CLI::NonNegativeNumber);
  cl->add_option("--casimir", casimir_cut, "Casimir search up to this weight");

  auto* ihr = app.add_subcommand("ihr-verify", "Solve and verify the inverse reduction embedding");
  ihr->add_option("--N", n)->required()->check(CLI::PositiveNumber);
  ihr->add_option("--mu", mu_text)->required();
  ihr->add_option("--alpha", alpha_text);
  ihr->add_option("--cutoff", cutoff)->check(CLI::NonNegativeNumber);
  ihr->add_option("--solution", solution_out, "Write the solution file here");
  ihr->add_option("--load", load, "Verify images from a solution file instead of solving");

  auto* acc = app.add_subcommand("accept", "Run the acceptance suite");
  acc->add_option("--only", only, "Criterion numbers, slugs or module names")->delimiter(',');

  for (auto* s : {check, ope, basis, ds, cl, ihr, acc}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Report r;
    if (*check) {
      r = cmd_check(path, wcut, lcut);
    } else if (*ope) {
      r = cmd_ope(path, a_text, b_text);
    } else if (*basis) {
      r = cmd_basis(path, weight, ghost, basis_len, e_charge);
    } else if (*ds) {
      r = cmd_ds_reduce(n, mu_text, cutoff);
    } else if (*cl) {
      if (!path.empty()) {
        r = cmd_classical_file(path, casimir_cut.empty() ? std::nullopt
                                                         : std::optional<std::string>(casimir_cut));
      } else {
        if (n == 0 || mu_text.empty()) throw UsageError("classical needs a file or --N and --mu");
        r = cmd_classical_ds(n, mu_text, cutoff);
      }
    } else if (*ihr) {
      r = cmd_ihr_verify(n, mu_text, alpha_text, cutoff, solution_out, load);
    } else if (*acc) {
      r = cmd_accept(only);
    }
    emit(r, glob);
    return r.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const NotDominant& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
