#include "chiral/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "chiral/axioms.hpp"
#include "chiral/classical.hpp"
#include "chiral/ds.hpp"
#include "chiral/errors.hpp"
#include "chiral/ihr.hpp"
#include "chiral/io.hpp"
#include "chiral/library.hpp"
#include "chiral/lie.hpp"
#include "chiral/oracle.hpp"
#include "chiral/poisson.hpp"
#include "chiral/wgen.hpp"

namespace chiral {

namespace {

using json = nlohmann::ordered_json;

struct Criterion {
  int id;
  const char* slug;
  const char* title;
  std::vector<const char*> modules;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "axioms", "axiom suite on shipped presentations", {"chiral-core"}},
      {2, "oracle", "engine against mode oracle", {"chiral-core"}},
      {3, "d-squared", "DS differential squares to zero", {"ds-reduction"}},
      {4, "cohomology", "degree-zero concentration and characters", {"ds-reduction", "lie-data"}},
      {5, "classical-compare", "h -> 0 of quantum DS equals classical BRST", {"ds-reduction", "poisson-arc"}},
      {6, "virasoro", "Virasoro extraction for gl2 [2]", {"ds-reduction", "scalars"}},
      {7, "ihr", "gl2 embedding into W [2] with localized fields", {"ihr"}},
      {8, "stages", "classical reduction by stages", {"ihr", "lie-data"}},
      {9, "casimir", "Casimir classes of cotangent jets", {"poisson-arc"}},
      {10, "determinism", "machine report is byte-identical on rerun", {"cli"}},
  };
  return all;
}

std::string row_str(const std::vector<size_t>& r) {
  std::string s = "[";
  for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

std::vector<size_t> ghost_row(const CohomologyTable& t, int g) {
  std::vector<size_t> r;
  for (const auto& w : t.cohomology_dims) r.push_back(w[g]);
  return r;
}

std::vector<size_t> slice_row(const GoodGrading& g, int max_weight) {
  std::vector<BigRational> w;
  for (const auto& s : slice_coordinates(g)) w.push_back(s.weight);
  return slice_character(w, max_weight);
}

GoodGrading grading(const char* mu) { return build_nilpotent(PartitionMu::parse(mu)); }

void axioms(CriterionResult& r) {
  const std::vector<Presentation> all = {beta_gamma(1), beta_gamma(2), bc_system(1),
                                         bc_system(2),  heisenberg(),  affine_gl(2),
                                         affine_gl(3),  localized(1),  localized(2)};
  r.pass = true;
  size_t skew = 0, jac = 0;
  json list = json::array();
  for (const auto& p : all) {
    const AxiomReport a = check_axioms(p, AxiomOptions{3, 2, 6});
    skew += a.skew_checked;
    jac += a.jacobi_checked;
    json e = {{"presentation", p.name}, {"ok", a.ok}, {"skew", a.skew_checked},
              {"jacobi", a.jacobi_checked}};
    if (!a.ok) {
      r.pass = false;
      e["witness"] = a.witness.value_or("");
      if (r.summary.empty()) r.summary = p.name + ": " + a.witness.value_or("failed");
    }
    list.push_back(e);
  }
  r.facts = {{"weight_cutoff", 3}, {"presentations", list}};
  if (r.pass)
    r.summary = std::to_string(all.size()) + " presentations, " + std::to_string(skew) +
                " skew and " + std::to_string(jac) + " Jacobi identities exact";
}

void oracle(CriterionResult& r) {
  r.pass = true;
  json list = json::array();
  std::string s;
  for (const auto& p : {beta_gamma(1), bc_system(1)}) {
    const EquivalenceReport e = engine_oracle_equivalence(p, 200, 20240601, 4);
    const bool ok = e.mismatches == 0 && e.checked >= 200;
    r.pass = r.pass && ok;
    json f = {{"presentation", p.name}, {"checked", e.checked}, {"mismatches", e.mismatches}};
    if (!ok) f["first_mismatch"] = e.first_mismatch;
    list.push_back(f);
    s += (s.empty() ? "" : ", ") + p.name + " " + std::to_string(e.checked - e.mismatches) + "/" +
         std::to_string(e.checked);
  }
  r.facts = {{"seed", 20240601}, {"max_weight", 4}, {"cases", list}};
  r.summary = s + " products agree";
}

void d_squared(CriterionResult& r) {
  r.pass = true;
  json list = json::array();
  std::string s;
  for (auto [mu, w] : {std::pair{"2", 4}, {"3", 3}, {"2,1", 3}}) {
    DSComplex c(grading(mu));
    const DSquaredReport d = c.check_d_squared(w);
    r.pass = r.pass && d.ok;
    json f = {{"mu", mu}, {"max_weight", w}, {"ok", d.ok}, {"checks", d.checks}};
    if (!d.ok) f["witness"] = d.witness;
    list.push_back(f);
    s += std::string(s.empty() ? "" : ", ") + "[" + mu + "] " + (d.ok ? "ok" : "FAILED");
  }
  DSComplex bad(grading("3"), DSOptions{true});
  const DSquaredReport ctl = bad.check_d_squared(2);
  r.pass = r.pass && !ctl.ok;
  r.facts = {{"cases", list},
             {"control", {{"mu", "3"}, {"drop_trilinear", true}, {"fails", !ctl.ok}}}};
  r.summary = s + "; control without trilinear term " + (ctl.ok ? "PASSED (wrong)" : "fails");
}

void cohomology(CriterionResult& r) {
  DSComplex a(grading("2"));
  const CohomologyTable ta = a.cohomology(3);
  const std::vector<size_t> row_a = ghost_row(ta, 0), lit_a{1, 1, 3, 5};
  const std::vector<size_t> slice_a = slice_row(a.grading(), 3);
  bool zero_a = true;
  for (int g = 1; g <= ta.max_ghost; ++g)
    zero_a = zero_a && ghost_row(ta, g) == std::vector<size_t>(4, 0);

  DSComplex b(grading("3"));
  const CohomologyTable tb = b.cohomology(3);
  const std::vector<size_t> row_b = ghost_row(tb, 0), lit_b{1, 1, 2, 3};
  const std::vector<size_t> slice_b = slice_row(b.grading(), 3);
  bool zero_b = true;
  for (int g = 1; g <= tb.max_ghost; ++g)
    zero_b = zero_b && ghost_row(tb, g) == std::vector<size_t>(4, 0);

  // [1,1,2,3] ignores derivatives, so the product formula over the slice
  // weights decides.
  r.pass = row_a == lit_a && row_a == slice_a && zero_a && row_b == slice_b && zero_b;
  r.facts = {{"gl2_2", {{"ghost0", row_a}, {"slice", slice_a}, {"other_rows_zero", zero_a}}},
             {"gl3_3",
              {{"ghost0", row_b},
               {"slice", slice_b},
               {"literal", lit_b},
               {"matches_literal", row_b == lit_b},
               {"other_rows_zero", zero_b}}}};
  r.summary = "gl2 [2] ghost0 " + row_str(row_a) + " = slice " + row_str(slice_a) +
              (zero_a ? ", others 0" : ", others NONZERO") + "; gl3 [3] ghost0 " + row_str(row_b) +
              " = slice " + row_str(slice_b) + (zero_b ? ", others 0" : ", others NONZERO") +
              " (literal " + row_str(lit_b) + (row_b == lit_b ? " matches" : " differs") + ")";
}

void classical_cmp(CriterionResult& r) {
  r.pass = true;
  json list = json::array();
  std::string s;
  for (auto [mu, w] : {std::pair{"2", 4}, {"3", 3}, {"2,1", 3}}) {
    DSComplex q(grading(mu));
    ClassicalDS c(grading(mu));
    const CompareReport rep = classical_compare(q, c, w);
    const bool ok = rep.ok && rep.cells > 0;
    r.pass = r.pass && ok;
    json f = {{"mu", mu}, {"max_weight", w}, {"ok", rep.ok}, {"cells", rep.cells}};
    if (!rep.ok) f["witness"] = rep.witness;
    list.push_back(f);
    s += std::string(s.empty() ? "" : ", ") + "[" + mu + "] " + std::to_string(rep.cells) +
         (ok ? " cells equal" : " cells, MISMATCH");
  }
  r.facts = {{"cases", list}};
  r.summary = s;
}

void virasoro(CriterionResult& r) {
  const RatFuncK k = RatFuncK::k();
  // Locked after the first derivation.
  const RatFuncK locked = RatFuncK(2) - RatFuncK(6) * (k + 1) * (k + 1) / (k + 2);
  DSComplex ds(grading("2"));
  const auto v = identify_virasoro(ds);
  if (!v) {
    r.pass = false;
    r.facts = {{"found", false}};
    r.summary = "no Virasoro element found";
    return;
  }
  std::vector<BigRational> w;
  for (const auto& g : ds.big().generators) w.push_back(g.name[0] == 'c' ? 0 : 1);
  r.pass = v->c == locked;
  json evals = json::array();
  std::string s;
  for (long k0 : {1, 3, 5}) {
    const BigRational engine_c = v->c.eval(k0);
    const BigRational oracle_c = mode_central_charge(ds.big(), v->L, k0, w);
    r.pass = r.pass && engine_c == oracle_c;
    evals.push_back({{"k", k0}, {"engine", engine_c.get_str()}, {"oracle", oracle_c.get_str()}});
    s += std::string(s.empty() ? "" : ", ") + "k=" + std::to_string(k0) + ": " +
         engine_c.get_str() + (engine_c == oracle_c ? " = " : " != ") + oracle_c.get_str();
  }
  r.facts = {{"found", true},
             {"c", v->c.str()},
             {"locked", locked.str()},
             {"L", format_element(ds.big(), v->L)},
             {"evaluations", evals}};
  r.summary = "c = " + v->c.str() + (v->c == locked ? " (locked)" : " (DIFFERS from locked)") +
              "; " + s;
}

void ihr(CriterionResult& r) {
  const EmbeddingSolution s = solve_embedding(
      pin_comoment(gl_embedding_problem(2, PartitionMu::parse("1,1"), CorootAlpha::parse("1,2"))),
      3);
  const EmbeddingCertificate& c = s.certificate;
  json inj = json::array();
  std::string inj_s;
  bool inj_ok = c.injectivity.size() == 4;
  for (const auto& [w, rank] : c.injectivity) {
    inj.push_back({{"weight", w}, {"rank", rank}});
    inj_s += (inj_s.empty() ? "" : ",") + std::to_string(rank);
  }
  r.pass = c.pairs_checked == 16 && inj_ok && c.classical_ok;
  json images = json::object();
  for (size_t i = 0; i < s.images.size(); ++i)
    images[s.problem.source.gen(static_cast<int>(i)).name] =
        format_element(s.problem.target, s.images[i]);
  r.facts = {{"label", s.problem.label},
             {"pairs_checked", c.pairs_checked},
             {"free_parameters", s.free_parameters},
             {"injectivity", inj},
             {"classical_ok", c.classical_ok},
             {"images", images}};
  r.summary = std::to_string(c.pairs_checked) + " pair residuals zero, injective ranks [" +
              inj_s + "] at weights 0..3, classical shadow " +
              (c.classical_ok ? "Poisson" : "FAILED: " + c.classical_witness);
}

void stages(CriterionResult& r) {
  r.pass = true;
  json list = json::array();
  std::string s;
  for (auto [n, mu] : {std::pair{2, "1,1"}, {3, "2,1"}}) {
    const StagesReport a = stages_check(n, PartitionMu::parse(mu), CorootAlpha::parse("1,2"), 3);
    r.pass = r.pass && a.ok && a.staged == a.direct;
    json f = {{"N", n},
              {"from", a.from.str()},
              {"to", a.to.str()},
              {"staged", a.staged},
              {"direct", a.direct},
              {"higher_vanish", a.higher_vanish},
              {"ok", a.ok}};
    if (a.root) f["root"] = {a.root->first + 1, a.root->second + 1};
    list.push_back(f);
    s += std::string(s.empty() ? "" : "; ") + a.from.str() + " -> " + a.to.str() + " staged " + row_str(a.staged) + (a.staged == a.direct ? " = " : " != ") + "direct " +
         row_str(a.direct);
  }
  r.facts = {{"max_weight", 3}, {"cases", list}};
  r.summary = s;
}

void casimir(CriterionResult& r) {
  r.pass = true;
  json list = json::array();
  std::string s;
  for (int n : {1, 2}) {
    JetAlgebra alg(jet_lift(cotangent_affine(n)));
    const auto res = casimir_search(alg, BigRational(3), BigRational(1, 2));
    std::vector<size_t> dims;
    for (const auto& c : res) dims.push_back(c.classes.size());
    // Exactly one class, at weight 0, represented by a nonzero constant.
    bool ok = !res.empty() && res[0].weight == 0 && res[0].classes.size() == 1;
    if (ok) {
      const auto& t = res[0].classes[0].terms();
      ok = t.size() == 1 && t.begin()->first == Monomial::vacuum();
    }
    for (size_t i = 1; i < res.size(); ++i) ok = ok && res[i].classes.empty();
    r.pass = r.pass && ok;
    list.push_back({{"n", n}, {"dims", dims}, {"span_of_one", ok}});
    s += std::string(s.empty() ? "" : ", ") + "T*A" + std::to_string(n) + " dims " +
         row_str(dims) + (ok ? " = span{[1]}" : " != span{[1]}");
  }
  r.facts = {{"cutoff", 3}, {"step", "1/2"}, {"cases", list}};
  r.summary = s;
}

using Runner = std::function<void(CriterionResult&)>;

const std::map<int, Runner>& runners() {
  static const std::map<int, Runner> m = {
      {1, axioms},        {2, oracle}, {3, d_squared}, {4, cohomology}, {5, classical_cmp},
      {6, virasoro},      {7, ihr},    {8, stages},    {9, casimir},
  };
  return m;
}

CriterionResult run_one(int id, std::ostream* log) {
  const Criterion& c = criteria()[id - 1];
  CriterionResult r;
  r.id = id;
  r.slug = c.slug;
  r.title = c.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    runners().at(id)(r);
  } catch (const Error& e) {
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
    r.facts = {{"error", e.what()}};
  }
  if (log) {
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << sec;
    *log << "criterion " << id << " (" << c.slug << ") took " << os.str() << " s\n";
  }
  return r;
}

}  // namespace

std::vector<int> select_criteria(const std::vector<std::string>& only) {
  std::vector<int> ids;
  if (only.empty()) {
    for (const auto& c : criteria()) ids.push_back(c.id);
    return ids;
  }
  for (const auto& tok : only) {
    bool hit = false;
    for (const auto& c : criteria()) {
      bool m = tok == c.slug || tok == std::to_string(c.id);
      for (const char* mod : c.modules) m = m || tok == mod;
      if (m) {
        ids.push_back(c.id);
        hit = true;
      }
    }
    if (!hit) throw UsageError("unknown criterion or module '" + tok + "'");
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream* log) {
  std::vector<CriterionResult> out;
  std::vector<int> others;
  bool determinism = false;
  for (int id : ids) {
    if (id < 1 || id > static_cast<int>(criteria().size()))
      throw UsageError("unknown criterion " + std::to_string(id));
    if (id == 10) {
      determinism = true;
      continue;
    }
    others.push_back(id);
    out.push_back(run_one(id, log));
  }
  if (!determinism) return out;

  // Rerun everything else (all of 1..9 when nothing else was selected) and
  // compare machine reports byte for byte.
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CriterionResult> first = out;
  if (others.empty()) {
    for (int id = 1; id <= 9; ++id) {
      others.push_back(id);
      first.push_back(run_one(id, log));
    }
  }
  std::vector<CriterionResult> second;
  for (int id : others) second.push_back(run_one(id, nullptr));
  const std::string a = machine_report(first), b = machine_report(second);
  CriterionResult r;
  r.id = 10;
  r.slug = criteria()[9].slug;
  r.title = criteria()[9].title;
  r.pass = a == b;
  size_t at = 0;
  while (at < a.size() && at < b.size() && a[at] == b[at]) ++at;
  r.facts = {{"criteria", others}, {"bytes", a.size()}, {"identical", a == b}};
  if (a != b) r.facts["first_difference"] = at;
  r.summary = std::to_string(others.size()) + " criteria run twice, report " +
              std::to_string(a.size()) + " bytes, " +
              (a == b ? "identical" : "differ at byte " + std::to_string(at));
  if (log) {
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << sec;
    *log << "criterion 10 (determinism) took " << os.str() << " s\n";
  }
  out.push_back(r);
  return out;
}

std::string machine_report(const std::vector<CriterionResult>& results) {
  json list = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    list.push_back({{"id", r.id},
                    {"slug", r.slug},
                    {"pass", r.pass},
                    {"summary", r.summary},
                    {"facts", r.facts}});
  }
  const json doc = {{"criteria", list}, {"all_pass", all}};
  return doc.dump(2) + "\n";
}

std::string human_report(const std::vector<CriterionResult>& results) {
  std::string s;
  int passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    s += std::string(r.pass ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + " " + r.slug +
         ": " + r.summary + "\n";
  }
  s += std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed\n";
  return s;
}

}  // namespace chiral
