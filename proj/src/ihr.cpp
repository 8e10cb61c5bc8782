#include "chiral/ihr.hpp"

#include <algorithm>
#include <tuple>

#include "chiral/basis.hpp"
#include "chiral/classical.hpp"
#include "chiral/ds.hpp"
#include "chiral/engine.hpp"
#include "chiral/errors.hpp"
#include "chiral/library.hpp"
#include "chiral/linalg.hpp"
#include "chiral/polysys.hpp"
#include "chiral/wgen.hpp"

namespace chiral {

Presentation build_localized(int len) { return localized(len); }

EmbeddingProblem pin_comoment(EmbeddingProblem p) {
  if (p.comoment.empty()) throw NoComoment("problem '" + p.label + "' declares no comoment");
  for (const auto& [i, e] : p.comoment) p.pinned[i] = e;
  return p;
}

namespace {

Presentation word_presentation(const std::vector<WordGenerator>& words) {
  Presentation p;
  p.name = "words";
  for (const auto& w : words) {
    Generator g;
    g.name = w.name;
    g.weight = w.weight;
    p.add_generator(g);
  }
  return p;
}

// Right-nested normal product of derivatives of the given elements.
Element realize(Engine& eng, const std::vector<Element>& gens, const Monomial& m) {
  Element x = Element::vacuum();
  for (auto f = m.factors.rbegin(); f != m.factors.rend(); ++f)
    x = eng.normal_product(eng.derivative(gens[f->gen], f->d), x);
  return x;
}

BigRational hbar_grade(const Presentation& p, const Element& e) {
  const auto& [m, c] = *e.terms().begin();
  return grade_of(p, m).hbar_weight + c.hbar_valuation();
}

// Homogeneous candidates for the image of source generator i.
std::vector<Element> ansatz(const EmbeddingProblem& p, Engine& eng, int i) {
  const Presentation words = word_presentation(p.words);
  std::vector<Element> reps;
  for (const auto& w : p.words) reps.push_back(w.rep);
  const ImageGrade& g = p.grade[i];
  const BigRational H = p.source.generators[i].hbar_weight;
  std::vector<Element> out;
  for (BigRational a = 0; a <= g.weight; a += 1) {
    BasisQuery wq;
    wq.weight = a;
    for (const auto& wm : enumerate_basis(words, wq)) {
      int charge = g.e_charge;
      for (const auto& f : wm.factors) charge -= p.words[f.gen].e_charge;
      const Element x = realize(eng, reps, wm);
      std::vector<Element> tails;
      if (p.loc) {
        BasisQuery q;
        q.weight = g.weight - a;
        q.e_charge = charge;
        q.length_cutoff = p.length_cap;
        for (const auto& m : enumerate_basis(*p.loc, q))
          tails.push_back(embed_element(Element(m), p.loc_offset));
      } else if (a == g.weight && charge == 0) {
        tails.push_back(Element::vacuum());
      }
      for (const auto& t : tails) {
        const Element w = eng.normal_product(x, t);
        if (w.is_zero()) continue;
        const BigRational shift = H - hbar_grade(p.target, w);
        if (shift < 0 || shift.get_den() != 1) continue;
        out.push_back(Scalar::hbar(static_cast<int>(shift.get_num().get_si())) * w);
      }
    }
  }
  return out;
}

// Equation key: (pair tag, pair tag, lambda power, monomial, hbar power).
using Key = std::tuple<int, int, int, Monomial, int>;
using Unknowns = std::vector<int>;  // sorted variable indices of a product
using Equations = std::map<Key, std::map<Unknowns, RatFuncK>>;

void add_lambda(Equations& eqs, int a, int b, const LambdaPoly& l, const Unknowns& u,
                const RatFuncK& s) {
  for (int n = 0; n <= l.degree(); ++n)
    for (const auto& [m, c] : l.coeff(n).terms())
      for (int h = 0; h <= c.hbar_degree(); ++h) {
        const RatFuncK v = s * c.coeff(h);
        if (!v.is_zero()) eqs[{a, b, n, m, h}][u] += v;
      }
}

struct Term {
  int var;  // -1 for a fixed part
  Element value;
};

std::string pair_label(const Presentation& s, int a, int b) {
  return "(" + s.generators[a].name + "," + s.generators[b].name + ")";
}

// phi applied to a monomial of the source, given images of the generators.
Element image_of(Engine& eng, const std::vector<Element>& images, const Monomial& m) {
  return realize(eng, images, m);
}

Element image_of(Engine& eng, const std::vector<Element>& images, const Element& e) {
  Element r;
  for (const auto& [m, c] : e.terms()) r += c * image_of(eng, images, m);
  return r;
}

}  // namespace

EmbeddingSolution solve_embedding(const EmbeddingProblem& p, int weight_cutoff) {
  const int ns = static_cast<int>(p.source.size());
  if (static_cast<int>(p.grade.size()) != ns) throw Error("grade list does not match the source");
  Engine eng(p.target);
  std::vector<std::vector<Term>> terms(ns);
  int nvars = 0;
  for (int i = 0; i < ns; ++i) {
    if (auto it = p.pinned.find(i); it != p.pinned.end()) {
      terms[i].push_back({-1, it->second});
      continue;
    }
    const auto cand = ansatz(p, eng, i);
    if (cand.empty())
      throw AnsatzTooSmall("no candidates for the image of " + p.source.generators[i].name);
    for (const auto& c : cand) terms[i].push_back({nvars++, c});
  }
  Equations eqs;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      for (const auto& ta : terms[i])
        for (const auto& tb : terms[j]) {
          Unknowns u;
          if (ta.var >= 0) u.push_back(ta.var);
          if (tb.var >= 0) u.push_back(tb.var);
          std::sort(u.begin(), u.end());
          add_lambda(eqs, i, j, eng.bracket(ta.value, tb.value), u, RatFuncK(1));
        }
      // Minus the image of the source bracket, which is linear in generators.
      const LambdaPoly& sb = p.source.bracket(i, j);
      for (int n = 0; n <= sb.degree(); ++n)
        for (const auto& [m, c] : sb.coeff(n).terms()) {
          if (m.is_vacuum()) {
            LambdaPoly l;
            l.add(n, Element::vacuum(c));
            add_lambda(eqs, i, j, l, {}, RatFuncK(-1));
            continue;
          }
          if (m.factors.size() != 1 || m.lat != 0)
            throw Error("source brackets must be linear in generators");
          for (const auto& t : terms[m.factors[0].gen]) {
            LambdaPoly l;
            l.add(n, c * eng.derivative(t.value, m.factors[0].d));
            Unknowns u;
            if (t.var >= 0) u.push_back(t.var);
            add_lambda(eqs, i, j, l, u, RatFuncK(-1));
          }
        }
    }
  for (size_t k = 0; k < p.linear_pins.size(); ++k) {
    const int tag = -1 - static_cast<int>(k);
    LambdaPoly v;
    v.add(0, p.linear_pins[k].value);
    add_lambda(eqs, tag, tag, v, {}, RatFuncK(-1));
    for (const auto& [g, c] : p.linear_pins[k].combination)
      for (const auto& t : terms[g]) {
        LambdaPoly l;
        l.add(0, t.value);
        Unknowns u;
        if (t.var >= 0) u.push_back(t.var);
        add_lambda(eqs, tag, tag, l, u, c);
      }
  }
  std::vector<MPoly> system;
  for (const auto& [k, e] : eqs) {
    MPoly q(nvars);
    for (const auto& [u, c] : e) {
      MPoly::Exp ex(nvars, 0);
      for (int v : u) ex[v] += 1;
      q.add(ex, c);
    }
    if (!q.is_zero()) system.push_back(std::move(q));
  }
  const PolySolution sol = solve_polynomial_system(system, nvars);
  EmbeddingSolution out;
  out.problem = p;
  out.unknowns = nvars;
  out.free_parameters = static_cast<int>(sol.free_parameters);
  for (int i = 0; i < ns; ++i) {
    Element img;
    for (const auto& t : terms[i])
      img += t.var < 0 ? t.value : Scalar(sol.values[t.var]) * t.value;
    out.images.push_back(std::move(img));
  }
  out.certificate = verify_embedding(p, out.images, weight_cutoff);
  if (!out.certificate.classical_ok)
    throw ResidualNonzero("classical shadow fails at " + out.certificate.classical_witness);
  return out;
}

std::vector<JetPoly> classical_shadow(const EmbeddingProblem& p, const JetAlgebra& alg,
                                      const std::vector<Element>& images) {
  std::vector<JetPoly> out;
  for (const auto& e : images) out.push_back(classical_limit_log(p.target, alg, e));
  return out;
}

EmbeddingCertificate verify_embedding(const EmbeddingProblem& p,
                                      const std::vector<Element>& images, int weight_cutoff) {
  const int ns = static_cast<int>(p.source.size());
  if (static_cast<int>(images.size()) != ns) throw Error("one image per source generator needed");
  EmbeddingCertificate cert;
  Engine eng(p.target);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      LambdaPoly lhs = eng.bracket(images[i], images[j]);
      const LambdaPoly& sb = p.source.bracket(i, j);
      for (int n = 0; n <= sb.degree(); ++n) lhs.add(n, Scalar(-1) * image_of(eng, images, sb.coeff(n)));
      for (int n = 0; n <= lhs.degree(); ++n)
        if (!lhs.coeff(n).is_zero())
          throw ResidualNonzero("pair " + pair_label(p.source, i, j) + " at lambda^" +
                                std::to_string(n) + ": " +
                                format_element(p.target, lhs.coeff(n)));
      ++cert.pairs_checked;
    }
  // Injectivity: images of the source PBW basis are independent at h = 1.
  for (int w = 0; w <= weight_cutoff; ++w) {
    BasisQuery q;
    q.weight = w;
    const auto basis = enumerate_basis(p.source, q);
    std::map<Monomial, int> col;
    Echelon<RatFuncK> ech;
    size_t rank = 0;
    for (const auto& m : basis) {
      SparseRow<RatFuncK> r;
      const Element im = image_of(eng, images, m);
      for (const auto& [t, c] : im.terms()) {
        const RatFuncK v = c.hbar_specialize(1);
        if (v.is_zero()) continue;
        auto [it, fresh] = col.try_emplace(t, static_cast<int>(col.size()));
        r[it->second] = v;
      }
      if (ech.add(std::move(r))) ++rank;
    }
    if (rank != basis.size())
      throw ResidualNonzero("images are dependent at weight " + std::to_string(w) + ": rank " +
                            std::to_string(rank) + " of " + std::to_string(basis.size()));
    cert.injectivity.emplace_back(w, rank);
  }
  // Classical shadow: h -> 0 images respect the classical brackets.
  const PoissonPresentation src = classical_limit(p.source);
  JetAlgebra alg(classical_limit_log(p.target));
  const auto cl = classical_shadow(p, alg, images);
  auto map_jet = [&](const JetPoly& f) {
    JetPoly r;
    for (const auto& [m, c] : f.terms()) {
      JetPoly t = JetPoly::one(c);
      for (const auto& fa : m.factors) t = alg.mul(t, alg.derivative(cl[fa.gen], fa.d));
      r += t;
    }
    return r;
  };
  cert.classical_ok = true;
  for (int i = 0; i < ns && cert.classical_ok; ++i)
    for (int j = 0; j < ns; ++j) {
      JetLambda lhs = alg.bracket(cl[i], cl[j]);
      const JetLambda& sb = src.bracket(i, j);
      for (size_t n = 0; n < sb.size(); ++n)
        lambda_add(lhs, static_cast<int>(n), RatFuncK(-1) * map_jet(sb[n]));
      if (!lhs.empty()) {
        cert.classical_ok = false;
        cert.classical_witness = pair_label(p.source, i, j);
        break;
      }
    }
  return cert;
}

namespace {

EmbeddingProblem gl_base(int n) {
  EmbeddingProblem p;
  p.source = affine_gl(n);
  return p;
}

}  // namespace

EmbeddingProblem gl_embedding_problem(int n, const PartitionMu& mu, const CorootAlpha& alpha) {
  if (n != 2 || mu.parts != std::vector<int>{1, 1} || alpha.i != 1 || alpha.j != 2)
    throw Error("only the gl2 instance [1,1] -> [2] with alpha (1,2) is built");
  const PartitionMu big = coroot_add(mu, alpha, n);
  const GoodGrading g = build_nilpotent(big);
  DSComplex ds(g);
  EmbeddingProblem p = gl_base(n);
  p.label = "gl" + std::to_string(n) + " " + mu.str() + " -> " + big.str();
  const Presentation loc = build_localized(alpha.len());
  p.loc_offset = static_cast<int>(ds.big().size());
  p.target = tensor(ds.big(), loc);
  p.loc = loc;
  int max_weight = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const BigRational w = 1 - g.j_of(a, b);
      max_weight = std::max(max_weight, static_cast<int>(w.get_num().get_si()));
      const int i = alpha.i - 1;
      p.grade.push_back({w, (a == i ? 1 : 0) - (b == i ? 1 : 0)});
    }
  const auto gens = extract_generators(ds, max_weight);
  for (size_t i = 0; i < gens.size(); ++i)
    p.words.push_back({"W" + std::to_string(i + 1), embed_element(gens[i].rep, 0),
                       gens[i].weight});
  // The root current of alpha is the comoment; its image is e^1.
  const int root = (alpha.i - 1) * n + (alpha.j - 1);
  p.comoment[root] = embed_element(Element(Monomial::lattice(1)), p.loc_offset);
  LinearPin trace;
  for (int a = 0; a < n; ++a) trace.combination.emplace_back(a * n + a, RatFuncK(1));
  trace.value = p.words.front().rep;
  p.linear_pins.push_back(trace);
  return p;
}

EmbeddingProblem identity_problem(int n) {
  EmbeddingProblem p = gl_base(n);
  p.label = "identity gl" + std::to_string(n);
  p.target = p.source;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int i = a * n + b;
      const int charge = (a == 0 ? 1 : 0) - (b == 0 ? 1 : 0);
      p.words.push_back({p.source.generators[i].name, p.source.gen_element(i), 1, charge});
      p.grade.push_back({1, charge});
    }
  p.comoment[1] = p.source.gen_element(1);
  LinearPin trace;
  for (int a = 0; a < n; ++a) {
    trace.combination.emplace_back(a * n + a, RatFuncK(1));
    trace.value += p.source.gen_element(a * n + a);
  }
  p.linear_pins.push_back(trace);
  return p;
}

namespace {

// Order of indices making the units upper triangular, when they are the
// positive units of a full flag.
std::optional<std::vector<int>> flag_ranks(int n, const std::vector<std::pair<int, int>>& units) {
  if (static_cast<int>(units.size()) != n * (n - 1) / 2) return std::nullopt;
  std::vector<int> rank(n, 0);
  for (const auto& [a, b] : units) rank[b] += 1;
  std::vector<int> seen(n, 0);
  for (int r : rank) {
    if (r >= n || seen[r]) return std::nullopt;
    seen[r] = 1;
  }
  for (const auto& [a, b] : units)
    if (rank[a] >= rank[b]) return std::nullopt;
  return rank;
}

std::vector<size_t> degree_zero(const CohomologyTable& t) {
  std::vector<size_t> out;
  for (const auto& row : t.cohomology_dims) out.push_back(row.empty() ? 0 : row[0]);
  return out;
}

bool higher_zero(const CohomologyTable& t) {
  for (const auto& row : t.cohomology_dims)
    for (size_t g = 1; g < row.size(); ++g)
      if (row[g] != 0) return false;
  return true;
}

}  // namespace

StagesReport stages_check(int n, const PartitionMu& mu, const CorootAlpha& alpha, int max_weight) {
  StagesReport rep;
  rep.from = mu;
  rep.to = coroot_add(mu, alpha, n);
  ClassicalDS direct(build_nilpotent(rep.to));
  const CohomologyTable dt = direct.cohomology(max_weight);
  rep.direct = degree_zero(dt);
  if (rep.to == mu) {
    rep.staged = rep.direct;
    rep.higher_vanish = higher_zero(dt);
    rep.ok = rep.higher_vanish;
    return rep;
  }
  if (rep.to.parts != std::vector<int>{n})
    throw Error("only principal stage targets are built, not " + rep.to.str());
  const GoodGrading gm = build_nilpotent(mu);
  for (int a = 0; a < n && !rep.root; ++a)
    for (int b = 0; b < n && !rep.root; ++b) {
      if (a == b || gm.j_of(a, b) != 0) continue;
      auto units = gm.positive_units();
      units.emplace_back(a, b);
      const auto rank = flag_ranks(n, units);
      if (!rank) continue;
      // f' = f_mu + E_ba must be a sum of simple negative root vectors.
      const Mat f = add(gm.f, unit(n, b, a));
      bool simple = true;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (f[r][c] != 0 && (*rank)[r] != (*rank)[c] + 1) simple = false;
      for (int c = 0; c < n; ++c) {
        int hits = 0;
        for (int r = 0; r < n; ++r) hits += (*rank)[r] == (*rank)[c] + 1 && f[r][c] != 0;
        if ((*rank)[c] + 1 < n && hits == 0) simple = false;
      }
      if (!simple) continue;
      GoodGrading st;
      st.N = n;
      st.mu = rep.to;
      st.f = f;
      st.x.resize(n);
      for (int i = 0; i < n; ++i) st.x[i] = BigRational(n - 1 - 2 * (*rank)[i]);
      st.h = Mat(n, std::vector<BigRational>(n, 0));
      st.e = st.h;
      for (int i = 0; i < n; ++i) st.h[i][i] = st.x[i];
      rep.root = std::make_pair(a, b);
      ClassicalDS staged(st);
      const CohomologyTable t = staged.cohomology(max_weight);
      rep.staged = degree_zero(t);
      rep.higher_vanish = higher_zero(t);
    }
  if (!rep.root) throw Error("no root extends n_" + mu.str() + " to a principal datum");
  rep.ok = rep.higher_vanish && rep.staged == rep.direct;
  return rep;
}

}  // namespace chiral
