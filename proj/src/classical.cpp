#include "chiral/classical.hpp"

#include "chiral/basis.hpp"
#include "chiral/errors.hpp"

namespace chiral {

namespace {

std::string unit_name(int a, int b) { return std::to_string(a + 1) + std::to_string(b + 1); }

Generator gen_rec(std::string name, BigRational w, bool odd, int ghost) {
  Generator g;
  g.name = std::move(name);
  g.weight = w;
  g.hbar_weight = w;
  g.odd = odd;
  g.ghost = ghost;
  return g;
}

// [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
std::vector<std::pair<std::pair<int, int>, BigRational>> commutator_units(int a, int b, int c,
                                                                          int d) {
  std::vector<std::pair<std::pair<int, int>, BigRational>> r;
  if (b == c) r.push_back({{a, d}, 1});
  if (d == a) r.push_back({{c, b}, -1});
  return r;
}

size_t rank_of_cell(const ClassicalCellMatrix& cm) {
  return bareiss_rank(cm.columns, static_cast<int>(cm.dst.size()));
}

}  // namespace

GoodGrading mirrored(const GoodGrading& g) {
  GoodGrading m = g;
  for (auto& v : m.x) v = -v;
  m.e = g.f;
  m.f = g.e;
  for (auto& row : m.h)
    for (auto& v : row) v = -v;
  return m;
}

PoissonPresentation classical_brst_presentation(const GoodGrading& g) {
  const int n = g.N;
  const auto units = g.positive_units();
  const int m = static_cast<int>(units.size());
  FinitePoisson f;
  f.name = "classical BRST gl" + std::to_string(n) + " " + g.mu.str();
  const FinitePoisson kks = kks_gl(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f.coordinates.push_back(gen_rec("J" + unit_name(a, b), 1 - g.j_of(a, b), false, 0));
  for (const auto& [a, b] : units) f.coordinates.push_back(gen_rec("b" + unit_name(a, b), 1 - g.j_of(a, b), true, -1));
  for (const auto& [a, b] : units) f.coordinates.push_back(gen_rec("c" + unit_name(a, b), g.j_of(a, b), true, 1));
  f.bracket = kks.bracket;
  for (int i = 0; i < m; ++i) {
    f.bracket[{n * n + i, n * n + m + i}] = JetPoly::one();
    f.bracket[{n * n + m + i, n * n + i}] = JetPoly::one();
  }
  return jet_lift(f);
}

ClassicalDS::ClassicalDS(const GoodGrading& g)
    : g_(g), units_(g.positive_units()), alg_(classical_brst_presentation(g)) {
  const int n = g_.N;
  const int m = static_cast<int>(units_.size());
  const auto J = [n](int a, int b) { return a * n + b; };
  const auto bg = [n](int i) { return n * n + i; };
  const auto cg = [n, m](int i) { return n * n + m + i; };
  std::map<std::pair<int, int>, int> unit_index;
  for (int i = 0; i < m; ++i) unit_index[units_[i]] = i;

  // d = sum_i (J^{x_i} - chi_i) c_i - 1/2 sum f_ij^k b_k c_i c_j
  for (int i = 0; i < m; ++i) {
    const auto [a, b] = units_[i];
    d_ += alg_.mul(alg_.var(J(a, b)), alg_.var(cg(i)));
    d_ -= RatFuncK(chi(g_, a, b)) * alg_.var(cg(i));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto [a, b] = units_[i];
      const auto [c, d] = units_[j];
      for (const auto& [u, coef] : commutator_units(a, b, c, d)) {
        const JetPoly t =
            alg_.mul(alg_.var(bg(unit_index.at(u))), alg_.mul(alg_.var(cg(i)), alg_.var(cg(j))));
        d_ -= RatFuncK(coef / 2) * t;
      }
    }

  const PoissonPresentation& P = alg_.presentation();
  cminus_.name = "classical C_- " + g_.mu.str();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (g_.j_of(a, b) > 0) continue;
      Generator gen = P.generators[J(a, b)];
      gen.name = "Jhat" + unit_name(a, b);
      reduced_of_big_[J(a, b)] = cminus_.add_generator(gen);
      JetPoly e = alg_.var(J(a, b));
      for (int j = 0; j < m; ++j) {
        const auto [c, d] = units_[j];
        for (const auto& [u, coef] : commutator_units(a, b, c, d)) {
          auto it = unit_index.find(u);
          if (it == unit_index.end()) continue;
          e += RatFuncK(coef) * alg_.mul(alg_.var(bg(it->second)), alg_.var(cg(j)));
        }
      }
      gen_exp_.push_back(e);
    }
  for (int i = 0; i < m; ++i) {
    reduced_of_big_[cg(i)] = cminus_.add_generator(P.generators[cg(i)]);
    gen_exp_.push_back(alg_.var(cg(i)));
  }
}

JetPoly ClassicalDS::D(const JetPoly& v) { return alg_.nth(d_, 0, v); }

JetPoly ClassicalDS::expand(const Monomial& m) {
  if (auto it = expand_cache_.find(m); it != expand_cache_.end()) return it->second;
  JetPoly x = JetPoly::one();
  for (const auto& f : m.factors) x = alg_.mul(x, alg_.derivative(gen_exp_[f.gen], f.d));
  expand_cache_.emplace(m, x);
  return x;
}

std::vector<Monomial> ClassicalDS::basis(const BigRational& weight, int ghost) const {
  BasisQuery q;
  q.weight = weight;
  q.ghost = ghost;
  return enumerate_basis(cminus_, q);
}

std::map<Monomial, RatFuncK> ClassicalDS::decompose(const JetPoly& x0) {
  std::map<Monomial, RatFuncK> out;
  JetPoly x = x0;
  while (true) {
    const Monomial* lead = nullptr;
    for (auto it = x.terms().rbegin(); it != x.terms().rend() && !lead; ++it) {
      bool pure = true;
      for (const auto& f : it->first.factors) pure = pure && reduced_of_big_.count(f.gen);
      if (pure) lead = &it->first;
    }
    if (!lead) break;
    Monomial r;
    for (const auto& f : lead->factors) r.factors.push_back(Factor{reduced_of_big_.at(f.gen), f.d});
    const JetPoly ex = expand(r);
    if (!(ex.coeff(*lead) == RatFuncK(1)))
      throw Error("classical reduced expansion is not unitriangular at " +
                  format_monomial(cminus_, r));
    const RatFuncK c = x.coeff(*lead);
    out[r] += c;
    x -= c * ex;
  }
  if (!x.is_zero())
    throw Error("element leaves the classical reduced complex: " +
                format_jet(alg_.presentation(), x));
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : ++it;
  return out;
}

ClassicalCellMatrix ClassicalDS::matrix(const BigRational& weight, int ghost) {
  ClassicalCellMatrix cm;
  cm.weight = weight;
  cm.ghost = ghost;
  cm.src = basis(weight, ghost);
  cm.dst = basis(weight, ghost + 1);
  std::map<Monomial, int> dst_index;
  for (size_t i = 0; i < cm.dst.size(); ++i) dst_index[cm.dst[i]] = static_cast<int>(i);
  for (const auto& m : cm.src) {
    SparseRow<RatFuncK> col;
    for (const auto& [t, c] : decompose(D(expand(m)))) col[dst_index.at(t)] = c;
    cm.columns.push_back(std::move(col));
  }
  return cm;
}

CohomologyTable ClassicalDS::cohomology(int max_weight) {
  CohomologyTable t;
  t.max_weight = max_weight;
  t.max_ghost = max_weight;
  for (int w = 0; w <= max_weight; ++w) {
    std::vector<size_t> dims(t.max_ghost + 1, 0), ranks(t.max_ghost + 1, 0);
    for (int g = 0; g <= t.max_ghost; ++g) {
      const ClassicalCellMatrix cm = matrix(w, g);
      dims[g] = cm.src.size();
      ranks[g] = rank_of_cell(cm);
    }
    std::vector<size_t> hdims;
    for (int g = 0; g <= t.max_ghost; ++g)
      hdims.push_back(dims[g] - ranks[g] - (g > 0 ? ranks[g - 1] : 0));
    t.complex_dims.push_back(dims);
    t.cohomology_dims.push_back(hdims);
  }
  return t;
}

DSquaredReport ClassicalDS::check_d_squared(int max_weight) {
  DSquaredReport rep;
  const auto fail = [&](const std::string& w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };
  const PoissonPresentation& P = alg_.presentation();
  ++rep.checks;
  if (const JetPoly dd = alg_.nth(d_, 0, d_); !dd.is_zero()) fail("d_(0)d = " + format_jet(P, dd));
  for (size_t i = 0; i < P.generators.size(); ++i)
    for (int der = 0; der <= 1; ++der) {
      ++rep.checks;
      const JetPoly x = alg_.var(static_cast<int>(i), der);
      if (const JetPoly y = D(D(x)); !y.is_zero())
        fail("D^2(" + format_jet(P, x) + ") = " + format_jet(P, y));
    }
  for (int w = 0; w <= max_weight; ++w)
    for (int g = 0; g < w; ++g) {
      const ClassicalCellMatrix a = matrix(w, g);
      if (a.src.empty()) continue;
      const ClassicalCellMatrix b = matrix(w, g + 1);
      for (size_t j = 0; j < a.src.size(); ++j) {
        ++rep.checks;
        SparseRow<RatFuncK> acc;
        for (const auto& [i, c] : a.columns[j]) Echelon<RatFuncK>::axpy(acc, b.columns[i], c);
        if (!acc.empty())
          fail("D^2 on " + format_monomial(cminus_, a.src[j]) + " at weight " + std::to_string(w));
      }
    }
  return rep;
}

namespace {

std::vector<std::string> labels(const Presentation& p, const std::vector<Monomial>& ms) {
  std::vector<std::string> r;
  for (const auto& m : ms) r.push_back(format_monomial(p, m));
  return r;
}

}  // namespace

CompareReport classical_compare(DSComplex& q, ClassicalDS& c, int max_weight) {
  CompareReport rep;
  const auto fail = [&](const std::string& w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };
  for (int w = 0; w <= max_weight; ++w)
    for (int g = 0; g <= w; ++g) {
      ++rep.cells;
      const std::string cell = " at weight " + std::to_string(w) + " ghost " + std::to_string(g);
      const CellMatrix qm = q.matrix(w, g);
      const ClassicalCellMatrix cm = c.matrix(w, g);
      if (labels(q.reduced(), qm.src) != labels(c.reduced(), cm.src) ||
          labels(q.reduced(), qm.dst) != labels(c.reduced(), cm.dst)) {
        fail("cell bases differ" + cell);
        continue;
      }
      for (size_t j = 0; j < qm.columns.size(); ++j) {
        SparseRow<RatFuncK> lim;
        for (const auto& [i, s] : qm.columns[j])
          if (RatFuncK v = s.hbar_specialize(0); !v.is_zero()) lim[i] = v;
        if (lim != cm.columns[j]) {
          fail("column " + format_monomial(c.reduced(), cm.src[j]) + cell);
          break;
        }
      }
    }
  if (rep.ok) {
    const auto hq = q.cohomology(max_weight), hc = c.cohomology(max_weight);
    for (int w = 0; w <= max_weight; ++w)
      if (hq.cohomology_dims[w][0] != hc.cohomology_dims[w][0])
        fail("degree-zero dimension differs at weight " + std::to_string(w));
  }
  return rep;
}

}  // namespace chiral
