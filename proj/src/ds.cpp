#include "chiral/ds.hpp"

#include "chiral/basis.hpp"

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

}  // namespace

Presentation ds_full_presentation(const GoodGrading& g) {
  const int n = g.N;
  const auto units = g.positive_units();
  const int m = static_cast<int>(units.size());
  Presentation p;
  p.name = "V_h^k(gl" + std::to_string(n) + ") (x) Cl " + g.mu.str();
  p.family = Family::Tensor;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p.add_generator(gen_rec("J" + unit_name(a, b), 1 - g.j_of(a, b), false, 0));
  for (const auto& [a, b] : units) p.add_generator(gen_rec("b" + unit_name(a, b), 1 - g.j_of(a, b), true, -1));
  for (const auto& [a, b] : units) p.add_generator(gen_rec("c" + unit_name(a, b), g.j_of(a, b), true, 1));
  const Scalar h = Scalar::hbar();
  const auto J = [n](int a, int b) { return a * n + b; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Element br;
          if (b == c) br += Element(Monomial::single(J(a, d)), h);
          if (d == a) br -= Element(Monomial::single(J(c, b)), h);
          LambdaPoly poly(br);
          if (b == c && a == d) poly.add(1, Element::vacuum(Scalar::hbar(2) * Scalar::k()));
          p.set_bracket(J(a, b), J(c, d), poly);
        }
  for (int i = 0; i < m; ++i) {
    p.set_bracket(n * n + i, n * n + m + i, LambdaPoly(Element::vacuum(h)));
    p.set_bracket(n * n + m + i, n * n + i, LambdaPoly(Element::vacuum(h)));
  }
  return p;
}

DSComplex::DSComplex(const GoodGrading& g, DSOptions opt)
    : g_(g), opt_(opt), units_(g.positive_units()), eng_(ds_full_presentation(g)) {
  const int n = g_.N;
  const int m = static_cast<int>(units_.size());
  std::map<std::pair<int, int>, int> unit_index;
  for (int i = 0; i < m; ++i) unit_index[units_[i]] = i;

  // d = sum_i :(J^{x_i} - chi_i) c_i: - 1/2 sum f_ij^k :b_k c_i c_j:
  for (int i = 0; i < m; ++i) {
    const auto [a, b] = units_[i];
    const Element ci = eng_.gen(c_gen(i));
    d_ += eng_.normal_product(eng_.gen(J(a, b)), ci);
    const BigRational ch = chi(g_, a, b);
    if (sgn(ch) != 0) d_ -= Scalar(ch) * ci;
  }
  if (!opt_.drop_trilinear) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
        const auto [a, b] = units_[i];
        const auto [c, d] = units_[j];
        std::vector<std::pair<int, BigRational>> f;
        if (b == c) f.emplace_back(unit_index.at({a, d}), 1);
        if (d == a) f.emplace_back(unit_index.at({c, b}), -1);
        for (const auto& [k, coef] : f) {
          const Element ccc =
              eng_.normal_product(eng_.gen(b_gen(k)),
                                  eng_.normal_product(eng_.gen(c_gen(i)), eng_.gen(c_gen(j))));
          d_ -= Scalar(coef / 2) * ccc;
        }
      }
  }

  // reduced complex generators: Jhat^a for a in g_{<=0}, then c_i
  cminus_.name = "C_- " + g_.mu.str();
  cminus_.family = Family::FreeField;
  const Presentation& P = eng_.presentation();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (g_.j_of(a, b) > 0) continue;
      Generator gen = P.gen(J(a, b));
      gen.name = "Jhat" + unit_name(a, b);
      const int idx = cminus_.add_generator(gen);
      big_of_reduced_.push_back(J(a, b));
      reduced_of_big_[J(a, b)] = idx;
      Element e = eng_.gen(J(a, b));
      for (int j = 0; j < m; ++j) {
        // pi_{>0} [E_ab, x_j] with x_j = E_cd
        const auto [c, d] = units_[j];
        std::vector<std::pair<std::pair<int, int>, BigRational>> br;
        if (b == c) br.push_back({{a, d}, 1});
        if (d == a) br.push_back({{c, b}, -1});
        for (const auto& [u, coef] : br) {
          auto it = unit_index.find(u);
          if (it == unit_index.end()) continue;
          e += Scalar(coef) * eng_.normal_product(eng_.gen(b_gen(it->second)), eng_.gen(c_gen(j)));
        }
      }
      gen_exp_.push_back(e);
    }
  for (int i = 0; i < m; ++i) {
    const int idx = cminus_.add_generator(P.gen(c_gen(i)));
    big_of_reduced_.push_back(c_gen(i));
    reduced_of_big_[c_gen(i)] = idx;
    gen_exp_.push_back(eng_.gen(c_gen(i)));
  }
}

Element DSComplex::D(const Element& v) {
  return eng_.nth_product(d_, 0, v).map_coeffs([](const Scalar& s) { return s.divide_hbar(1); });
}

Element DSComplex::d_zero_d() { return eng_.nth_product(d_, 0, d_); }

Element DSComplex::expand(const Monomial& m) {
  if (auto it = expand_cache_.find(m); it != expand_cache_.end()) return it->second;
  Element x = Element::vacuum();
  for (auto f = m.factors.rbegin(); f != m.factors.rend(); ++f)
    x = eng_.normal_product(eng_.derivative(gen_exp_[f->gen], f->d), x);
  expand_cache_.emplace(m, x);
  return x;
}

bool DSComplex::pure(const Monomial& m) const {
  for (const auto& f : m.factors)
    if (!reduced_of_big_.count(f.gen)) return false;
  return true;
}

Monomial DSComplex::to_reduced(const Monomial& m) const {
  Monomial r;
  for (const auto& f : m.factors) r.factors.push_back(Factor{reduced_of_big_.at(f.gen), f.d});
  return r;
}

std::vector<Monomial> DSComplex::basis(const BigRational& weight, int ghost) {
  BasisQuery q;
  q.weight = weight;
  q.ghost = ghost;
  return enumerate_basis(cminus_, q);
}

std::map<Monomial, Scalar> DSComplex::decompose(const Element& x0) {
  std::map<Monomial, Scalar> out;
  Element x = x0;
  while (true) {
    const Monomial* lead = nullptr;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
      if (pure(it->first)) {
        lead = &it->first;
        break;
      }
    if (!lead) break;
    const Monomial r = to_reduced(*lead);
    const Element ex = expand(r);
    if (!(ex.coeff(*lead) == Scalar(1)))
      throw Error("reduced-complex expansion is not unitriangular at " + format_monomial(cminus_, r));
    const Scalar c = x.coeff(*lead);
    out[r] += c;
    x -= c * ex;
  }
  if (!x.is_zero())
    throw Error("element leaves the reduced complex: " + format_element(big(), x));
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : ++it;
  return out;
}

CellMatrix DSComplex::matrix(const BigRational& weight, int ghost) {
  CellMatrix cm;
  cm.weight = weight;
  cm.ghost = ghost;
  cm.src = basis(weight, ghost);
  cm.dst = basis(weight, ghost + 1);
  std::map<Monomial, int> dst_index;
  for (size_t i = 0; i < cm.dst.size(); ++i) dst_index[cm.dst[i]] = static_cast<int>(i);
  for (const auto& m : cm.src) {
    SparseRow<Scalar> col;
    const BigRational hs = grade_of(cminus_, m).hbar_weight;
    for (const auto& [t, c] : decompose(D(expand(m)))) {
      const int row = dst_index.at(t);
      col[row] = c;
      // entries must be c * h^{hbar(src) - hbar(dst)}
      const BigRational shift = hs - grade_of(cminus_, t).hbar_weight;
      if (shift.get_den() != 1 || c.hbar_valuation() != c.hbar_degree() ||
          c.hbar_degree() != shift.get_num().get_si())
        cm.hbar_homogeneous = false;
    }
    cm.columns.push_back(std::move(col));
  }
  return cm;
}

namespace {

size_t rank_at_hbar_one(const CellMatrix& cm) {
  std::vector<SparseRow<RatFuncK>> rows;
  for (const auto& col : cm.columns) {
    SparseRow<RatFuncK> r;
    for (const auto& [i, s] : col) {
      RatFuncK v = s.hbar_specialize(1);
      if (!v.is_zero()) r[i] = v;
    }
    rows.push_back(std::move(r));
  }
  return bareiss_rank(rows, static_cast<int>(cm.dst.size()));
}

}  // namespace

CohomologyTable DSComplex::cohomology(int max_weight) {
  CohomologyTable t;
  t.max_weight = max_weight;
  t.max_ghost = max_weight;
  for (int w = 0; w <= max_weight; ++w) {
    std::vector<size_t> dims(t.max_ghost + 2, 0), ranks(t.max_ghost + 2, 0);
    for (int g = 0; g <= t.max_ghost; ++g) {
      const CellMatrix cm = matrix(w, g);
      dims[g] = cm.src.size();
      ranks[g] = rank_at_hbar_one(cm);
      t.hbar_homogeneous = t.hbar_homogeneous && cm.hbar_homogeneous;
    }
    std::vector<size_t> cdims, hdims;
    for (int g = 0; g <= t.max_ghost; ++g) {
      cdims.push_back(dims[g]);
      hdims.push_back(dims[g] - ranks[g] - (g > 0 ? ranks[g - 1] : 0));
    }
    t.complex_dims.push_back(cdims);
    t.cohomology_dims.push_back(hdims);
  }
  return t;
}

}  // namespace chiral

namespace chiral {

DSquaredReport DSComplex::check_d_squared(int max_weight) {
  DSquaredReport rep;
  const auto fail = [&](const std::string& w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };
  const Presentation& P = big();
  ++rep.checks;
  if (const Element dd = d_zero_d(); !dd.is_zero()) fail("d_(0)d = " + format_element(P, dd));
  for (size_t i = 0; i < P.size(); ++i)
    for (int der = 0; der <= 1; ++der) {
      ++rep.checks;
      const Element x = eng_.gen(static_cast<int>(i), der);
      if (const Element y = D(D(x)); !y.is_zero())
        fail("D^2(" + format_element(P, x) + ") = " + format_element(P, y));
    }
  for (int w = 0; w <= max_weight; ++w)
    for (int g = 0; g < w; ++g) {
      CellMatrix a, b;
      try {
        a = matrix(w, g);
        if (a.src.empty()) continue;
        b = matrix(w, g + 1);
      } catch (const Error& e) {
        ++rep.checks;
        fail(e.what());
        continue;
      }
      for (size_t j = 0; j < a.src.size(); ++j) {
        ++rep.checks;
        SparseRow<Scalar> acc;
        for (const auto& [i, c] : a.columns[j])
          for (const auto& [r, v] : b.columns[i]) {
            acc[r] += c * v;
            if (acc[r].is_zero()) acc.erase(r);
          }
        if (!acc.empty())
          fail("D^2 on " + format_monomial(cminus_, a.src[j]) + " at weight " + std::to_string(w));
      }
    }
  return rep;
}

}  // namespace chiral
