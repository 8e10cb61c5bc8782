#include "chiral/wgen.hpp"

#include "chiral/basis.hpp"
#include "chiral/oracle.hpp"

namespace chiral {

namespace {

std::map<Monomial, RatFuncK> at_one(const Element& e) {
  std::map<Monomial, RatFuncK> r;
  for (const auto& [m, s] : e.terms())
    if (RatFuncK v = s.hbar_specialize(1); !v.is_zero()) r[m] = v;
  return r;
}

struct Kernel {
  std::vector<Monomial> src;
  std::vector<SparseRow<RatFuncK>> vectors;
};

Kernel h0_kernel(DSComplex& c, const BigRational& weight) {
  const CellMatrix cm = c.matrix(weight, 0);
  std::vector<SparseRow<RatFuncK>> rows(cm.dst.size());
  for (size_t j = 0; j < cm.columns.size(); ++j)
    for (const auto& [r, s] : cm.columns[j])
      if (RatFuncK v = s.hbar_specialize(1); !v.is_zero()) rows[r][static_cast<int>(j)] = v;
  return {cm.src, nullspace(rows, static_cast<int>(cm.src.size()))};
}

Element element_of(DSComplex& c, const std::vector<Monomial>& src, const SparseRow<RatFuncK>& v,
                   const BigRational& weight) {
  Element e;
  for (const auto& [j, x] : v) e += Scalar(x) * c.expand(src[j]);
  return homogenize(c.big(), e, weight);
}

Scalar specialize_k(const Scalar& s, const BigRational& k0) {
  const auto v = s.eval_at_k(k0);
  Scalar r;
  for (size_t i = 0; i < v.size(); ++i) r += Scalar::term(RatFuncK(v[i]), static_cast<int>(i));
  return r;
}

}  // namespace

Element homogenize(const Presentation& p, const Element& e, const BigRational& H) {
  Element r;
  for (const auto& [m, s] : e.terms()) {
    const BigRational shift = H - grade_of(p, m).hbar_weight;
    if (sgn(shift) < 0 || shift.get_den() != 1)
      throw Error("cannot homogenize: " + format_monomial(p, m) + " has hbar weight above " +
                  to_string(H));
    r.add(m, Scalar::term(s.hbar_specialize(1), static_cast<int>(shift.get_num().get_si())));
  }
  return r;
}

std::vector<Element> h0_basis(DSComplex& c, const BigRational& weight) {
  const Kernel k = h0_kernel(c, weight);
  std::vector<Element> out;
  for (const auto& v : k.vectors) out.push_back(element_of(c, k.src, v, weight));
  return out;
}

std::vector<WGenerator> extract_generators(DSComplex& c, int max_weight) {
  std::vector<WGenerator> gens;
  Engine& eng = c.engine();
  for (int w = 1; w <= max_weight; ++w) {
    const Kernel k = h0_kernel(c, w);
    std::map<Monomial, int> index;
    for (size_t i = 0; i < k.src.size(); ++i) index[k.src[i]] = static_cast<int>(i);
    Echelon<RatFuncK> span;
    if (!gens.empty()) {
      Presentation words;
      for (size_t i = 0; i < gens.size(); ++i) {
        Generator g;
        g.name = "g" + std::to_string(i);
        g.weight = gens[i].weight;
        words.add_generator(g);
      }
      BasisQuery q;
      q.weight = w;
      for (const auto& m : enumerate_basis(words, q)) {
        Element x = Element::vacuum();
        for (auto f = m.factors.rbegin(); f != m.factors.rend(); ++f)
          x = eng.normal_product(eng.derivative(gens[f->gen].rep, f->d), x);
        SparseRow<RatFuncK> row;
        for (const auto& [t, s] : c.decompose(x))
          if (RatFuncK v = s.hbar_specialize(1); !v.is_zero()) row[index.at(t)] = v;
        span.add(std::move(row));
      }
    }
    for (const auto& v : k.vectors)
      if (span.add(v)) gens.push_back({element_of(c, k.src, v, w), BigRational(w)});
  }
  return gens;
}

std::optional<VirasoroDatum> find_virasoro(Engine& eng, const std::vector<Element>& candidates,
                                           const std::vector<WGenerator>& primaries) {
  const int n = static_cast<int>(candidates.size());
  if (n == 0) return std::nullopt;
  std::map<std::pair<int, Monomial>, SparseRow<RatFuncK>> lhs;
  std::map<std::pair<int, Monomial>, RatFuncK> rhs;
  int cond = 0;
  const auto add_condition = [&](int j, const Element& g, const Element& target) {
    for (int i = 0; i < n; ++i)
      for (const auto& [m, v] : at_one(eng.nth_product(candidates[i], j, g))) lhs[{cond, m}][i] = v;
    for (const auto& [m, v] : at_one(target)) {
      rhs[{cond, m}] = v;
      lhs[{cond, m}];
    }
    ++cond;
  };
  for (const auto& p : primaries) {
    add_condition(0, p.rep, eng.derivative(p.rep));
    add_condition(1, p.rep, Scalar(p.weight) * p.rep);
    if (p.weight == 1) add_condition(2, p.rep, Element());
  }
  std::vector<SparseRow<RatFuncK>> a;
  std::vector<RatFuncK> b;
  for (auto& [key, row] : lhs) {
    a.push_back(row);
    auto it = rhs.find(key);
    b.push_back(it == rhs.end() ? RatFuncK(0) : it->second);
  }
  if (rank_of(a) != static_cast<size_t>(n)) return std::nullopt;
  std::vector<RatFuncK> x;
  if (!solve_linear(a, b, n, x)) return std::nullopt;
  Element L;
  for (int i = 0; i < n; ++i) L += Scalar(x[i]) * candidates[i];
  if (L.is_zero()) return std::nullopt;
  L = homogenize(eng.presentation(), L, 2);

  const LambdaPoly br = eng.bracket(L, L);
  if (br.degree() > 3) return std::nullopt;
  if (at_one(br.coeff(0)) != at_one(eng.derivative(L))) return std::nullopt;
  if (at_one(br.coeff(1)) != at_one(Scalar(2) * L)) return std::nullopt;
  if (!at_one(br.coeff(2)).empty()) return std::nullopt;
  const auto top = at_one(br.coeff(3));
  RatFuncK c(0);
  for (const auto& [m, v] : top) {
    if (!m.is_vacuum()) return std::nullopt;
    c = RatFuncK(12) * v;
  }
  return VirasoroDatum{L, c};
}

std::optional<VirasoroDatum> identify_virasoro(DSComplex& c) {
  const auto gens = extract_generators(c, 2);
  return find_virasoro(c.engine(), h0_basis(c, 2), gens);
}

Element specialize_k(const Element& e, const BigRational& k0) {
  return e.map_coeffs([&](const Scalar& s) { return specialize_k(s, k0); });
}

Presentation specialize_k(const Presentation& p, const BigRational& k0) {
  Presentation r = p;
  for (auto& [key, l] : r.brackets)
    l = l.map_elements([&](const Element& e) { return specialize_k(e, k0); });
  return r;
}

BigRational mode_central_charge(const Presentation& p, const Element& L, const BigRational& k0,
                                const std::vector<BigRational>& weights) {
  ModeOracle oracle(specialize_k(p, k0), weights);
  const Element Lk = specialize_k(L, k0);
  const Element top = oracle.product(Lk, 3, Lk);
  BigRational c = 0;
  for (const auto& v : top.coeff(Monomial::vacuum()).eval_at_k(k0)) c += v;
  return 2 * c;
}

}  // namespace chiral
