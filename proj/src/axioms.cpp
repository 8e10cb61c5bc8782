#include "chiral/axioms.hpp"

#include "chiral/basis.hpp"

namespace chiral {

namespace {

void add_to(BiPoly& r, int i, int j, const Element& e) {
  if (e.is_zero()) return;
  auto& slot = r[{i, j}];
  slot += e;
  if (slot.is_zero()) r.erase({i, j});
}

bool parity(const Presentation& p, const Element& e) {
  return e.is_zero() ? false : parity_of(p, e.terms().begin()->first);
}

}  // namespace

BiPoly jacobi_residual(Engine& eng, const Element& a, const Element& b, const Element& c) {
  BiPoly r;
  const auto& P = eng.presentation();
  const LambdaPoly bc = eng.bracket(b, c);
  for (int j = 0; j <= bc.degree(); ++j) {
    const LambdaPoly y = eng.bracket(a, bc.coeff(j));
    for (int i = 0; i <= y.degree(); ++i) add_to(r, i, j, y.coeff(i));
  }
  const int sign = parity_sign(parity(P, a), parity(P, b));
  const LambdaPoly ac = eng.bracket(a, c);
  for (int i = 0; i <= ac.degree(); ++i) {
    const LambdaPoly w = eng.bracket(b, ac.coeff(i));
    for (int j = 0; j <= w.degree(); ++j) add_to(r, i, j, Scalar(-sign) * w.coeff(j));
  }
  const LambdaPoly ab = eng.bracket(a, b);
  for (int i = 0; i <= ab.degree(); ++i) {
    const LambdaPoly z = eng.bracket(ab.coeff(i), c);
    for (int n = 0; n <= z.degree(); ++n)
      for (int t = 0; t <= n; ++t)
        add_to(r, i + t, n - t, Scalar(-binomial(n, t)) * z.coeff(n));
  }
  return r;
}

LambdaPoly skew_residual(Engine& eng, const Element& a, const Element& b) {
  const auto& P = eng.presentation();
  const int sign = parity_sign(parity(P, a), parity(P, b));
  return eng.bracket(b, a) + Scalar(sign) * eng.reflect(eng.bracket(a, b));
}

AxiomReport check_axioms(const Presentation& p, const AxiomOptions& opt) {
  Engine eng(p);
  AxiomReport rep;
  std::vector<std::pair<std::string, Element>> gens;
  for (size_t i = 0; i < p.size(); ++i)
    gens.emplace_back(p.gen(static_cast<int>(i)).name, p.gen_element(static_cast<int>(i)));
  if (p.exponential()) gens.emplace_back("exp(-1)", Element(Monomial::lattice(-1)));

  const auto fail = [&](const std::string& w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };

  for (const auto& [na, a] : gens)
    for (const auto& [nb, b] : gens) {
      ++rep.skew_checked;
      const bool good = skew_residual(eng, a, b).is_zero();
      rep.lines.push_back("skewsymmetry (" + na + "," + nb + "): " + (good ? "ok" : "FAIL"));
      if (!good) fail("skewsymmetry (" + na + "," + nb + ")");
    }

  // deterministic composite sample: every few basis monomials of length >= 2
  std::vector<std::pair<std::string, Element>> composites;
  for (int w = 1; w <= opt.weight_cutoff; ++w) {
    BasisQuery q;
    q.weight = w;
    q.length_cutoff = opt.length_cutoff;
    if (p.exponential()) q.e_charge = 0;
    std::vector<Monomial> all;
    try {
      all = enumerate_basis(p, q);
    } catch (const InfiniteGradedPiece&) {
      continue;
    }
    std::vector<Monomial> comp;
    for (const auto& m : all)
      if (m.factors.size() + (m.lat != 0 ? 1 : 0) >= 2) comp.push_back(m);
    const size_t step = std::max<size_t>(1, comp.size() / opt.composite_samples + 1);
    for (size_t i = 0; i < comp.size(); i += step)
      composites.emplace_back(format_monomial(p, comp[i]), Element(comp[i]));
  }

  const auto jac = [&](const std::string& na, const Element& a, const std::string& nb,
                       const Element& b, const std::string& nc, const Element& c) {
    ++rep.jacobi_checked;
    const BiPoly r = jacobi_residual(eng, a, b, c);
    const std::string tag = "(" + na + "," + nb + "," + nc + ")";
    rep.lines.push_back("Jacobi " + tag + ": " + (r.empty() ? "ok" : "FAIL"));
    if (!r.empty()) {
      const auto& [ij, e] = *r.begin();
      fail("Jacobi " + tag + " at lambda^" + std::to_string(ij.first) + " mu^" +
           std::to_string(ij.second) + ": " + format_element(p, e));
    }
  };
  for (const auto& [na, a] : gens)
    for (const auto& [nb, b] : gens)
      for (const auto& [nc, c] : gens) jac(na, a, nb, b, nc, c);
  for (const auto& [nc, c] : composites) {
    for (const auto& [na, a] : gens)
      for (const auto& [nb, b] : gens) jac(na, a, nb, b, nc, c);
    for (const auto& [na, a] : gens) {
      ++rep.skew_checked;
      const bool good = skew_residual(eng, a, c).is_zero();
      rep.lines.push_back("skewsymmetry (" + na + "," + nc + "): " + (good ? "ok" : "FAIL"));
      if (!good) fail("skewsymmetry (" + na + "," + nc + ")");
    }
  }
  return rep;
}

}  // namespace chiral
