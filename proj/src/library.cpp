#include "chiral/library.hpp"

namespace chiral {

namespace {

Generator make_gen(std::string name, BigRational weight, BigRational hbar, bool odd = false,
                   int ghost = 0) {
  Generator g;
  g.name = std::move(name);
  g.weight = weight;
  g.hbar_weight = hbar;
  g.odd = odd;
  g.ghost = ghost;
  return g;
}

LambdaPoly constant(const Element& e) { return LambdaPoly(e); }

LambdaPoly skew(const LambdaPoly& p, bool both_odd) {
  // [b_l a] = -p(a,b) [a_{-l-D} b] for lambda-free or vacuum-valued entries
  LambdaPoly r;
  for (int j = 0; j <= p.degree(); ++j) {
    for (const auto& [m, c] : p.coeff(j).terms()) {
      if (!m.is_vacuum() && j > 0) throw Error("skew helper needs vacuum-valued lambda terms");
    }
    const int sign = (both_odd ? 1 : -1) * (j % 2 == 0 ? 1 : -1);
    r.add(j, Scalar(sign) * p.coeff(j));
  }
  return r;
}

}  // namespace

Presentation beta_gamma(int rank) {
  Presentation p;
  p.name = "beta-gamma rank " + std::to_string(rank);
  p.family = Family::FreeField;
  const auto suffix = [&](int i) { return rank == 1 ? std::string() : std::to_string(i + 1); };
  for (int i = 0; i < rank; ++i) p.add_generator(make_gen("beta" + suffix(i), 1, 1));
  for (int i = 0; i < rank; ++i) p.add_generator(make_gen("gamma" + suffix(i), 0, 0));
  for (int i = 0; i < rank; ++i) {
    const LambdaPoly h = constant(Element::vacuum(Scalar::hbar()));
    p.set_bracket(i, rank + i, h);
    p.set_bracket(rank + i, i, skew(h, false));
  }
  return p;
}

Presentation bc_system(int rank) {
  Presentation p;
  p.name = "bc rank " + std::to_string(rank);
  p.family = Family::FreeField;
  const auto suffix = [&](int i) { return rank == 1 ? std::string() : std::to_string(i + 1); };
  for (int i = 0; i < rank; ++i) p.add_generator(make_gen("b" + suffix(i), 1, 1, true, -1));
  for (int i = 0; i < rank; ++i) p.add_generator(make_gen("c" + suffix(i), 0, 0, true, 1));
  for (int i = 0; i < rank; ++i) {
    const LambdaPoly h = constant(Element::vacuum(Scalar::hbar()));
    p.set_bracket(i, rank + i, h);
    p.set_bracket(rank + i, i, skew(h, true));
  }
  return p;
}

Presentation heisenberg() {
  Presentation p;
  p.name = "Heisenberg";
  p.family = Family::FreeField;
  p.add_generator(make_gen("a", 1, 1));
  LambdaPoly b;
  b.add(1, Element::vacuum(Scalar::hbar(2)));
  p.set_bracket(0, 0, b);
  return p;
}

Presentation affine_gl(int n) {
  Presentation p;
  p.name = "V_h^k(gl" + std::to_string(n) + ")";
  p.family = Family::Affine;
  const auto idx = [n](int a, int b) { return a * n + b; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      p.add_generator(make_gen("E" + std::to_string(a + 1) + std::to_string(b + 1), 1, 1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
          Element br;
          if (b == c) br += Element(Monomial::single(idx(a, d)), Scalar::hbar());
          if (d == a) br -= Element(Monomial::single(idx(c, b)), Scalar::hbar());
          LambdaPoly poly(br);
          if (b == c && a == d) poly.add(1, Element::vacuum(Scalar::hbar(2) * Scalar::k()));
          p.set_bracket(idx(a, b), idx(c, d), poly);
        }
  return p;
}

Presentation virasoro(const Scalar& c) {
  Presentation p;
  p.name = "Virasoro";
  p.family = Family::VirasoroLike;
  p.add_generator(make_gen("L", 2, 0));
  LambdaPoly b;
  b.add(0, Element(Monomial::single(0, 1)));
  b.add(1, Element(Monomial::single(0), Scalar(2)));
  b.add(3, Element::vacuum(c * Scalar(BigRational(1, 12))));
  p.set_bracket(0, 0, b);
  return p;
}

Presentation localized(int len) {
  if (len < 1) throw Error("localized free fields need len >= 1");
  Presentation p;
  p.name = "D_loc(A^" + std::to_string(len) + ")";
  p.family = Family::LatticeLocalized;
  const int ip = p.add_generator(make_gen("p", 1, 1));
  Generator e = make_gen("E", 0, 1);
  e.e_charge = 1;
  e.exponential = true;
  const int ie = p.add_generator(e);
  p.set_bracket(ip, ie, constant(Element(Monomial::lattice(1), Scalar::hbar())));
  p.set_bracket(ie, ip, constant(Element(Monomial::lattice(1), -Scalar::hbar())));
  for (int i = 1; i < len; ++i) {
    const std::string s = len == 2 ? std::string() : std::to_string(i);
    const int b = p.add_generator(make_gen("beta" + s, 1, 1));
    const int g = p.add_generator(make_gen("gamma" + s, 0, 0));
    const LambdaPoly h = constant(Element::vacuum(Scalar::hbar()));
    p.set_bracket(b, g, h);
    p.set_bracket(g, b, skew(h, false));
  }
  return p;
}

}  // namespace chiral
