#include "chiral/engine.hpp"

namespace chiral {

NestedWord NestedWord::leaf(int gen, int d) {
  NestedWord w;
  w.gen = gen;
  w.d = d;
  return w;
}

NestedWord NestedWord::product(NestedWord a, int n, NestedWord b) {
  NestedWord w;
  w.n = n;
  w.left = std::make_shared<NestedWord>(std::move(a));
  w.right = std::make_shared<NestedWord>(std::move(b));
  return w;
}

Engine::Engine(Presentation p) : p_(std::move(p)), exp_(p_.exponential()) {}

void Engine::clear_cache() {
  insert_cache_.clear();
  nprod_cache_.clear();
  deriv_cache_.clear();
  br_cache_.clear();
  br_atom_cache_.clear();
}

size_t Engine::cache_size() const {
  return insert_cache_.size() + nprod_cache_.size() + deriv_cache_.size() + br_cache_.size() +
         br_atom_cache_.size();
}

Factor Engine::normalize_atom(const Factor& f) const {
  if (f.gen >= 0 && exp_ && f.gen == *exp_ && f.d == 0) return lattice_atom(1);
  return f;
}

bool Engine::atom_odd(const Factor& f) const { return !is_lattice(f) && p_.gen(f.gen).odd; }

Monomial Engine::rest(const Monomial& m) const {
  Monomial r;
  r.factors.assign(m.factors.begin() + 1, m.factors.end());
  r.lat = m.lat;
  return r;
}

// ------------------------------------------------------------ lambda ops

LambdaPoly Engine::shift_lambda_plus_d(const LambdaPoly& p, int b) {
  if (b == 0) return p;
  LambdaPoly r;
  for (int j = 0; j <= p.degree(); ++j) {
    const Element& c = p.coeff(j);
    if (c.is_zero()) continue;
    Element dc = c;
    for (int i = 0; i <= b; ++i) {
      if (i > 0) dc = derivative(dc);
      if (dc.is_zero()) break;
      r.add(j + b - i, Scalar(binomial(b, i)) * dc);
    }
  }
  return r;
}

LambdaPoly Engine::reflect(const LambdaPoly& p) {
  LambdaPoly r;
  for (int j = 0; j <= p.degree(); ++j) {
    const Element& c = p.coeff(j);
    if (c.is_zero()) continue;
    Element dc = c;
    const long sign = (j % 2 == 0) ? 1 : -1;
    for (int i = 0; i <= j; ++i) {
      if (i > 0) dc = derivative(dc);
      if (dc.is_zero()) break;
      r.add(j - i, Scalar(binomial(j, i) * sign) * dc);
    }
  }
  return r;
}

Element Engine::integrate_minus_d(const LambdaPoly& p) {
  Element r;
  for (int j = 0; j <= p.degree(); ++j) {
    const Element& c = p.coeff(j);
    if (c.is_zero()) continue;
    BigRational f(j % 2 == 0 ? 1 : -1);
    f /= j + 1;
    r += Scalar(f) * derivative(c, j + 1);
  }
  return r;
}

// --------------------------------------------------------- normal order

Element Engine::insert(const Factor& f0, const Element& e) {
  Element r;
  for (const auto& [m, c] : e.terms()) r += c * insert(f0, m);
  return r;
}

Element Engine::insert(const Factor& f0, const Monomial& m) {
  const Factor f = normalize_atom(f0);
  auto key = std::make_pair(f, m);
  if (auto it = insert_cache_.find(key); it != insert_cache_.end()) return it->second;

  Element result;
  if (m.factors.empty()) {
    if (is_lattice(f)) {
      result = Element(Monomial::lattice(m.lat + f.d));
    } else {
      result = Element(Monomial{{f}, m.lat});
    }
  } else {
    const Factor& f1 = m.factors.front();
    const Monomial r = rest(m);
    if (is_lattice(f)) {
      result = insert(f1, insert(f, r));
      result += nprod(integrate_minus_d(br_atoms(f, f1)), r);
    } else if (f < f1 || (f == f1 && !atom_odd(f))) {
      Monomial mm = m;
      mm.factors.insert(mm.factors.begin(), f);
      result = Element(mm);
    } else if (f == f1) {
      // :f:fR:: = 1/2 :(int_{-D}^0 [f_l f] dl) R: for odd f
      result = Scalar(BigRational(1, 2)) * nprod(integrate_minus_d(br_atoms(f, f)), r);
    } else {
      const int sign = parity_sign(atom_odd(f), atom_odd(f1));
      result = Scalar(sign) * insert(f1, insert(f, r));
      result += nprod(integrate_minus_d(br_atoms(f, f1)), r);
    }
  }
  insert_cache_.emplace(std::move(key), result);
  return result;
}

Element Engine::nprod(const Element& a, const Monomial& b) {
  Element r;
  for (const auto& [m, c] : a.terms()) r += c * nprod(m, b);
  return r;
}

Element Engine::normal_product(const Element& a, const Element& b) {
  Element r;
  for (const auto& [mb, cb] : b.terms()) {
    for (const auto& [ma, ca] : a.terms()) r += (ca * cb) * nprod(ma, mb);
  }
  return r;
}

Element Engine::nprod(const Monomial& a, const Monomial& b) {
  if (a.factors.empty()) {
    if (a.lat == 0) return Element(b);
    return insert(lattice_atom(a.lat), b);
  }
  if (a.factors.size() == 1 && a.lat == 0) return insert(a.factors.front(), b);

  auto key = std::make_pair(a, b);
  if (auto it = nprod_cache_.find(key); it != nprod_cache_.end()) return it->second;

  const Factor& f1 = a.factors.front();
  const Monomial r1 = rest(a);
  Element result = insert(f1, nprod(r1, b));

  const LambdaPoly c = br(r1, b);
  for (int j = 0; j <= c.degree(); ++j) {
    if (c.coeff(j).is_zero()) continue;
    result += Scalar(BigRational(1, j + 1)) * insert(Factor{f1.gen, f1.d + j + 1}, c.coeff(j));
  }
  const LambdaPoly dp = br(Element(Monomial::single(f1.gen, f1.d)), b);
  if (!dp.is_zero()) {
    const int sign = parity_sign(atom_odd(f1), parity_of(p_, r1));
    Element dr = Element(r1);
    for (int j = 0; j <= dp.degree(); ++j) {
      dr = derivative(dr);
      if (dr.is_zero()) break;
      if (dp.coeff(j).is_zero()) continue;
      result += Scalar(BigRational(sign, j + 1)) * normal_product(dr, dp.coeff(j));
    }
  }
  nprod_cache_.emplace(std::move(key), result);
  return result;
}

Element Engine::deriv(const Monomial& m) {
  if (m.factors.empty()) {
    if (m.lat == 0) return {};
    if (!exp_) throw Error("lattice exponential without an exponential generator");
    return Element(Monomial{{Factor{*exp_, 1}}, m.lat - 1}, Scalar(m.lat));
  }
  if (auto it = deriv_cache_.find(m); it != deriv_cache_.end()) return it->second;
  const Factor& f1 = m.factors.front();
  const Monomial r = rest(m);
  Element result = insert(Factor{f1.gen, f1.d + 1}, r);
  result += insert(f1, deriv(r));
  deriv_cache_.emplace(m, result);
  return result;
}

Element Engine::derivative(const Element& a, int times) {
  Element cur = a;
  for (int t = 0; t < times && !cur.is_zero(); ++t) {
    Element next;
    for (const auto& [m, c] : cur.terms()) next += c * deriv(m);
    cur = std::move(next);
  }
  return cur;
}

// ------------------------------------------------------------- brackets

LambdaPoly Engine::br_atoms(const Factor& a0, const Factor& f0) {
  const Factor a = normalize_atom(a0);
  const Factor f = normalize_atom(f0);
  if (is_lattice(f)) {
    // [a_l e^m] = m :[a_l e^1] e^{m-1}:
    if (is_lattice(a)) return {};
    const LambdaPoly& pe = p_.bracket(a.gen, *exp_);
    if (pe.degree() > 0)
      throw Error("bracket with the lattice exponential must be lambda-free");
    if (pe.is_zero()) return {};
    LambdaPoly r(Scalar(f.d) * nprod(pe.coeff(0), Monomial::lattice(f.d - 1)));
    return a.d > 0 ? r.times_lambda_power(a.d, Scalar(-1)) : r;
  }
  LambdaPoly base;
  if (is_lattice(a)) {
    // [e^m_l h] = -p(h,e) [h_{-l-D} e^m] with [h_l e^m] lambda-free
    if (exp_ && f.gen == *exp_) return {};
    const LambdaPoly& pe = p_.bracket(f.gen, *exp_);
    if (pe.degree() > 0)
      throw Error("bracket with the lattice exponential must be lambda-free");
    if (pe.is_zero()) return {};
    base = LambdaPoly(Scalar(-a.d) * nprod(pe.coeff(0), Monomial::lattice(a.d - 1)));
  } else {
    base = p_.bracket(a.gen, f.gen);
    if (a.d > 0) base = base.times_lambda_power(a.d, Scalar(-1));
  }
  return shift_lambda_plus_d(base, f.d);
}

LambdaPoly Engine::br_atom(const Factor& a0, const Monomial& m) {
  const Factor a = normalize_atom(a0);
  auto key = std::make_pair(a, m);
  if (auto it = br_atom_cache_.find(key); it != br_atom_cache_.end()) return it->second;

  LambdaPoly result;
  if (m.factors.empty()) {
    if (m.lat != 0) result = br_atoms(a, lattice_atom(m.lat));
  } else {
    const Factor& f1 = m.factors.front();
    const Monomial r = rest(m);
    const LambdaPoly b = br_atoms(a, f1);
    for (int j = 0; j <= b.degree(); ++j) {
      const Element& bj = b.coeff(j);
      if (bj.is_zero()) continue;
      result.add(j, nprod(bj, r));
      const LambdaPoly inner = br(bj, r);
      for (int l = 0; l <= inner.degree(); ++l) {
        if (inner.coeff(l).is_zero()) continue;
        result.add(j + l + 1, Scalar(BigRational(1, l + 1)) * inner.coeff(l));
      }
    }
    const LambdaPoly c = br_atom(a, r);
    if (!c.is_zero()) {
      const int sign = parity_sign(atom_odd(a), atom_odd(f1));
      for (int j = 0; j <= c.degree(); ++j) {
        if (c.coeff(j).is_zero()) continue;
        result.add(j, Scalar(sign) * insert(f1, c.coeff(j)));
      }
    }
  }
  br_atom_cache_.emplace(std::move(key), result);
  return result;
}

LambdaPoly Engine::br(const Element& a, const Monomial& b) {
  LambdaPoly r;
  for (const auto& [m, c] : a.terms()) r += c * br(m, b);
  return r;
}

LambdaPoly Engine::br(const Element& a, const Element& b) {
  LambdaPoly r;
  for (const auto& [mb, cb] : b.terms()) {
    for (const auto& [ma, ca] : a.terms()) r += (ca * cb) * br(ma, mb);
  }
  return r;
}

LambdaPoly Engine::bracket(const Element& a, const Element& b) { return br(a, b); }

LambdaPoly Engine::br(const Monomial& a, const Monomial& b) {
  if (a.factors.empty()) {
    if (a.lat == 0) return {};
    return br_atom(lattice_atom(a.lat), b);
  }
  if (a.factors.size() == 1 && a.lat == 0) {
    const Factor& f = a.factors.front();
    LambdaPoly base = br_atom(Factor{f.gen, 0}, b);
    if (f.d == 0) return base;
    return base.times_lambda_power(f.d, Scalar(-1));
  }

  auto key = std::make_pair(a, b);
  if (auto it = br_cache_.find(key); it != br_cache_.end()) return it->second;

  const Factor& f1 = a.factors.front();
  const Monomial rb = rest(a);
  const int sign = parity_sign(atom_odd(f1), parity_of(p_, rb));
  LambdaPoly result;

  // :(e^{D d_l} f1)[B_l c]:
  const LambdaPoly z = br(rb, b);
  for (int j = 0; j <= z.degree(); ++j) {
    const Element& zj = z.coeff(j);
    if (zj.is_zero()) continue;
    for (int n = 0; n <= j; ++n)
      result.add(j - n, Scalar(binomial(j, n)) * insert(Factor{f1.gen, f1.d + n}, zj));
  }

  // p(f1,B) :(e^{D d_l} B)[f1_l c]:
  const Monomial f1m = Monomial::single(f1.gen, f1.d);
  const LambdaPoly w = br(f1m, b);
  if (!w.is_zero()) {
    std::vector<Element> dB{Element(rb)};
    for (int j = 0; j <= w.degree(); ++j) {
      const Element& wj = w.coeff(j);
      if (wj.is_zero()) continue;
      while (static_cast<int>(dB.size()) <= j) dB.push_back(derivative(dB.back()));
      for (int n = 0; n <= j; ++n) {
        if (dB[n].is_zero()) continue;
        result.add(j - n, Scalar(binomial(j, n) * sign) * normal_product(dB[n], wj));
      }
    }
    // p(f1,B) int_0^l [B_m [f1_{l-m} c]] dm
    for (int i = 0; i <= w.degree(); ++i) {
      const Element& wi = w.coeff(i);
      if (wi.is_zero()) continue;
      const LambdaPoly y = br(Element(rb), wi);
      for (int l = 0; l <= y.degree(); ++l) {
        if (y.coeff(l).is_zero()) continue;
        BigRational f = factorial(l) * factorial(i) / factorial(l + i + 1);
        result.add(l + i + 1, Scalar(f * sign) * y.coeff(l));
      }
    }
  }
  br_cache_.emplace(std::move(key), result);
  return result;
}

// ---------------------------------------------------------- public API

Element Engine::nth_product(const Element& a, int n, const Element& b) {
  if (n >= 0) return bracket(a, b).product(n);
  const int j = -1 - n;
  return Scalar(1 / factorial(j)) * normal_product(derivative(a, j), b);
}

Element Engine::normal_order(const NestedWord& w) {
  if (w.gen >= 0) return gen(w.gen, w.d);
  return nth_product(normal_order(*w.left), w.n, normal_order(*w.right));
}

void Engine::complete_skew() {
  std::vector<std::pair<std::pair<int, int>, LambdaPoly>> add;
  for (const auto& [key, poly] : p_.brackets) {
    const auto rev = std::make_pair(key.second, key.first);
    if (p_.brackets.count(rev)) continue;
    const int sign = -parity_sign(p_.gen(key.first).odd, p_.gen(key.second).odd);
    add.emplace_back(rev, Scalar(sign) * reflect(poly));
  }
  for (auto& [key, poly] : add) p_.set_bracket(key.first, key.second, std::move(poly));
  clear_cache();
}

}  // namespace chiral
