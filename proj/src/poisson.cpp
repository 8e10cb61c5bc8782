#include "chiral/poisson.hpp"

#include <algorithm>
#include <sstream>

#include "chiral/basis.hpp"
#include "chiral/errors.hpp"
#include "chiral/linalg.hpp"

namespace chiral {

RatFuncK JetPoly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? RatFuncK(0) : it->second;
}

void JetPoly::add(const Monomial& m, const RatFuncK& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

JetPoly operator*(const RatFuncK& s, const JetPoly& p) {
  JetPoly r;
  if (s.is_zero()) return r;
  for (const auto& [m, c] : p.t_) r.add(m, s * c);
  return r;
}

void lambda_add(JetLambda& p, int j, const JetPoly& e) {
  if (e.is_zero()) return;
  if (static_cast<int>(p.size()) <= j) p.resize(j + 1);
  p[j] += e;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int PoissonPresentation::index(const std::string& n) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == n) return static_cast<int>(i);
  throw Error("unknown generator '" + n + "'");
}

const JetLambda& PoissonPresentation::bracket(int a, int b) const {
  static const JetLambda zero;
  auto it = brackets.find({a, b});
  return it == brackets.end() ? zero : it->second;
}

Presentation PoissonPresentation::shape() const {
  Presentation p;
  p.name = name;
  p.family = Family::FreeField;
  for (auto g : generators) {
    g.exponential = false;
    g.e_charge = 0;
    p.add_generator(g);
  }
  return p;
}

namespace {

// Sorts a product of factors into canonical order; returns the sign, or 0
// when an odd factor repeats.
int canonicalize(const PoissonPresentation& p, std::vector<Factor>& f) {
  int sign = 1;
  for (size_t i = 1; i < f.size(); ++i) {
    for (size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
      if (p.generators[f[j].gen].odd && p.generators[f[j - 1].gen].odd) sign = -sign;
      std::swap(f[j], f[j - 1]);
    }
  }
  for (size_t i = 1; i < f.size(); ++i)
    if (f[i] == f[i - 1] && p.generators[f[i].gen].odd) return 0;
  return sign;
}

}  // namespace

JetAlgebra::JetAlgebra(PoissonPresentation p) : p_(std::move(p)) {}

bool JetAlgebra::parity(const Monomial& m) const {
  bool odd = false;
  for (const auto& f : m.factors) odd ^= p_.generators[f.gen].odd;
  return odd;
}

bool JetAlgebra::parity(const JetPoly& a) const {
  return a.is_zero() ? false : parity(a.terms().begin()->first);
}

JetPoly JetAlgebra::mul_mono(const Monomial& a, const Monomial& b) const {
  Monomial m;
  m.factors = a.factors;
  m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
  m.lat = a.lat + b.lat;
  const int s = canonicalize(p_, m.factors);
  if (s == 0) return {};
  return JetPoly(m, RatFuncK(s));
}

JetPoly JetAlgebra::mul(const JetPoly& a, const JetPoly& b) const {
  JetPoly r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r += (ca * cb) * mul_mono(ma, mb);
  return r;
}

JetPoly JetAlgebra::derivative(const JetPoly& a, int times) const {
  JetPoly cur = a;
  for (int t = 0; t < times; ++t) {
    JetPoly next;
    for (const auto& [m, c] : cur.terms()) {
      for (size_t i = 0; i < m.factors.size(); ++i) {
        Monomial d = m;
        d.factors[i].d += 1;
        const int s = canonicalize(p_, d.factors);
        if (s != 0) next.add(d, s * c);
      }
      // D exp(m x) = m x' exp(m x).
      if (m.lat != 0) {
        Monomial d = m;
        d.factors.push_back(Factor{*p_.exponent, 1});
        const int s = canonicalize(p_, d.factors);
        if (s != 0) next.add(d, RatFuncK(BigRational(s * m.lat)) * c);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

JetLambda JetAlgebra::br_var(const Factor& u, const Monomial& b) {
  auto key = std::make_pair(u, b);
  if (auto it = var_cache_.find(key); it != var_cache_.end()) return it->second;
  JetLambda out;
  const bool pu = p_.generators[u.gen].odd;
  bool prefix_odd = false;
  for (size_t t = 0; t < b.factors.size(); ++t) {
    const Factor y = b.factors[t];
    Monomial pre, suf;
    pre.factors.assign(b.factors.begin(), b.factors.begin() + t);
    suf.factors.assign(b.factors.begin() + t + 1, b.factors.end());
    suf.lat = b.lat;
    const RatFuncK sign(pu && prefix_odd ? -1 : 1);
    const JetLambda& base = p_.bracket(u.gen, y.gen);
    // (-lambda)^a (lambda + D)^b applied to the generator bracket.
    const RatFuncK neg_a((u.d % 2) ? -1 : 1);
    for (size_t j = 0; j < base.size(); ++j) {
      for (int i = 0; i <= y.d; ++i) {
        JetPoly z = derivative(base[j], i);
        if (z.is_zero()) continue;
        const RatFuncK c = sign * neg_a * RatFuncK(binomial(y.d, i));
        JetPoly term = mul(mul(JetPoly(pre), z), JetPoly(suf));
        lambda_add(out, static_cast<int>(j) + y.d - i + u.d, c * term);
      }
    }
    prefix_odd ^= p_.generators[y.gen].odd;
  }
  // {u_lambda exp(m x)} = m exp(m x) {u_lambda x}.
  if (b.lat != 0) {
    const JetLambda& base = p_.bracket(u.gen, *p_.exponent);
    const RatFuncK c(BigRational(((u.d % 2) ? -1 : 1) * (pu && prefix_odd ? -1 : 1) * b.lat));
    for (size_t j = 0; j < base.size(); ++j)
      lambda_add(out, static_cast<int>(j) + u.d, c * mul(JetPoly(b), base[j]));
  }
  var_cache_.emplace(key, out);
  return out;
}

JetLambda JetAlgebra::br_mono(const Monomial& a, const Monomial& b) {
  if (a.is_vacuum() || b.is_vacuum()) return {};
  if (a.factors.size() == 1 && a.lat == 0) return br_var(a.factors[0], b);
  auto key = std::make_pair(a, b);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (a.factors.empty()) {
    // Pure exponentials commute; otherwise {a_lambda b} = -{b_{-lambda-D} a}.
    JetLambda out;
    if (!b.factors.empty()) {
      const JetLambda z = br_mono(b, a);
      for (size_t j = 0; j < z.size(); ++j)
        for (size_t i = 0; i <= j; ++i) {
          BigRational c = binomial(j, i);
          if ((j % 2) == 0) c = -c;
          lambda_add(out, static_cast<int>(j - i), RatFuncK(c) * derivative(z[j], i));
        }
    }
    cache_.emplace(key, out);
    return out;
  }
  const Factor u = a.factors[0];
  Monomial rest;
  rest.factors.assign(a.factors.begin() + 1, a.factors.end());
  rest.lat = a.lat;
  const JetPoly uj(Monomial::single(u.gen, u.d));
  const JetPoly rj(rest);
  JetLambda out;
  // [u R _lambda c] = (e^{D d_lambda} u)[R_lambda c] + p(u,R)(e^{D d_lambda} R)[u_lambda c].
  const JetLambda z = br_mono(rest, b);
  for (size_t j = 0; j < z.size(); ++j)
    for (size_t n = 0; n <= j; ++n)
      lambda_add(out, static_cast<int>(j - n),
                 RatFuncK(binomial(j, n)) * mul(derivative(uj, n), z[j]));
  const JetLambda w = br_var(u, b);
  const bool sgn_neg = p_.generators[u.gen].odd && parity(rest);
  for (size_t j = 0; j < w.size(); ++j)
    for (size_t n = 0; n <= j; ++n)
      lambda_add(out, static_cast<int>(j - n),
                 RatFuncK(sgn_neg ? -binomial(j, n) : binomial(j, n)) *
                     mul(derivative(rj, n), w[j]));
  cache_.emplace(key, out);
  return out;
}

JetLambda JetAlgebra::bracket(const JetPoly& a, const JetPoly& b) {
  JetLambda out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const JetLambda t = br_mono(ma, mb);
      for (size_t j = 0; j < t.size(); ++j) lambda_add(out, static_cast<int>(j), (ca * cb) * t[j]);
    }
  return out;
}

JetPoly JetAlgebra::nth(const JetPoly& a, int n, const JetPoly& b) {
  const JetLambda l = bracket(a, b);
  if (n < 0 || n >= static_cast<int>(l.size())) return {};
  return RatFuncK(factorial(n)) * l[n];
}

std::string format_jet(const PoissonPresentation& p, const JetPoly& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (const auto& f : m.factors) {
      os << " " << p.generators[f.gen].name;
      if (f.d > 0) os << "^(" << f.d << ")";
    }
    if (m.lat != 0) os << " exp(" << m.lat << " " << p.generators[*p.exponent].name << ")";
  }
  return os.str();
}

namespace {

int max_degree(const PoissonPresentation& p) {
  int d = 0;
  for (const auto& [k, l] : p.brackets) d = std::max(d, static_cast<int>(l.size()));
  return d;
}

std::string pair_name(const PoissonPresentation& p, int a, int b) {
  return "(" + p.generators[a].name + "," + p.generators[b].name + ")";
}

}  // namespace

std::optional<std::string> check_vertex_poisson(JetAlgebra& alg) {
  const auto& p = alg.presentation();
  const int n = static_cast<int>(p.generators.size());
  // {b_lambda a} = -p(a,b) {a_{-lambda-D} b}.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const bool neg = p.generators[a].odd && p.generators[b].odd;
      JetLambda lhs = alg.bracket(alg.var(b), alg.var(a));
      const JetLambda ab = alg.bracket(alg.var(a), alg.var(b));
      for (size_t j = 0; j < ab.size(); ++j)
        for (size_t i = 0; i <= j; ++i) {
          BigRational c = binomial(j, i);
          if ((j % 2) == 1) c = -c;  // (-1)^{j-i} (-1)^i
          if (neg) c = -c;
          lambda_add(lhs, static_cast<int>(j - i), RatFuncK(c) * alg.derivative(ab[j], i));
        }
      if (!lhs.empty()) return "skewsymmetry " + pair_name(p, a, b);
    }
  const int top = std::min(max_degree(p) + 1, 5);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const bool neg = p.generators[a].odd && p.generators[b].odd;
        const JetPoly xa = alg.var(a), xb = alg.var(b), xc = alg.var(c);
        for (int m = 0; m < top; ++m)
          for (int k = 0; k < top; ++k) {
            JetPoly lhs = alg.nth(xa, m, alg.nth(xb, k, xc));
            const JetPoly other = alg.nth(xb, k, alg.nth(xa, m, xc));
            if (neg) lhs += other; else lhs -= other;
            for (int j = 0; j <= m; ++j)
              lhs -= RatFuncK(binomial(m, j)) * alg.nth(alg.nth(xa, j, xb), m + k - j, xc);
            if (!lhs.is_zero())
              return "jacobi (" + p.generators[a].name + "," + p.generators[b].name + "," +
                     p.generators[c].name + ") at (" + std::to_string(m) + "," +
                     std::to_string(k) + ")";
          }
      }
  return std::nullopt;
}

PoissonPresentation jet_lift(const FinitePoisson& f, bool with_level) {
  PoissonPresentation p;
  p.name = f.name;
  p.generators = f.coordinates;
  for (const auto& [k, poly] : f.bracket)
    if (!poly.is_zero()) p.brackets[k] = JetLambda{poly};
  if (with_level)
    for (const auto& [k, c] : f.level)
      if (!c.is_zero()) lambda_add(p.brackets[k], 1, JetPoly::one(c));
  for (auto it = p.brackets.begin(); it != p.brackets.end();)
    it = it->second.empty() ? p.brackets.erase(it) : std::next(it);
  JetAlgebra alg(p);
  if (auto w = check_vertex_poisson(alg)) throw NotPoisson("not a Poisson bracket: " + *w);
  return p;
}

FinitePoisson kks_gl(int n) {
  FinitePoisson f;
  f.name = "kks_gl" + std::to_string(n);
  auto idx = [n](int a, int b) { return a * n + b; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Generator g;
      g.name = "E" + std::to_string(a + 1) + std::to_string(b + 1);
      g.weight = 1;
      g.hbar_weight = 1;
      f.coordinates.push_back(g);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          JetPoly v;
          if (b == c) v.add(Monomial::single(idx(a, d)), RatFuncK(1));
          if (d == a) v.add(Monomial::single(idx(c, b)), RatFuncK(-1));
          if (!v.is_zero()) f.bracket[{idx(a, b), idx(c, d)}] = v;
          if (b == c && a == d) f.level[{idx(a, b), idx(c, d)}] = RatFuncK::k();
        }
  return f;
}

FinitePoisson cotangent_affine(int n) {
  FinitePoisson f;
  f.name = "cotangent_A" + std::to_string(n);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i) {
      Generator g;
      g.name = std::string(s == 0 ? "x" : "y") + (n == 1 ? "" : std::to_string(i + 1));
      g.weight = BigRational(1, 2);
      f.coordinates.push_back(g);
    }
  for (int i = 0; i < n; ++i) {
    f.bracket[{i, n + i}] = JetPoly::one(RatFuncK(1));
    f.bracket[{n + i, i}] = JetPoly::one(RatFuncK(-1));
  }
  return f;
}

FinitePoisson zero_poisson(int n) {
  FinitePoisson f;
  f.name = "zero_A" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    Generator g;
    g.name = "x" + std::to_string(i + 1);
    g.weight = BigRational(1, 2);
    f.coordinates.push_back(g);
  }
  return f;
}

namespace {

Monomial classical_monomial(const Presentation& p, const Monomial& m) {
  Monomial r;
  r.factors = m.factors;
  if (m.lat != 0) {
    auto e = p.exponential();
    if (!e || m.lat < 0) throw Error("negative exponential charge has no classical limit");
    for (int i = 0; i < m.lat; ++i) r.factors.push_back(Factor{*e, 0});
    std::sort(r.factors.begin(), r.factors.end());
  }
  return r;
}

}  // namespace

PoissonPresentation classical_limit(const Presentation& p) {
  PoissonPresentation c;
  c.name = p.name + "_classical";
  for (auto g : p.generators) {
    g.exponential = false;
    c.generators.push_back(g);
  }
  for (const auto& [k, l] : p.brackets) {
    JetLambda out;
    for (int j = 0; j <= l.degree(); ++j) {
      JetPoly t;
      for (const auto& [m, s] : l.coeff(j).terms()) {
        if (s.hbar_valuation() == 0)
          throw NotAlmostCommutative("(" + p.generators[k.first].name + "," +
                                     p.generators[k.second].name + ")");
        t.add(classical_monomial(p, m), s.divide_hbar(1).hbar_specialize(0));
      }
      lambda_add(out, j, t);
    }
    if (!out.empty()) c.brackets[k] = out;
  }
  return c;
}

JetPoly classical_limit(const Element& e) {
  JetPoly r;
  for (const auto& [m, s] : e.terms()) {
    if (m.lat != 0) throw Error("classical_limit(Element) needs a lattice-free element");
    r.add(m, s.hbar_specialize(0));
  }
  return r;
}

PoissonPresentation classical_limit_log(const Presentation& p) {
  const auto e = p.exponential();
  if (!e) return classical_limit(p);
  PoissonPresentation c;
  c.name = p.name + "_classical";
  for (auto g : p.generators) {
    g.exponential = false;
    g.e_charge = 0;
    if (g.name == p.generators[*e].name) {
      g.name = "log" + g.name;
      g.weight = 0;
      g.hbar_weight = 0;
    }
    c.generators.push_back(g);
  }
  c.exponent = *e;
  const JetAlgebra alg(c);
  auto convert = [&](const Element& el) {
    for (const auto& [m, s] : el.terms())
      if (s.hbar_valuation() == 0) throw NotAlmostCommutative("bracket without an h factor");
    Element r;
    for (const auto& [m, s] : el.terms()) r += Element(m, s.divide_hbar(1));
    return classical_limit_log(p, alg, r);
  };
  const int x = *e;
  for (const auto& [k, l] : p.brackets) {
    if (k.first == x && k.second == x) continue;
    JetLambda out;
    for (int j = 0; j <= l.degree(); ++j) lambda_add(out, j, convert(l.coeff(j)));
    if (k.second == x) {
      for (auto& t : out) t = alg.mul(JetPoly(Monomial::lattice(-1)), t);
      // {x_lambda y} = -p {y_{-lambda-D} x}; x is even.
      JetLambda rev;
      for (size_t j = 0; j < out.size(); ++j)
        for (size_t i = 0; i <= j; ++i) {
          BigRational cf = binomial(j, i);
          if ((j % 2) == 0) cf = -cf;
          lambda_add(rev, static_cast<int>(j - i), RatFuncK(cf) * alg.derivative(out[j], i));
        }
      if (!out.empty()) c.brackets[k] = out;
      if (!rev.empty()) c.brackets[{x, k.first}] = rev;
    } else if (k.first != x && !out.empty()) {
      c.brackets[k] = out;
    }
  }
  return c;
}

JetPoly classical_limit_log(const Presentation& p, const JetAlgebra& alg, const Element& e) {
  const auto x = p.exponential();
  JetPoly r;
  for (const auto& [m, s] : e.terms()) {
    const RatFuncK c = s.hbar_specialize(0);
    if (c.is_zero()) continue;
    JetPoly t = JetPoly(Monomial::lattice(m.lat), c);
    for (const auto& f : m.factors) {
      const JetPoly v = (x && f.gen == *x)
                            ? alg.derivative(JetPoly(Monomial::lattice(1)), f.d)
                            : alg.var(f.gen, f.d);
      t = alg.mul(t, v);
    }
    r += t;
  }
  return r;
}

std::vector<CasimirResult> casimir_search(JetAlgebra& alg, BigRational cutoff,
                                          BigRational step) {
  cutoff.canonicalize();
  step.canonicalize();
  if (step <= 0) throw Error("casimir_search needs a positive weight step");
  const Presentation shape = alg.presentation().shape();
  const int ngen = static_cast<int>(shape.size());
  std::vector<CasimirResult> out;
  for (BigRational w = 0; w <= cutoff; w += step) {
    BasisQuery q;
    q.weight = w;
    const auto basis = enumerate_basis(shape, q);
    std::map<Monomial, int> col;
    for (size_t i = 0; i < basis.size(); ++i) col[basis[i]] = static_cast<int>(i);
    // Equations: coefficient of each output monomial of a_(0) x_i.
    std::map<std::pair<int, Monomial>, SparseRow<RatFuncK>> eqs;
    for (size_t u = 0; u < basis.size(); ++u)
      for (int g = 0; g < ngen; ++g) {
        const JetPoly img = alg.nth(JetPoly(basis[u]), 0, alg.var(g));
        for (const auto& [m, c] : img.terms()) eqs[{g, m}][static_cast<int>(u)] = c;
      }
    std::vector<SparseRow<RatFuncK>> rows;
    for (auto& [k, r] : eqs) rows.push_back(std::move(r));
    const auto kernel = nullspace(rows, static_cast<int>(basis.size()));
    Echelon<RatFuncK> derived;
    if (w >= 1) {
      BasisQuery lower;
      lower.weight = w - 1;
      for (const auto& m : enumerate_basis(shape, lower)) {
        SparseRow<RatFuncK> r;
        const JetPoly dm = alg.derivative(JetPoly(m));
        for (const auto& [t, c] : dm.terms()) r[col.at(t)] = c;
        derived.add(std::move(r));
      }
    }
    CasimirResult res;
    res.weight = w;
    for (const auto& v : kernel) {
      if (!derived.add(v)) continue;
      JetPoly rep;
      for (const auto& [i, c] : v) rep.add(basis[i], c);
      res.classes.push_back(std::move(rep));
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace chiral
