#include "chiral/polysys.hpp"

#include <algorithm>
#include <sstream>

#include "chiral/errors.hpp"
#include "chiral/linalg.hpp"

namespace chiral {

MPoly MPoly::constant(int nvars, const RatFuncK& c) {
  MPoly p(nvars);
  p.add(Exp(nvars, 0), c);
  return p;
}

MPoly MPoly::var(int nvars, int i, const RatFuncK& c) {
  MPoly p(nvars);
  Exp e(nvars, 0);
  e[i] = 1;
  p.add(e, c);
  return p;
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

RatFuncK MPoly::coeff(const Exp& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? RatFuncK(0) : it->second;
}

RatFuncK MPoly::constant_term() const { return coeff(Exp(n_, 0)); }

void MPoly::add(const Exp& e, const RatFuncK& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.t_) add(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.t_) add(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.n_);
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      MPoly::Exp e(a.n_);
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

MPoly operator*(const RatFuncK& s, const MPoly& p) {
  MPoly r(p.n_);
  for (const auto& [e, c] : p.t_) r.add(e, s * c);
  return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
  const int m = images.empty() ? 0 : images[0].nvars();
  MPoly r(m);
  for (const auto& [e, c] : t_) {
    MPoly term = constant(m, c);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * images[i];
    r += term;
  }
  return r;
}

RatFuncK MPoly::evaluate(const std::vector<RatFuncK>& x) const {
  RatFuncK r(0);
  for (const auto& [e, c] : t_) {
    RatFuncK t = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    r += t;
  }
  return r;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")";
    for (int i = 0; i < n_; ++i)
      if (it->first[i] > 0) os << "*t" << i << (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
  }
  return os.str();
}

namespace {

bool divides(const MPoly::Exp& a, const MPoly::Exp& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

MPoly monic(const MPoly& p) { return p.lead().second.inverse() * p; }

MPoly monomial(int n, const MPoly::Exp& e, const RatFuncK& c) {
  MPoly p(n);
  p.add(e, c);
  return p;
}

// Full reduction of p modulo the basis.
MPoly reduce(MPoly p, const std::vector<MPoly>& basis) {
  MPoly out(p.nvars());
  while (!p.is_zero()) {
    const auto [e, c] = p.lead();
    bool done = false;
    for (const auto& g : basis) {
      const auto& [ge, gc] = g.lead();
      if (!divides(ge, e)) continue;
      MPoly::Exp q(e.size());
      for (size_t i = 0; i < e.size(); ++i) q[i] = e[i] - ge[i];
      p -= monomial(p.nvars(), q, c / gc) * g;
      done = true;
      break;
    }
    if (!done) {
      out.add(e, c);
      p.add(e, -c);
    }
  }
  return out;
}

}  // namespace

std::vector<MPoly> groebner(std::vector<MPoly> gens) {
  std::vector<MPoly> g;
  for (auto& p : gens)
    if (!p.is_zero()) g.push_back(monic(p));
  if (g.empty()) return g;
  const int n = g[0].nvars();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < i; ++j) pairs.push_back({j, i});
  while (!pairs.empty()) {
    const auto [i, j] = pairs.back();
    pairs.pop_back();
    const auto& ei = g[i].lead().first;
    const auto& ej = g[j].lead().first;
    MPoly::Exp l(n), qi(n), qj(n);
    bool coprime = true;
    for (int v = 0; v < n; ++v) {
      l[v] = std::max(ei[v], ej[v]);
      qi[v] = l[v] - ei[v];
      qj[v] = l[v] - ej[v];
      if (ei[v] > 0 && ej[v] > 0) coprime = false;
    }
    if (coprime) continue;
    MPoly s = monomial(n, qi, RatFuncK(1)) * g[i] - monomial(n, qj, RatFuncK(1)) * g[j];
    MPoly r = reduce(s, g);
    if (r.is_zero()) continue;
    g.push_back(monic(r));
    for (size_t k = 0; k + 1 < g.size(); ++k) pairs.push_back({k, g.size() - 1});
  }
  // minimal and interreduced
  std::vector<MPoly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(g[j].lead().first, g[i].lead().first) &&
          (g[j].lead().first != g[i].lead().first || j < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<MPoly> out;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    out.push_back(monic(reduce(minimal[i], others)));
  }
  std::sort(out.begin(), out.end(),
            [](const MPoly& a, const MPoly& b) { return a.lead().first < b.lead().first; });
  return out;
}

namespace {

std::optional<BigRational> rational_sqrt(const BigRational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  return BigRational(sqrt(n), sqrt(d));
}

std::optional<PolyQ> poly_sqrt(const PolyQ& p) {
  if (p.is_zero()) return PolyQ();
  if (p.degree() % 2 != 0) return std::nullopt;
  const int m = p.degree() / 2;
  const auto top = rational_sqrt(p.lead());
  if (!top) return std::nullopt;
  std::vector<BigRational> q(m + 1, BigRational(0));
  q[m] = *top;
  for (int i = 1; i <= m; ++i) {
    BigRational acc = p.coeff(2 * m - i);
    for (int j = 1; j < i; ++j) acc -= q[m - j] * q[m - i + j];
    q[m - i] = acc / (2 * q[m]);
  }
  PolyQ r(q);
  if (!(r * r == p)) return std::nullopt;
  return r;
}

std::optional<RatFuncK> ratfunc_sqrt(const RatFuncK& r) {
  // sqrt(n/d) = sqrt(n d) / d
  const auto s = poly_sqrt(r.num() * r.den());
  if (!s) return std::nullopt;
  return RatFuncK::normalize(*s, r.den());
}

std::string residual_text(const std::vector<MPoly>& r) {
  std::string s;
  for (size_t i = 0; i < r.size() && i < 4; ++i) s += (i ? "; " : "") + r[i].str() + " = 0";
  if (r.size() > 4) s += "; ...";
  return s;
}

// Linear members of the span of `eqs`: eliminate nonlinear monomials first.
std::vector<MPoly> linear_consequences(const std::vector<MPoly>& eqs, int m) {
  std::map<MPoly::Exp, int> col;
  std::vector<MPoly::Exp> exps;
  for (const auto& p : eqs)
    for (const auto& [e, c] : p.terms()) col.emplace(e, 0);
  // nonlinear monomials first (descending degree), then variables, constant last
  std::vector<MPoly::Exp> order;
  for (const auto& [e, i] : col) order.push_back(e);
  const auto deg = [](const MPoly::Exp& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const MPoly::Exp& a, const MPoly::Exp& b) { return deg(a) > deg(b); });
  for (size_t i = 0; i < order.size(); ++i) col[order[i]] = static_cast<int>(i);
  Echelon<RatFuncK> ech;
  for (const auto& p : eqs) {
    SparseRow<RatFuncK> r;
    for (const auto& [e, c] : p.terms()) r[col.at(e)] = c;
    ech.add(std::move(r));
  }
  std::vector<MPoly> out;
  for (const auto& row : ech.rows()) {
    if (deg(order[row.begin()->first]) > 1) continue;
    MPoly q(m);
    for (const auto& [c, v] : row) q.add(order[c], v);
    out.push_back(q);
  }
  return out;
}

struct Branch {
  std::vector<MPoly> images;
  int m;
};

PolySolution solve_rec(const std::vector<MPoly>& eqs, Branch b, int depth) {
  for (int round = 0; round < 1000; ++round) {
    std::vector<MPoly> cur;
    for (const auto& e : eqs) {
      MPoly s = e.substitute(b.images);
      if (s.is_zero()) continue;
      if (s.is_constant()) throw Unsolvable("inconsistent constraint: " + e.str() + " = 0");
      cur.push_back(std::move(s));
    }
    if (cur.empty()) {
      PolySolution sol;
      sol.free_parameters = b.m;
      const std::vector<RatFuncK> zero(b.m, RatFuncK(0));
      for (const auto& im : b.images) sol.values.push_back(im.evaluate(zero));
      return sol;
    }
    std::vector<MPoly> lin = linear_consequences(cur, b.m);
    if (lin.empty()) {
      const auto gb = groebner(cur);
      for (const auto& p : gb) {
        if (p.is_constant()) throw Unsolvable("no solution; residual ideal is (1): " + residual_text(cur));
        if (p.degree() == 1) lin.push_back(p);
      }
      if (lin.empty()) {
        // branch on a univariate quadratic with roots in Q(k)
        for (const auto& p : gb) {
          int var = -1;
          bool uni = p.degree() == 2;
          for (const auto& [e, c] : p.terms())
            for (int v = 0; v < b.m && uni; ++v)
              if (e[v] > 0) {
                if (var >= 0 && var != v) uni = false;
                var = v;
              }
          if (!uni || var < 0) continue;
          MPoly::Exp e0(b.m, 0), e1(b.m, 0), e2(b.m, 0);
          e1[var] = 1;
          e2[var] = 2;
          const RatFuncK A = p.coeff(e2), B = p.coeff(e1), C = p.coeff(e0);
          const auto root = ratfunc_sqrt(B * B - RatFuncK(4) * A * C);
          if (!root) continue;
          std::string last;
          for (const RatFuncK& r : {(-B + *root) / (RatFuncK(2) * A), (-B - *root) / (RatFuncK(2) * A)}) {
            std::vector<MPoly> step;
            for (int v = 0; v < b.m; ++v)
              step.push_back(v == var ? MPoly::constant(b.m, r) : MPoly::var(b.m, v));
            Branch nb = b;
            for (auto& im : nb.images) im = im.substitute(step);
            try {
              return solve_rec(eqs, nb, depth + 1);
            } catch (const Unsolvable& u) {
              last = u.what();
            }
          }
          throw Unsolvable("no branch of " + p.str() + " = 0 is solvable: " + last);
        }
        throw Unsolvable("nonlinear residual ideal: " + residual_text(gb));
      }
    }
    const int m = b.m;
    Echelon<RatFuncK> ech;
    for (const auto& p : lin) {
      SparseRow<RatFuncK> r;
      for (const auto& [e, c] : p.terms()) {
        const auto it = std::find(e.begin(), e.end(), 1);
        if (it == e.end()) r[m] = c;
        else r[static_cast<int>(it - e.begin())] = c;
      }
      ech.add(std::move(r));
    }
    if (ech.has_pivot(m)) throw Unsolvable("inconsistent linear constraints: " + residual_text(lin));
    std::vector<int> free;
    for (int v = 0; v < m; ++v)
      if (!ech.has_pivot(v)) free.push_back(v);
    const int m2 = static_cast<int>(free.size());
    std::vector<MPoly> step(m, MPoly(m2));
    for (int f = 0; f < m2; ++f) step[free[f]] = MPoly::var(m2, f);
    for (int piv : ech.pivots()) {
      MPoly x(m2);
      for (const auto& [col, c] : ech.row_for_pivot(piv)) {
        if (col == piv) continue;
        if (col == m) {
          x += MPoly::constant(m2, -c);
        } else {
          const int f = static_cast<int>(std::find(free.begin(), free.end(), col) - free.begin());
          x += MPoly::var(m2, f, -c);
        }
      }
      step[piv] = x;
    }
    for (auto& im : b.images) im = im.substitute(step);
    b.m = m2;
  }
  throw Unsolvable("staged solve did not terminate");
}

}  // namespace

PolySolution solve_polynomial_system(const std::vector<MPoly>& eqs, int nvars) {
  Branch b{{}, nvars};
  for (int i = 0; i < nvars; ++i) b.images.push_back(MPoly::var(nvars, i));
  return solve_rec(eqs, b, 0);
}

}  // namespace chiral
