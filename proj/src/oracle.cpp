#include "chiral/oracle.hpp"

#include <algorithm>

namespace chiral {

namespace {

// Largest integer i with i <= q; -1 when q < 0.
long floor_of(const BigRational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

BigRational falling(long p, int d) {
  BigRational r = 1;
  for (int i = 0; i < d; ++i) r *= BigRational(p - i);
  return r;
}

template <class Map>
void accumulate(Map& into, const Map& from, const Scalar& c = Scalar(1)) {
  for (const auto& [k, v] : from) {
    auto [it, fresh] = into.try_emplace(k, c * v);
    if (!fresh) it->second += c * v;
    if (it->second.is_zero()) into.erase(it);
  }
}

template <class Map>
Map scaled(const Map& m, const Scalar& c) {
  Map r;
  if (c.is_zero()) return r;
  for (const auto& [k, v] : m) r.emplace(k, c * v);
  return r;
}

}  // namespace

// ------------------------------------------------------------ ModeOracle

ModeOracle::ModeOracle(Presentation p, std::optional<std::vector<BigRational>> weights)
    : p_(std::move(p)) {
  if (p_.family != Family::FreeField && p_.family != Family::Affine &&
      p_.family != Family::Tensor)
    throw OracleUnsupported(to_string(p_.family));
  for (const auto& [key, poly] : p_.brackets)
    for (const auto& c : poly.coeffs())
      for (const auto& [m, s] : c.terms())
        if (m.factors.size() > 1 || m.lat != 0)
          throw OracleUnsupported(to_string(p_.family) + " with nonlinear brackets");
  if (p_.exponential()) throw OracleUnsupported(to_string(p_.family) + " with exponentials");
  if (weights) {
    wt_ = *weights;
  } else {
    for (const auto& g : p_.generators) wt_.push_back(g.weight);
  }
  for (const auto& w : wt_)
    if (w < 0) throw OracleUnsupported("negative weights");
}

BigRational ModeOracle::weight_of(const ModeWord& w) const {
  BigRational r = 0;
  for (const auto& [g, n] : w) r += wt_[g] - n - 1;
  return r;
}

BigRational ModeOracle::weight_of(const Monomial& m) const {
  BigRational r = 0;
  for (const auto& f : m.factors) r += wt_[f.gen] + f.d;
  return r;
}

State ModeOracle::state_of(const Element& e) const {
  State s;
  for (const auto& [m, c] : e.terms()) {
    if (m.lat != 0) throw OracleUnsupported("lattice exponentials");
    ModeWord w;
    BigRational f = 1;
    for (const auto& fac : m.factors) {
      w.emplace_back(fac.gen, -1 - fac.d);
      f *= factorial(fac.d);
    }
    accumulate(s, State{{w, c * Scalar(f)}});
  }
  return s;
}

Element ModeOracle::element_of(const State& s) const {
  Element e;
  for (const auto& [w, c] : s) {
    Monomial m;
    BigRational f = 1;
    for (const auto& [g, n] : w) {
      m.factors.push_back(Factor{g, -1 - n});
      f /= factorial(-1 - n);
    }
    e.add(m, c * Scalar(f));
  }
  return e;
}

State ModeOracle::apply_gen(int g, int n, const State& s) {
  State r;
  for (const auto& [w, c] : s) accumulate(r, apply_gen(g, n, w), c);
  return r;
}

State ModeOracle::apply_gen(int g, int n, const ModeWord& w) {
  if (w.empty()) {
    if (n >= 0) return {};
    return State{{ModeWord{{g, n}}, Scalar(1)}};
  }
  auto key = std::make_tuple(g, n, w);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const auto [g1, n1] = w.front();
  const ModeWord rest(w.begin() + 1, w.end());
  const bool odd = p_.gen(g).odd;
  const std::pair<int, int> me{g, n};
  State r;
  if (n < 0 && (me < w.front() || (me == w.front() && !odd))) {
    ModeWord nw = w;
    nw.insert(nw.begin(), me);
    r.emplace(std::move(nw), Scalar(1));
  } else if (n < 0 && me == w.front()) {
    // g_n g_n = 1/2 [g_n, g_n] for odd g
    r = scaled(apply_commutator(g, n, g, n, State{{rest, Scalar(1)}}), Scalar(BigRational(1, 2)));
  } else {
    const int sign = parity_sign(odd, p_.gen(g1).odd);
    r = scaled(apply_gen(g1, n1, apply_gen(g, n, rest)), Scalar(sign));
    accumulate(r, apply_commutator(g, n, g1, n1, State{{rest, Scalar(1)}}));
  }
  cache_.emplace(std::move(key), r);
  return r;
}

State ModeOracle::apply_commutator(int g, int n, int h, int m, const State& s) {
  // [g_(n), h_(m)] = sum_j C(n,j) (g_(j) h)_(n+m-j)
  State r;
  const LambdaPoly& br = p_.bracket(g, h);
  for (int j = 0; j <= br.degree(); ++j) {
    const Element prod = br.product(j);
    if (prod.is_zero()) continue;
    const Scalar cnj(gbinomial(n, j));
    for (const auto& [mono, c] : prod.terms()) {
      const int q = n + m - j;
      if (mono.is_vacuum()) {
        if (q == -1) accumulate(r, s, cnj * c);
      } else {
        const Factor& f = mono.factors.front();
        accumulate(r, apply_dressed(f.gen, f.d, q, s), cnj * c);
      }
    }
  }
  return r;
}

State ModeOracle::apply_dressed(int g, int d, int p, const State& s) {
  const BigRational f = falling(p, d) * (d % 2 == 0 ? 1 : -1);
  if (f == 0) return {};
  return scaled(apply_gen(g, p - d, s), Scalar(f));
}

State ModeOracle::apply_monomial(const Monomial& u, int k, const State& s) {
  if (u.lat != 0) throw OracleUnsupported("lattice exponentials");
  if (u.factors.empty()) return k == -1 ? s : State{};
  const Factor& f = u.factors.front();
  if (u.factors.size() == 1) return apply_dressed(f.gen, f.d, k, s);

  // (f_(-1) R)_(k) = sum_i f_(-1-i) R_(k+i) + p(f,R) R_(k-1-i) f_(i)
  Monomial rm;
  rm.factors.assign(u.factors.begin() + 1, u.factors.end());
  const BigRational wf = wt_[f.gen] + f.d;
  const BigRational wr = weight_of(rm);
  bool rodd = false;
  for (const auto& x : rm.factors) rodd ^= p_.gen(x.gen).odd;
  const int sign = parity_sign(p_.gen(f.gen).odd, rodd);
  State r;
  for (const auto& [w, c] : s) {
    const State one{{w, c}};
    const BigRational W = weight_of(w);
    const long top1 = floor_of(W + wr - k - 1);
    for (long i = 0; i <= top1; ++i)
      accumulate(r, apply_dressed(f.gen, f.d, static_cast<int>(-1 - i),
                                  apply_monomial(rm, static_cast<int>(k + i), one)));
    const long top2 = floor_of(W + wf - 1);
    for (long i = 0; i <= top2; ++i)
      accumulate(r,
                 apply_monomial(rm, static_cast<int>(k - 1 - i),
                                apply_dressed(f.gen, f.d, static_cast<int>(i), one)),
                 Scalar(sign));
  }
  return r;
}

State ModeOracle::apply(const Element& a, int n, const State& s) {
  State r;
  for (const auto& [m, c] : a.terms()) accumulate(r, apply_monomial(m, n, s), c);
  return r;
}

Element ModeOracle::product(const Element& a, int n, const Element& b) {
  return element_of(apply(a, n, state_of(b)));
}

// ---------------------------------------------------------- LatticeOracle

LatticeOracle::LatticeOracle(Presentation p) : p_(std::move(p)) {
  if (p_.family != Family::LatticeLocalized) throw OracleUnsupported(to_string(p_.family));
  if (p_.size() != 2 || !p_.exponential())
    throw OracleUnsupported("lattice-localized with beta-gamma pairs");
  e_idx_ = *p_.exponential();
  p_idx_ = 1 - e_idx_;
}

BigRational LatticeOracle::weight_of(const Monomial& m) const {
  BigRational r = 0;
  for (const auto& f : m.factors) r += p_.gen(f.gen).weight + f.d;
  return r;
}

namespace {

int fock_weight(const LatticeOracle::FockKey& k) {
  int w = 0;
  for (int n : k.c_modes) w += n;
  for (int n : k.d_modes) w += n;
  return w;
}

void insert_sorted(std::vector<int>& v, int n) { v.insert(std::upper_bound(v.begin(), v.end(), n), n); }

// Removes one copy of n, returning its multiplicity before removal.
int remove_one(std::vector<int>& v, int n) {
  const auto [lo, hi] = std::equal_range(v.begin(), v.end(), n);
  const int count = static_cast<int>(hi - lo);
  if (count > 0) v.erase(lo);
  return count;
}

// All ways of writing `total` as sum n * k_n with n >= 1, as lists of parts.
void partitions(int total, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (int n = std::min(total, max_part); n >= 1; --n) {
    cur.push_back(n);
    partitions(total - n, n, cur, out);
    cur.pop_back();
  }
}

// Coefficient attached to a partition in exp(sum_n x_n / n) with x_n scaled by m:
// prod_n (m/n)^{k_n} / k_n!.
BigRational exp_coeff(const std::vector<int>& parts, long m) {
  BigRational r = 1;
  std::map<int, int> mult;
  for (int n : parts) ++mult[n];
  for (const auto& [n, kn] : mult) {
    for (int i = 0; i < kn; ++i) r *= BigRational(m, n);
    r /= factorial(kn);
  }
  return r;
}

}  // namespace

LatticeOracle::Fock LatticeOracle::apply_c(int n, const Fock& s) {
  Fock r;
  if (n == 0) return r;
  for (const auto& [k, c] : s) {
    FockKey nk = k;
    if (n < 0) {
      insert_sorted(nk.c_modes, -n);
      accumulate(r, Fock{{nk, c}});
    } else {
      const int cnt = remove_one(nk.d_modes, n);
      if (cnt) accumulate(r, Fock{{nk, c * Scalar(n * cnt)}});
    }
  }
  return r;
}

LatticeOracle::Fock LatticeOracle::apply_d(int n, const Fock& s) {
  Fock r;
  for (const auto& [k, c] : s) {
    FockKey nk = k;
    if (n < 0) {
      insert_sorted(nk.d_modes, -n);
      accumulate(r, Fock{{nk, c}});
    } else if (n == 0) {
      if (k.charge) accumulate(r, Fock{{nk, c * Scalar(k.charge)}});
    } else {
      const int cnt = remove_one(nk.c_modes, n);
      if (cnt) accumulate(r, Fock{{nk, c * Scalar(n * cnt)}});
    }
  }
  return r;
}

LatticeOracle::Fock LatticeOracle::apply_exp(int m, int k, const Fock& s) {
  // e^{mc}(z) = S^m exp(m sum c_{-n} z^n / n) exp(-m sum c_n z^{-n} / n)
  Fock r;
  for (const auto& [key, c] : s) {
    const int W = fock_weight(key);
    for (int b = 0; b <= W; ++b) {
      const int a = b - k - 1;
      if (a < 0) continue;
      std::vector<std::vector<int>> ann, cre;
      std::vector<int> cur;
      partitions(b, b, cur, ann);
      partitions(a, a, cur, cre);
      for (const auto& pa : ann) {
        Fock st{{key, c * Scalar(exp_coeff(pa, -m))}};
        for (int n : pa) st = apply_c(n, st);
        if (st.empty()) continue;
        for (const auto& pc : cre) {
          Fock t = scaled(st, Scalar(exp_coeff(pc, m)));
          for (int n : pc) t = apply_c(-n, t);
          Fock shifted;
          for (const auto& [kk, v] : t) {
            FockKey nk = kk;
            nk.charge += m;
            shifted.emplace(std::move(nk), v);
          }
          accumulate(r, shifted);
        }
      }
    }
  }
  return r;
}

LatticeOracle::Fock LatticeOracle::apply_dressed(const Factor& f, int k, const Fock& s) {
  const BigRational sc = falling(k, f.d) * (f.d % 2 == 0 ? 1 : -1);
  if (sc == 0) return {};
  if (f.gen == p_idx_) return scaled(apply_d(k - f.d, s), Scalar(sc) * Scalar::hbar());
  return scaled(apply_exp(1, k - f.d, s), Scalar(sc));
}

LatticeOracle::Fock LatticeOracle::apply_monomial(const Monomial& u, int k, const Fock& s) {
  if (u.factors.empty()) {
    if (u.lat == 0) return k == -1 ? s : Fock{};
    return apply_exp(u.lat, k, s);
  }
  const Factor& f = u.factors.front();
  if (u.factors.size() == 1 && u.lat == 0) return apply_dressed(f, k, s);
  Monomial rm;
  rm.factors.assign(u.factors.begin() + 1, u.factors.end());
  rm.lat = u.lat;
  const BigRational wf = p_.gen(f.gen).weight + f.d;
  const BigRational wr = weight_of(rm);
  Fock r;
  for (const auto& [key, c] : s) {
    const Fock one{{key, c}};
    const BigRational W = fock_weight(key);
    const long top1 = floor_of(W + wr - k - 1);
    for (long i = 0; i <= top1; ++i)
      accumulate(r, apply_dressed(f, static_cast<int>(-1 - i),
                                  apply_monomial(rm, static_cast<int>(k + i), one)));
    const long top2 = floor_of(W + wf - 1);
    for (long i = 0; i <= top2; ++i)
      accumulate(r, apply_monomial(rm, static_cast<int>(k - 1 - i),
                                   apply_dressed(f, static_cast<int>(i), one)));
  }
  return r;
}

LatticeOracle::Fock LatticeOracle::fock_of(const Element& e) {
  const Fock vac{{FockKey{}, Scalar(1)}};
  Fock r;
  for (const auto& [m, c] : e.terms()) accumulate(r, apply_monomial(m, -1, vac), c);
  return r;
}

LatticeOracle::Fock LatticeOracle::product(const Element& a, int n, const Element& b) {
  const Fock sb = fock_of(b);
  Fock r;
  for (const auto& [m, c] : a.terms()) accumulate(r, apply_monomial(m, n, sb), c);
  return r;
}

}  // namespace chiral

#include <random>

#include "chiral/basis.hpp"
#include "chiral/engine.hpp"

namespace chiral {

EquivalenceReport engine_oracle_equivalence(const Presentation& p, size_t count, unsigned seed,
                                            int max_weight) {
  Engine eng(p);
  ModeOracle oracle(p);
  // basis monomials by weight, length <= 3
  std::vector<std::vector<Monomial>> pool(max_weight + 1);
  for (int w = 0; w <= max_weight; ++w) {
    BasisQuery q;
    q.weight = w;
    q.length_cutoff = 3;
    pool[w] = enumerate_basis(p, q);
  }
  std::mt19937 rng(seed);
  const auto pick = [&](int w) -> Element {
    const auto& v = pool[w];
    Element e;
    const int terms = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < terms && !v.empty(); ++t)
      e.add(v[rng() % v.size()], Scalar(static_cast<long>(rng() % 5) - 2));
    return e;
  };
  EquivalenceReport rep;
  while (rep.checked < count) {
    const int wa = static_cast<int>(rng() % (max_weight + 1));
    const int wb = static_cast<int>(rng() % (max_weight - wa + 1));
    const Element a = pick(wa), b = pick(wb);
    const int n = static_cast<int>(rng() % 7) - 3;
    // keep the product weight wa + wb - n - 1 within range
    if (wa + wb - n - 1 > max_weight) continue;
    ++rep.checked;
    const Element e1 = eng.nth_product(a, n, b);
    const Element e2 = oracle.product(a, n, b);
    if (!(e1 == e2)) {
      if (rep.mismatches++ == 0)
        rep.first_mismatch = "(" + format_element(p, a) + ")_(" + std::to_string(n) + ")(" +
                             format_element(p, b) + "): engine " + format_element(p, e1) +
                             ", oracle " + format_element(p, e2);
    }
  }
  return rep;
}

}  // namespace chiral
