#include "chiral/lie.hpp"

#include <algorithm>
#include <sstream>

#include "chiral/errors.hpp"
#include "chiral/linalg.hpp"

namespace chiral {

Mat zero_mat(int n) { return Mat(n, std::vector<BigRational>(n, BigRational(0))); }

Mat unit(int n, int a, int b) {
  Mat m = zero_mat(n);
  m[a][b] = 1;
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat r = zero_mat(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (sgn(a[i][k]) != 0)
        for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat add(const Mat& a, const Mat& b, const BigRational& s) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] += s * b[i][j];
  return r;
}

Mat commutator(const Mat& a, const Mat& b) { return add(mul(a, b), mul(b, a), -1); }

BigRational trace(const Mat& a) {
  BigRational t = 0;
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

PartitionMu PartitionMu::parse(const std::string& text) {
  PartitionMu mu;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad partition '" + text + "'");
    }
    if (pos != item.size() || v <= 0) throw UsageError("bad partition '" + text + "'");
    mu.parts.push_back(v);
    mu.N += v;
  }
  if (mu.parts.empty()) throw UsageError("empty partition");
  if (!std::is_sorted(mu.parts.rbegin(), mu.parts.rend()))
    throw UsageError("partition parts must be weakly decreasing: '" + text + "'");
  return mu;
}

std::string PartitionMu::str() const {
  std::string s = "[";
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + "]";
}

CorootAlpha CorootAlpha::parse(const std::string& text) {
  CorootAlpha a;
  char comma = 0;
  std::stringstream ss(text);
  if (!(ss >> a.i >> comma >> a.j) || comma != ',' || a.i < 1 || a.j <= a.i || !ss.eof())
    throw UsageError("bad coroot '" + text + "', expected i,j with i < j");
  return a;
}

PartitionMu coroot_add(const PartitionMu& mu, const CorootAlpha& a, int n) {
  std::vector<int> p = mu.parts;
  if (static_cast<int>(p.size()) > n || a.j > n)
    throw NotDominant("coroot does not fit " + std::to_string(n) + " parts");
  p.resize(n, 0);
  p[a.i - 1] += 1;
  p[a.j - 1] -= 1;
  for (int i = 0; i + 1 < n; ++i)
    if (p[i] < p[i + 1]) throw NotDominant("mu + alpha is not dominant");
  if (p.back() < 0) throw NotDominant("mu + alpha has a negative part");
  PartitionMu r;
  for (int v : p)
    if (v > 0) {
      r.parts.push_back(v);
      r.N += v;
    }
  return r;
}

std::vector<std::pair<int, int>> GoodGrading::positive_units() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (j_of(a, b) > 0) out.emplace_back(a, b);
  std::stable_sort(out.begin(), out.end(), [&](const auto& u, const auto& v) {
    return j_of(u.first, u.second) < j_of(v.first, v.second);
  });
  return out;
}

namespace {

struct Box {
  int row, col;
};

std::vector<Box> pyramid(const PartitionMu& mu) {
  std::vector<Box> boxes;
  for (size_t r = 0; r < mu.parts.size(); ++r)
    for (int c = 0; c < mu.parts[r]; ++c) boxes.push_back({static_cast<int>(r), c});
  return boxes;
}

void verify(const GoodGrading& g) {
  const Mat he = commutator(g.h, g.e), hf = commutator(g.h, g.f), ef = commutator(g.e, g.f);
  if (he != add(zero_mat(g.N), g.e, 2) || hf != add(zero_mat(g.N), g.f, -2) || ef != g.h)
    throw Error("sl2 triple relations fail for " + g.mu.str());
  for (int a = 0; a < g.N; ++a)
    for (int b = 0; b < g.N; ++b) {
      const BigRational d = g.x[a] - g.x[b];
      if (d.get_den() != 1 || d.get_num() % 2 != 0)
        throw Error("grading is not even for " + g.mu.str());
      if (sgn(g.e[a][b]) != 0 && g.j_of(a, b) != 1) throw Error("e is not in g_2");
      if (sgn(g.f[a][b]) != 0 && g.j_of(a, b) != -1) throw Error("f is not in g_-2");
    }
}

}  // namespace

GoodGrading grading_from_diagonal(const PartitionMu& mu, const std::vector<BigRational>& x) {
  GoodGrading g;
  g.mu = mu;
  g.N = mu.N;
  g.e = g.h = g.f = zero_mat(g.N);
  const auto boxes = pyramid(mu);
  for (int i = 0; i < g.N; ++i) {
    const Box& b = boxes[i];
    const int len = mu.parts[b.row];
    g.h[i][i] = len - 1 - 2 * b.col;
    if (b.col + 1 < len) {
      g.f[i + 1][i] = 1;
      g.e[i][i + 1] = (b.col + 1) * (len - 1 - b.col);
    }
  }
  g.x = x;
  verify(g);
  return g;
}

GoodGrading build_nilpotent(const PartitionMu& mu) {
  const auto boxes = pyramid(mu);
  std::vector<BigRational> x;
  BigRational mean = 0;
  for (const auto& b : boxes) {
    x.emplace_back(-2 * b.col);
    mean += x.back();
  }
  mean /= mu.N;
  for (auto& v : x) v -= mean;
  return grading_from_diagonal(mu, x);
}

BigRational chi(const GoodGrading& g, int a, int b) { return g.f[b][a]; }

std::vector<SliceCoordinate> slice_coordinates(const GoodGrading& g) {
  const int n = g.N;
  // group matrix units by grade and solve ad_e(v) = 0 inside each grade
  std::map<BigRational, std::vector<std::pair<int, int>>> by_j;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) by_j[g.j_of(a, b)].emplace_back(a, b);
  std::vector<SliceCoordinate> out;
  for (const auto& [j, units] : by_j) {
    std::map<int, SparseRow<BigRational>> eqs;  // output entry -> row over units
    for (size_t u = 0; u < units.size(); ++u) {
      const Mat c = commutator(g.e, unit(n, units[u].first, units[u].second));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (sgn(c[a][b]) != 0) eqs[a * n + b][static_cast<int>(u)] = c[a][b];
    }
    std::vector<SparseRow<BigRational>> rows;
    for (auto& [k, r] : eqs) rows.push_back(r);
    for (const auto& v : nullspace(rows, static_cast<int>(units.size()))) {
      Mat m = zero_mat(n);
      for (const auto& [u, c] : v) m[units[u].first][units[u].second] = c;
      out.push_back({m, j, 1 + j});
    }
  }
  return out;
}

std::vector<size_t> slice_character(const std::vector<BigRational>& weights, int max_weight) {
  std::vector<size_t> c(max_weight + 1, 0);
  c[0] = 1;
  for (const auto& w : weights) {
    if (w.get_den() != 1 || w <= 0) throw Error("slice character needs positive integral weights");
    for (long part = w.get_num().get_si(); part <= max_weight; ++part)
      for (int q = static_cast<int>(part); q <= max_weight; ++q) c[q] += c[q - part];
  }
  return c;
}

}  // namespace chiral
