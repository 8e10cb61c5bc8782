#pragma once

// Exact linear algebra over Q and Q(k) on sparse rows.

#include <map>
#include <vector>

#include "chiral/scalars.hpp"

namespace chiral {

inline bool is_zero(const BigRational& x) { return sgn(x) == 0; }
inline bool is_zero(const RatFuncK& x) { return x.is_zero(); }

template <class F>
using SparseRow = std::map<int, F>;

/// Incrementally maintained reduced row echelon basis.
template <class F>
class Echelon {
 public:
  /// Reduces `r` against the basis in place.
  void reduce(SparseRow<F>& r) const {
    for (auto it = r.begin(); it != r.end();) {
      auto p = by_pivot_.find(it->first);
      if (p == by_pivot_.end()) {
        ++it;
        continue;
      }
      const F c = it->second;
      const int col = it->first;
      axpy(r, rows_[p->second], -c);
      it = r.upper_bound(col);
    }
  }

  /// Adds a row; returns false when it was dependent.
  bool add(SparseRow<F> r) {
    reduce(r);
    if (r.empty()) return false;
    const int piv = r.begin()->first;
    const F inv = F(1) / r.begin()->second;
    for (auto& [c, v] : r) v = v * inv;
    for (auto& row : rows_) {
      auto it = row.find(piv);
      if (it != row.end()) {
        const F c = it->second;
        axpy(row, r, -c);
      }
    }
    by_pivot_[piv] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
  }

  size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow<F>>& rows() const { return rows_; }
  bool has_pivot(int col) const { return by_pivot_.count(col) > 0; }
  const SparseRow<F>& row_for_pivot(int col) const { return rows_[by_pivot_.at(col)]; }
  std::vector<int> pivots() const {
    std::vector<int> p;
    for (const auto& [c, i] : by_pivot_) p.push_back(c);
    return p;
  }

  static void axpy(SparseRow<F>& y, const SparseRow<F>& x, const F& a) {
    for (const auto& [c, v] : x) {
      auto [it, fresh] = y.try_emplace(c, a * v);
      if (!fresh) it->second = it->second + a * v;
      if (is_zero(it->second)) y.erase(it);
    }
  }

 private:
  std::vector<SparseRow<F>> rows_;
  std::map<int, size_t> by_pivot_;
};

template <class F>
size_t rank_of(const std::vector<SparseRow<F>>& rows) {
  Echelon<F> e;
  for (const auto& r : rows) e.add(r);
  return e.rank();
}

/// Basis of {x : sum_j rows[i][j] x_j = 0 for all i} in ncols unknowns.
template <class F>
std::vector<SparseRow<F>> nullspace(const std::vector<SparseRow<F>>& rows, int ncols) {
  Echelon<F> e;
  for (const auto& r : rows) e.add(r);
  std::vector<SparseRow<F>> out;
  for (int free = 0; free < ncols; ++free) {
    if (e.has_pivot(free)) continue;
    SparseRow<F> v;
    v[free] = F(1);
    for (int piv : e.pivots()) {
      const auto& row = e.row_for_pivot(piv);
      auto it = row.find(free);
      if (it != row.end()) v[piv] = -it->second;
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Solves sum_j A[i][j] x_j = b_i; returns false when inconsistent. Free
/// unknowns are set to zero.
template <class F>
bool solve_linear(const std::vector<SparseRow<F>>& a, const std::vector<F>& b, int ncols,
                  std::vector<F>& x) {
  Echelon<F> e;
  for (size_t i = 0; i < a.size(); ++i) {
    SparseRow<F> r = a[i];
    if (!is_zero(b[i])) r[ncols] = b[i];
    e.add(std::move(r));
  }
  if (e.has_pivot(ncols)) return false;
  x.assign(ncols, F(0));
  for (int piv : e.pivots()) {
    const auto& row = e.row_for_pivot(piv);
    auto it = row.find(ncols);
    if (it != row.end()) x[piv] = it->second;
  }
  return true;
}

/// Generic rank over Q(k) by fraction-free (Bareiss) elimination on
/// polynomial entries; denominators are cleared row by row first.
size_t bareiss_rank(const std::vector<SparseRow<RatFuncK>>& rows, int ncols);

}  // namespace chiral
