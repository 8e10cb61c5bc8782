#include "chiral/linalg.hpp"

namespace chiral {

size_t bareiss_rank(const std::vector<SparseRow<RatFuncK>>& rows, int ncols) {
  std::vector<std::vector<PolyQ>> m;
  for (const auto& r : rows) {
    if (r.empty()) continue;
    PolyQ l(1);
    for (const auto& [c, v] : r) l = PolyQ::exact_div(l * v.den(), PolyQ::gcd(l, v.den()));
    std::vector<PolyQ> row(ncols);
    for (const auto& [c, v] : r) row[c] = PolyQ::exact_div(v.num() * l, v.den());
    m.push_back(std::move(row));
  }
  const size_t nr = m.size();
  size_t rank = 0;
  PolyQ prev(1);
  for (int col = 0; col < ncols && rank < nr; ++col) {
    size_t piv = rank;
    while (piv < nr && m[piv][col].is_zero()) ++piv;
    if (piv == nr) continue;
    std::swap(m[piv], m[rank]);
    for (size_t i = rank + 1; i < nr; ++i) {
      for (int j = col + 1; j < ncols; ++j) {
        PolyQ v = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
        m[i][j] = v.is_zero() ? v : PolyQ::exact_div(v, prev);
      }
      m[i][col] = PolyQ();
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace chiral
