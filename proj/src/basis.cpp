#include "chiral/basis.hpp"

#include <algorithm>

namespace chiral {

namespace {

struct Slot {
  Factor f;
  BigRational weight;
  bool odd;
  int ghost;
  int charge;
};

struct Search {
  const std::vector<Slot>& slots;
  const BasisQuery& q;
  std::vector<Monomial>& out;
  BigRational wmin;
  bool lattice = false;
  std::vector<Factor> cur;

  void run(size_t i, const BigRational& w, int ghost, int charge) {
    if (w == q.weight && (!q.ghost || ghost == *q.ghost)) {
      Monomial m;
      m.factors = cur;
      if (lattice) {
        m.lat = *q.e_charge - charge;
        out.push_back(m);
      } else if (!q.e_charge || charge == *q.e_charge) {
        out.push_back(m);
      }
    }
    if (q.length_cutoff && static_cast<int>(cur.size()) >= *q.length_cutoff) return;
    for (size_t j = i; j < slots.size(); ++j) {
      const Slot& s = slots[j];
      const BigRational nw = w + s.weight;
      // later factors can lower the weight by at most wmin each
      const int left = q.length_cutoff ? *q.length_cutoff - static_cast<int>(cur.size()) - 1 : 0;
      if (nw + wmin * left > q.weight) continue;
      cur.push_back(s.f);
      run(s.odd ? j + 1 : j, nw, ghost + s.ghost, charge + s.charge);
      cur.pop_back();
    }
  }
};

}  // namespace

std::vector<Monomial> enumerate_basis(const Presentation& p, const BasisQuery& query) {
  BasisQuery q = query;
  q.weight.canonicalize();
  const auto exp = p.exponential();
  if (exp && !q.e_charge)
    throw InfiniteGradedPiece("an e-charge is required with a lattice exponential");
  BigRational wmin = 0;
  bool nonpositive = false;
  for (const auto& g : p.generators) {
    if (g.exponential) continue;
    if (g.weight <= 0) nonpositive = true;
    wmin = std::min(wmin, g.weight);
  }
  if (nonpositive && !q.length_cutoff)
    throw InfiniteGradedPiece("presentation " + p.name +
                              " has generators of weight <= 0; a length cutoff is required");
  // Largest useful slot weight: target minus the most negative filler.
  BigRational wmax = q.weight;
  if (q.length_cutoff) wmax -= wmin * std::max(0, *q.length_cutoff - 1);

  std::vector<Slot> slots;
  for (size_t i = 0; i < p.size(); ++i) {
    const Generator& g = p.gen(static_cast<int>(i));
    std::vector<Slot> mine;
    for (int d = g.exponential ? 1 : 0; g.weight + d <= wmax; ++d)
      mine.push_back({Factor{static_cast<int>(i), d}, g.weight + d, g.odd, g.ghost, g.e_charge});
    // factor order: descending D-power within a generator
    std::reverse(mine.begin(), mine.end());
    slots.insert(slots.end(), mine.begin(), mine.end());
  }
  std::vector<Monomial> out;
  Search s{slots, q, out, wmin, exp.has_value(), {}};
  BigRational w0 = 0;
  s.run(0, w0, 0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<size_t> graded_character(const Presentation& p, int max_weight,
                                     std::optional<int> length_cutoff) {
  std::vector<size_t> dims;
  for (int w = 0; w <= max_weight; ++w) {
    BasisQuery q;
    q.weight = w;
    q.length_cutoff = length_cutoff;
    if (p.exponential()) q.e_charge = 0;
    dims.push_back(enumerate_basis(p, q).size());
  }
  return dims;
}

}  // namespace chiral
