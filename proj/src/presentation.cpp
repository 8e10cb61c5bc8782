#include "chiral/presentation.hpp"

#include <sstream>

namespace chiral {

std::string to_string(Family f) {
  switch (f) {
    case Family::FreeField: return "free-field";
    case Family::Affine: return "affine";
    case Family::VirasoroLike: return "virasoro-like";
    case Family::LatticeLocalized: return "lattice-localized";
    case Family::Tensor: return "tensor";
    case Family::Quotient: return "quotient";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::FreeField, Family::Affine, Family::VirasoroLike,
                   Family::LatticeLocalized, Family::Tensor, Family::Quotient})
    if (to_string(f) == s) return f;
  throw Error("unknown presentation family '" + s + "'");
}

int Presentation::add_generator(Generator g) {
  if (find(g.name)) throw Error("duplicate generator '" + g.name + "'");
  generators.push_back(std::move(g));
  return static_cast<int>(generators.size()) - 1;
}

std::optional<int> Presentation::find(const std::string& n) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == n) return static_cast<int>(i);
  return std::nullopt;
}

int Presentation::index(const std::string& n) const {
  if (auto i = find(n)) return *i;
  throw Error("unknown generator '" + n + "' in presentation " + name);
}

std::optional<int> Presentation::exponential() const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i].exponential) return static_cast<int>(i);
  return std::nullopt;
}

const LambdaPoly& Presentation::bracket(int a, int b) const {
  static const LambdaPoly zero;
  auto it = brackets.find({a, b});
  return it == brackets.end() ? zero : it->second;
}

void Presentation::set_bracket(int a, int b, LambdaPoly p) {
  if (p.is_zero()) {
    brackets.erase({a, b});
  } else {
    brackets[{a, b}] = std::move(p);
  }
}

Element Presentation::gen_element(int i, int d) const {
  const Generator& g = gen(i);
  if (g.exponential && d == 0) return Element(Monomial::lattice(1));
  return Element(Monomial::single(i, d));
}

bool Presentation::has_weight_zero_generator() const {
  for (const auto& g : generators)
    if (g.weight == 0) return true;
  return false;
}

Grade grade_of(const Presentation& p, const Monomial& m) {
  Grade g;
  for (const auto& f : m.factors) {
    const Generator& gen = p.gen(f.gen);
    g.weight += gen.weight + f.d;
    g.ghost += gen.ghost;
    g.e_charge += gen.e_charge;
    g.hbar_weight += gen.hbar_weight;
  }
  if (m.lat != 0) {
    const Generator& e = p.gen(*p.exponential());
    g.weight += e.weight * m.lat;
    g.ghost += e.ghost * m.lat;
    g.e_charge += e.e_charge * m.lat;
    g.hbar_weight += e.hbar_weight * m.lat;
  }
  return g;
}

bool parity_of(const Presentation& p, const Monomial& m) {
  bool odd = false;
  for (const auto& f : m.factors) odd ^= p.gen(f.gen).odd;
  return odd;
}

int parity_sign(bool a, bool b) { return (a && b) ? -1 : 1; }

Element embed_element(const Element& e, int offset) {
  Element r;
  for (const auto& [m, c] : e.terms()) {
    Monomial mm = m;
    for (auto& f : mm.factors) f.gen += offset;
    r.add(mm, c);
  }
  return r;
}

Presentation tensor(const Presentation& a, const Presentation& b, const std::string& suffix) {
  if (a.exponential() && b.exponential())
    throw Error("tensor product with two lattice exponentials is not supported");
  Presentation t;
  t.name = a.name + " (x) " + b.name;
  t.family = Family::Tensor;
  t.generators = a.generators;
  const int off = static_cast<int>(a.size());
  for (Generator g : b.generators) {
    while (t.find(g.name)) g.name += suffix;
    t.generators.push_back(g);
  }
  t.brackets = a.brackets;
  for (const auto& [key, poly] : b.brackets) {
    t.brackets[{key.first + off, key.second + off}] =
        poly.map_elements([&](const Element& e) { return embed_element(e, off); });
  }
  for (const auto& r : a.relations) t.relations.push_back(r);
  for (const auto& r : b.relations) t.relations.push_back(embed_element(r, off));
  return t;
}

std::string format_monomial(const Presentation& p, const Monomial& m) {
  std::vector<std::string> parts;
  for (const auto& f : m.factors) {
    const std::string& n = p.gen(f.gen).name;
    if (f.d == 0) {
      parts.push_back(n);
    } else if (f.d == 1) {
      parts.push_back("D(" + n + ")");
    } else {
      parts.push_back("D^" + std::to_string(f.d) + "(" + n + ")");
    }
  }
  if (m.lat != 0) parts.push_back("exp(" + std::to_string(m.lat) + ")");
  if (parts.empty()) return "1";
  if (parts.size() == 1) return parts[0];
  std::string s = ":";
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
  return s + ":";
}

std::string format_element(const Presentation& p, const Element& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    std::string cs = c.str();
    const std::string ms = format_monomial(p, m);
    bool neg = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
      neg = true;
      cs = cs.substr(1);
    }
    if (!first) os << (neg ? " - " : " + ");
    if (first && neg) os << "-";
    first = false;
    const bool simple = cs.find_first_of("+- ") == std::string::npos;
    if (m.is_vacuum()) {
      os << (simple ? cs : "(" + cs + ")");
    } else if (cs == "1") {
      os << ms;
    } else {
      os << (simple ? cs : "(" + cs + ")") << "*" << ms;
    }
  }
  return os.str();
}

std::string format_lambda(const Presentation& p, const LambdaPoly& l) {
  if (l.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j <= l.degree(); ++j) {
    if (l.coeff(j).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << "(" << format_element(p, l.coeff(j)) << ")";
    } else {
      os << "lambda" << (j > 1 ? "^" + std::to_string(j) : "") << "*("
         << format_element(p, l.coeff(j)) << ")";
    }
  }
  return os.str();
}

}  // namespace chiral
