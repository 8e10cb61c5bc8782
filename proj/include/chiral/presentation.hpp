#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chiral/element.hpp"

namespace chiral {

enum class Family { FreeField, Affine, VirasoroLike, LatticeLocalized, Tensor, Quotient };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct Generator {
  std::string name;
  bool odd = false;
  BigRational weight = 0;
  int ghost = 0;
  BigRational hbar_weight = 0;
  int e_charge = 0;
  /// Exponential-type generator e^1: its undifferentiated form is absorbed
  /// into the lattice exponent of a monomial; only D-dressings are factors.
  bool exponential = false;
};

/// Strongly generated presentation: generators plus lambda-bracket table.
/// Missing table entries are zero.
struct Presentation {
  std::string name;
  Family family = Family::FreeField;
  std::vector<Generator> generators;
  std::map<std::pair<int, int>, LambdaPoly> brackets;
  std::vector<Element> relations;

  int add_generator(Generator g);
  int index(const std::string& name) const;  // throws when absent
  std::optional<int> find(const std::string& name) const;
  const Generator& gen(int i) const { return generators.at(i); }
  size_t size() const { return generators.size(); }

  /// Index of the exponential generator, if any.
  std::optional<int> exponential() const;

  const LambdaPoly& bracket(int a, int b) const;
  void set_bracket(int a, int b, LambdaPoly p);
  void set_bracket(const std::string& a, const std::string& b, LambdaPoly p) {
    set_bracket(index(a), index(b), std::move(p));
  }

  Element gen_element(int i, int d = 0) const;
  Element gen_element(const std::string& name, int d = 0) const {
    return gen_element(index(name), d);
  }

  bool has_weight_zero_generator() const;
};

/// Gradings of monomials and homogeneous elements.
struct Grade {
  BigRational weight = 0;
  int ghost = 0;
  int e_charge = 0;
  BigRational hbar_weight = 0;
  friend bool operator==(const Grade&, const Grade&) = default;
};

Grade grade_of(const Presentation& p, const Monomial& m);
bool parity_of(const Presentation& p, const Monomial& m);
int parity_sign(bool a, bool b);

/// Tensor product with brackets vanishing across factors. Generator names of
/// the second factor are kept; collisions get the given suffix.
Presentation tensor(const Presentation& a, const Presentation& b, const std::string& suffix = "'");

/// Re-indexes an element of a factor into the tensor product.
Element embed_element(const Element& e, int generator_offset);

std::string format_monomial(const Presentation& p, const Monomial& m);
std::string format_element(const Presentation& p, const Element& e);
std::string format_lambda(const Presentation& p, const LambdaPoly& l);

}  // namespace chiral
