#include "chiral/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chiral/engine.hpp"
#include "chiral/errors.hpp"

namespace chiral {

using Json = nlohmann::ordered_json;

namespace {

class ElementParser {
 public:
  ElementParser(const Presentation& p, const std::string& s, Engine* eng)
      : p_(p), s_(s), eng_(eng) {}

  Element parse() {
    Element v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in '" + s_ + "'", 1, static_cast<int>(pos_) + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  static bool is_scalar(const Element& e) {
    for (const auto& [m, c] : e.terms())
      if (!m.is_vacuum()) return false;
    return true;
  }
  static Scalar scalar_of(const Element& e) {
    return e.is_zero() ? Scalar(0) : e.terms().begin()->second;
  }

  Element expr() {
    Element v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v += Scalar(-1) * term();
      } else {
        return v;
      }
    }
  }

  Element term() {
    Element v = unary();
    for (;;) {
      if (eat('*')) {
        const Element w = unary();
        if (is_scalar(v)) {
          v = scalar_of(v) * w;
        } else if (is_scalar(w)) {
          v = scalar_of(w) * v;
        } else {
          fail("product of two non-scalars; use :a b: for normal products");
        }
      } else if (eat('/')) {
        const Element w = unary();
        if (!is_scalar(w) || w.is_zero()) fail("division by a non-scalar or zero");
        const Scalar d = scalar_of(w);
        if (d.hbar_degree() != 0) fail("division by a multiple of h");
        v = (Scalar(1) / d) * v;
      } else {
        return v;
      }
    }
  }

  Element unary() {
    if (eat('-')) return Scalar(-1) * unary();
    if (eat('+')) return unary();
    return power();
  }

  int integer() {
    skip();
    const bool neg = pos_ < s_.size() && s_[pos_] == '-';
    if (neg) ++pos_;
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    const int v = std::stoi(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  Element power() {
    Element base = atom();
    if (!eat('^')) return base;
    if (!is_scalar(base)) fail("only scalars can be raised to a power");
    const int e = integer();
    const Scalar b = scalar_of(base);
    Scalar r(1);
    for (int i = 0; i < std::abs(e); ++i) r = r * b;
    if (e < 0) {
      if (r.hbar_degree() != 0 || r.is_zero()) fail("negative power of a multiple of h");
      r = Scalar(1) / r;
    }
    return Element::vacuum(r);
  }

  std::string identifier() {
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Element derivative(int n) {
    if (!eat('(')) fail("expected '('");
    const size_t inner = pos_;
    skip();
    const size_t save = pos_;
    const std::string name = identifier();
    if (!name.empty() && p_.find(name) && eat(')')) return p_.gen_element(name, n);
    pos_ = save;
    if (!eng_) {
      pos_ = inner;
      fail("derivative of a composite needs an engine");
    }
    const Element x = expr();
    if (!eat(')')) fail("expected ')'");
    return eng_->derivative(x, n);
  }

  Element normal_product() {
    std::vector<Element> items;
    while (!peek(':')) {
      if (pos_ >= s_.size()) fail("unterminated normal product");
      items.push_back(power());
    }
    ++pos_;
    if (items.empty()) fail("empty normal product");
    if (eng_) {
      Element x = items.back();
      for (size_t i = items.size() - 1; i-- > 0;) x = eng_->normal_product(items[i], x);
      return x;
    }
    Monomial m;
    for (const auto& it : items) {
      if (it.terms().size() != 1 || !(it.terms().begin()->second == Scalar(1)))
        fail("normal product of composites needs an engine");
      const Monomial& f = it.terms().begin()->first;
      m.factors.insert(m.factors.end(), f.factors.begin(), f.factors.end());
      m.lat += f.lat;
    }
    if (!std::is_sorted(m.factors.begin(), m.factors.end()))
      fail("non-canonical normal product needs an engine");
    for (size_t i = 1; i < m.factors.size(); ++i)
      if (m.factors[i] == m.factors[i - 1] && p_.gen(m.factors[i].gen).odd)
        fail("repeated odd factor");
    return Element(m);
  }

  Element atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Element v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == ':') {
      ++pos_;
      return normal_product();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Element::vacuum(Scalar(BigRational(mpz_class(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      const std::string id = identifier();
      if (id == "k") return Element::vacuum(Scalar::k());
      if (id == "h") return Element::vacuum(Scalar::hbar());
      if (id == "D" && (peek('(') || peek('^'))) {
        int n = 1;
        if (eat('^')) n = integer();
        if (n < 0) fail("negative derivative order");
        return derivative(n);
      }
      if (id == "exp" && peek('(')) {
        eat('(');
        const int m = integer();
        if (!eat(')')) fail("expected ')'");
        if (!p_.exponential()) fail("exp(m) needs an exponential generator");
        return Element(Monomial::lattice(m));
      }
      if (auto g = p_.find(id)) return p_.gen_element(*g);
      pos_ = start;
      fail("unknown generator '" + id + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const Presentation& p_;
  const std::string& s_;
  Engine* eng_;
  size_t pos_ = 0;
};

std::string rational_text(const BigRational& q) {
  BigRational c = q;
  c.canonicalize();
  return c.get_str();
}

BigRational rational_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return BigRational(j.get<long>());
  if (j.is_string()) {
    BigRational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad rational in " + where, 0, 0);
    q.canonicalize();
    return q;
  }
  throw ParseError("expected a rational in " + where, 0, 0);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1, col = 1;
    for (size_t i = 0; i < std::min(e.byte > 0 ? e.byte - 1 : 0, text.size()); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
}

template <class T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError("missing '" + std::string(key) + "' in " + where, 0, 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("wrong type for '" + std::string(key) + "' in " + where, 0, 0);
  }
}

Json generators_json(const std::vector<Generator>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) {
    Json r;
    r["name"] = g.name;
    r["parity"] = g.odd ? "odd" : "even";
    r["weight"] = rational_text(g.weight);
    r["ghost"] = g.ghost;
    r["hbar_weight"] = rational_text(g.hbar_weight);
    r["e_charge"] = g.e_charge;
    if (g.exponential) r["exponential"] = true;
    out.push_back(r);
  }
  return out;
}

std::vector<Generator> generators_from(const Json& j) {
  if (!j.contains("generators") || !j["generators"].is_array())
    throw ParseError("missing generator list", 0, 0);
  std::vector<Generator> out;
  for (size_t i = 0; i < j["generators"].size(); ++i) {
    const Json& r = j["generators"][i];
    const std::string where = "generators[" + std::to_string(i) + "]";
    Generator g;
    g.name = field<std::string>(r, "name", where);
    const std::string parity = r.value("parity", "even");
    if (parity != "even" && parity != "odd") throw ParseError("bad parity in " + where, 0, 0);
    g.odd = parity == "odd";
    g.weight = rational_of(r.value("weight", Json(0)), where);
    g.ghost = r.value("ghost", 0);
    g.hbar_weight = rational_of(r.value("hbar_weight", Json(0)), where);
    g.e_charge = r.value("e_charge", 0);
    g.exponential = r.value("exponential", false);
    out.push_back(g);
  }
  return out;
}

Element parse_at(const Presentation& p, const std::string& text, const std::string& where) {
  try {
    return parse_element(p, text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " (" + where + ")", e.line, e.column);
  }
}

Presentation jet_shape(const PoissonPresentation& p) {
  Presentation s = p.shape();
  if (p.exponent) s.generators[*p.exponent].exponential = true;
  return s;
}

Element jet_to_element(const JetPoly& f) {
  Element e;
  for (const auto& [m, c] : f.terms()) e += Element(m, Scalar(c));
  return e;
}

JetPoly element_to_jet(const Element& e, const std::string& where) {
  JetPoly r;
  for (const auto& [m, c] : e.terms()) {
    if (c.hbar_degree() > 0) throw ParseError("h in a Poisson bracket (" + where + ")", 0, 0);
    r.add(m, c.coeff(0));
  }
  return r;
}

}  // namespace

Element parse_element(const Presentation& p, const std::string& text, Engine* eng) {
  return ElementParser(p, text, eng).parse();
}

std::string presentation_to_json(const Presentation& p) {
  Json j;
  j["name"] = p.name;
  j["family"] = to_string(p.family);
  j["generators"] = generators_json(p.generators);
  Json br = Json::array();
  for (const auto& [k, l] : p.brackets) {
    Json e;
    e["pair"] = {p.gen(k.first).name, p.gen(k.second).name};
    Json terms = Json::array();
    for (int n = 0; n <= l.degree(); ++n)
      if (!l.coeff(n).is_zero())
        terms.push_back({{"lambda_power", n}, {"element", format_element(p, l.coeff(n))}});
    e["terms"] = terms;
    br.push_back(e);
  }
  j["brackets"] = br;
  Json rel = Json::array();
  for (const auto& r : p.relations) rel.push_back(format_element(p, r));
  j["relations"] = rel;
  return j.dump(2) + "\n";
}

Presentation presentation_from_json(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw ParseError("presentation must be an object", 1, 1);
  if (j.value("poisson", false)) throw ParseError("Poisson file given where a chiral one is expected", 0, 0);
  Presentation p;
  p.name = field<std::string>(j, "name", "presentation");
  try {
    p.family = family_from_string(j.value("family", std::string("FreeField")));
  } catch (const Error&) {
    throw ParseError("unknown family", 0, 0);
  }
  for (auto& g : generators_from(j)) {
    if (p.find(g.name)) throw ParseError("duplicate generator '" + g.name + "'", 0, 0);
    if (g.name == "k" || g.name == "h" || g.name == "D" || g.name == "exp")
      throw ParseError("reserved generator name '" + g.name + "'", 0, 0);
    p.add_generator(g);
  }
  if (j.contains("brackets")) {
    for (size_t i = 0; i < j["brackets"].size(); ++i) {
      const Json& e = j["brackets"][i];
      const std::string where = "brackets[" + std::to_string(i) + "]";
      const auto pair = field<std::vector<std::string>>(e, "pair", where);
      if (pair.size() != 2) throw ParseError("pair needs two names in " + where, 0, 0);
      const auto a = p.find(pair[0]), b = p.find(pair[1]);
      if (!a || !b) throw ParseError("unknown generator in " + where, 0, 0);
      LambdaPoly l;
      if (e.contains("terms"))
        for (const auto& t : e["terms"]) {
          const int n = field<int>(t, "lambda_power", where);
          if (n < 0) throw ParseError("negative lambda power in " + where, 0, 0);
          l.add(n, parse_at(p, field<std::string>(t, "element", where), where));
        }
      p.set_bracket(*a, *b, l);
    }
  }
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) p.relations.push_back(parse_at(p, r.get<std::string>(), "relations"));
  return p;
}

std::string poisson_to_json(const PoissonPresentation& p) {
  const Presentation shape = jet_shape(p);
  Json j;
  j["name"] = p.name;
  j["poisson"] = true;
  j["generators"] = generators_json(p.generators);
  if (p.exponent) j["exponent"] = p.generators[*p.exponent].name;
  Json br = Json::array();
  for (const auto& [k, l] : p.brackets) {
    Json e;
    e["pair"] = {p.generators[k.first].name, p.generators[k.second].name};
    Json terms = Json::array();
    for (size_t n = 0; n < l.size(); ++n)
      if (!l[n].is_zero())
        terms.push_back({{"lambda_power", n}, {"element", format_element(shape, jet_to_element(l[n]))}});
    e["terms"] = terms;
    br.push_back(e);
  }
  j["brackets"] = br;
  return j.dump(2) + "\n";
}

PoissonPresentation poisson_from_json(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.value("poisson", false))
    throw ParseError("not a Poisson presentation file", 1, 1);
  PoissonPresentation p;
  p.name = field<std::string>(j, "name", "presentation");
  p.generators = generators_from(j);
  for (auto& g : p.generators) g.exponential = false;
  if (j.contains("exponent")) p.exponent = p.index(j["exponent"].get<std::string>());
  const Presentation shape = jet_shape(p);
  if (j.contains("brackets"))
    for (size_t i = 0; i < j["brackets"].size(); ++i) {
      const Json& e = j["brackets"][i];
      const std::string where = "brackets[" + std::to_string(i) + "]";
      const auto pair = field<std::vector<std::string>>(e, "pair", where);
      if (pair.size() != 2) throw ParseError("pair needs two names in " + where, 0, 0);
      const auto a = shape.find(pair[0]), b = shape.find(pair[1]);
      if (!a || !b) throw ParseError("unknown generator in " + where, 0, 0);
      JetLambda l;
      for (const auto& t : e.value("terms", Json::array())) {
        const int n = field<int>(t, "lambda_power", where);
        if (n < 0) throw ParseError("negative lambda power in " + where, 0, 0);
        lambda_add(l, n, element_to_jet(parse_at(shape, field<std::string>(t, "element", where), where), where));
      }
      if (!l.empty()) p.brackets[{*a, *b}] = l;
    }
  return p;
}

bool is_poisson_file(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    return j.is_object() && j.value("poisson", false);
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string solution_to_json(const EmbeddingSolution& s) {
  Json j;
  j["problem"] = s.problem.label;
  j["lattice_normalization"] = "D e^m kept as a basis dressing";
  Json images = Json::object();
  for (size_t i = 0; i < s.images.size(); ++i)
    images[s.problem.source.gen(static_cast<int>(i)).name] = format_element(s.problem.target, s.images[i]);
  j["images"] = images;
  return j.dump(2) + "\n";
}

std::vector<Element> solution_images_from_json(const EmbeddingProblem& p, const std::string& text) {
  const Json j = parse_json(text);
  if (!j.contains("images")) throw ParseError("missing images", 0, 0);
  std::vector<Element> out;
  for (const auto& g : p.source.generators) {
    if (!j["images"].contains(g.name)) throw ParseError("missing image of " + g.name, 0, 0);
    out.push_back(parse_at(p.target, j["images"][g.name].get<std::string>(), "image of " + g.name));
  }
  return out;
}

}  // namespace chiral
