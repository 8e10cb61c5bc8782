#include "chiral/scalars.hpp"

#include <cctype>
#include <sstream>

namespace chiral {

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---------------------------------------------------------------- PolyQ

PolyQ::PolyQ(long c) {
  if (c != 0) c_.emplace_back(c);
}

PolyQ::PolyQ(const BigRational& c) {
  if (c != 0) c_.push_back(c);
}

PolyQ::PolyQ(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyQ PolyQ::k() { return monomial(1, 1); }

PolyQ PolyQ::monomial(const BigRational& c, int degree) {
  PolyQ p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, BigRational(0));
  p.c_[degree] = c;
  return p;
}

void PolyQ::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational PolyQ::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> r(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyQ(std::move(r));
}

PolyQ PolyQ::scaled(const BigRational& s) const {
  if (s == 0) return {};
  PolyQ r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

void PolyQ::divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
  if (b.is_zero()) throw ZeroDenominator();
  r = a;
  q = PolyQ();
  if (a.degree() < b.degree()) return;
  std::vector<BigRational> qc(a.degree() - b.degree() + 1, BigRational(0));
  const BigRational inv_lead = 1 / b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const BigRational f = r.lead() * inv_lead;
    qc[shift] = f;
    for (int i = 0; i <= b.degree(); ++i) r.c_[i + shift] -= f * b.c_[i];
    r.c_.pop_back();
    r.trim();
  }
  q = PolyQ(std::move(qc));
}

PolyQ PolyQ::exact_div(const PolyQ& a, const PolyQ& b) {
  PolyQ q, r;
  divmod(a, b, q, r);
  return q;
}

PolyQ PolyQ::gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return {};
  return scaled(1 / lead());
}

BigRational PolyQ::eval(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolyQ PolyQ::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigRational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return PolyQ(std::move(r));
}

std::strong_ordering PolyQ::compare(const PolyQ& o) const {
  if (c_.size() != o.c_.size()) return c_.size() <=> o.c_.size();
  for (size_t i = c_.size(); i-- > 0;) {
    const int s = cmp(c_[i], o.c_[i]);
    if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string PolyQ::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    BigRational c = c_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

// ------------------------------------------------------------- RatFuncK

RatFuncK RatFuncK::normalize(const PolyQ& n, const PolyQ& d) {
  if (d.is_zero()) throw ZeroDenominator();
  if (n.is_zero()) return RatFuncK();
  if (d.is_constant()) return RatFuncK(n.scaled(1 / d.lead()), PolyQ(1), true);
  PolyQ g = PolyQ::gcd(n, d);
  PolyQ nn = n, dd = d;
  if (!g.is_constant()) {
    nn = PolyQ::exact_div(n, g);
    dd = PolyQ::exact_div(d, g);
  }
  const BigRational lead = dd.lead();
  return RatFuncK(nn.scaled(1 / lead), dd.scaled(1 / lead), true);
}

BigRational RatFuncK::constant() const {
  if (!is_constant()) throw Error("rational function is not constant: " + str());
  return num_.coeff(0) / den_.coeff(0);
}

RatFuncK RatFuncK::operator-() const { return RatFuncK(-num_, den_, true); }

RatFuncK operator+(const RatFuncK& a, const RatFuncK& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) return RatFuncK(a.num_ + b.num_, a.den_, true);
    return RatFuncK::normalize(a.num_ + b.num_, a.den_);
  }
  if (a.den_.is_constant()) return RatFuncK(a.num_ * b.den_ + b.num_, b.den_, true);
  if (b.den_.is_constant()) return RatFuncK(a.num_ + b.num_ * a.den_, a.den_, true);
  const PolyQ g = PolyQ::gcd(a.den_, b.den_);
  const PolyQ ad = PolyQ::exact_div(a.den_, g);
  const PolyQ bd = PolyQ::exact_div(b.den_, g);
  return RatFuncK::normalize(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFuncK operator-(const RatFuncK& a, const RatFuncK& b) { return a + (-b); }

RatFuncK operator*(const RatFuncK& a, const RatFuncK& b) {
  if (a.is_zero() || b.is_zero()) return RatFuncK();
  if (a.den_.is_constant() && b.den_.is_constant())
    return RatFuncK(a.num_ * b.num_, PolyQ(1), true);
  const PolyQ g1 = PolyQ::gcd(a.num_, b.den_);
  const PolyQ g2 = PolyQ::gcd(b.num_, a.den_);
  const PolyQ n = PolyQ::exact_div(a.num_, g1) * PolyQ::exact_div(b.num_, g2);
  const PolyQ d = PolyQ::exact_div(a.den_, g2) * PolyQ::exact_div(b.den_, g1);
  const BigRational lead = d.lead();
  return RatFuncK(n.scaled(1 / lead), d.scaled(1 / lead), true);
}

RatFuncK RatFuncK::inverse() const {
  if (is_zero()) throw ZeroDenominator();
  const BigRational lead = num_.lead();
  return RatFuncK(den_.scaled(1 / lead), num_.scaled(1 / lead), true);
}

RatFuncK operator/(const RatFuncK& a, const RatFuncK& b) { return a * b.inverse(); }

BigRational RatFuncK::eval(const BigRational& k0) const {
  const BigRational d = den_.eval(k0);
  if (d == 0) throw PoleAtLevel(den_.str());
  return num_.eval(k0) / d;
}

std::string RatFuncK::str() const {
  if (den_.is_constant()) return num_.str();
  const std::string n = num_.str();
  const bool simple_num = num_.is_constant() || (num_.coeffs().size() == 2 && num_.coeff(0) == 0);
  return (simple_num ? n : "(" + n + ")") + "/(" + den_.str() + ")";
}

// --------------------------------------------------------------- Scalar

Scalar::Scalar(const RatFuncK& c) {
  if (!c.is_zero()) t_.push_back(c);
}

Scalar Scalar::hbar(int power) { return term(RatFuncK(1), power); }

Scalar Scalar::term(const RatFuncK& c, int hbar_degree) {
  Scalar s;
  if (c.is_zero()) return s;
  s.t_.assign(hbar_degree + 1, RatFuncK());
  s.t_[hbar_degree] = c;
  return s;
}

void Scalar::trim() {
  if (trunc_ && static_cast<int>(t_.size()) > *trunc_ + 1) t_.resize(*trunc_ + 1);
  while (!t_.empty() && t_.back().is_zero()) t_.pop_back();
}

int Scalar::hbar_valuation() const {
  for (size_t i = 0; i < t_.size(); ++i)
    if (!t_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

RatFuncK Scalar::coeff(int d) const {
  if (d < 0 || d >= static_cast<int>(t_.size())) return RatFuncK();
  return t_[d];
}

Scalar Scalar::with_truncation(std::optional<int> order) const {
  Scalar s = *this;
  s.trunc_ = order;
  s.trim();
  return s;
}

static std::optional<int> merge_trunc(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& c : s.t_) c = -c;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  trunc_ = merge_trunc(trunc_, o.trunc_);
  if (o.t_.size() > t_.size()) t_.resize(o.t_.size());
  for (size_t i = 0; i < o.t_.size(); ++i)
    if (!o.t_[i].is_zero()) t_[i] += o.t_[i];
  trim();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  trunc_ = merge_trunc(trunc_, o.trunc_);
  if (o.t_.size() > t_.size()) t_.resize(o.t_.size());
  for (size_t i = 0; i < o.t_.size(); ++i)
    if (!o.t_[i].is_zero()) t_[i] -= o.t_[i];
  trim();
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar r = a;
  r += b;
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar r = a;
  r -= b;
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.trunc_ = merge_trunc(a.trunc_, b.trunc_);
  if (a.is_zero() || b.is_zero()) return r;
  r.t_.resize(a.t_.size() + b.t_.size() - 1);
  for (size_t i = 0; i < a.t_.size(); ++i) {
    if (a.t_[i].is_zero()) continue;
    for (size_t j = 0; j < b.t_.size(); ++j) {
      if (b.t_[j].is_zero()) continue;
      if (r.trunc_ && static_cast<int>(i + j) > *r.trunc_) break;
      r.t_[i + j] += a.t_[i] * b.t_[j];
    }
  }
  r.trim();
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (!b.is_unit()) throw NotAUnit();
  const RatFuncK inv = b.t_[0].inverse();
  Scalar r = a;
  r.trunc_ = merge_trunc(a.trunc_, b.trunc_);
  for (auto& c : r.t_) c = c * inv;
  r.trim();
  return r;
}

Scalar Scalar::divide_hbar(int n) const {
  if (n == 0 || is_zero()) return *this;
  if (hbar_valuation() < n) throw NotAUnit();
  Scalar r = *this;
  r.t_.erase(r.t_.begin(), r.t_.begin() + n);
  return r;
}

Scalar Scalar::times_hbar(int n) const {
  if (n == 0 || is_zero()) return *this;
  Scalar r = *this;
  r.t_.insert(r.t_.begin(), n, RatFuncK());
  r.trim();
  return r;
}

RatFuncK Scalar::hbar_specialize(int value) const {
  if (value == 0) return coeff(0);
  if (value != 1) throw Error("h can only be specialized to 0 or 1");
  RatFuncK acc;
  for (const auto& c : t_) acc += c;
  return acc;
}

std::vector<BigRational> Scalar::eval_at_k(const BigRational& k0) const {
  std::vector<BigRational> r;
  r.reserve(t_.size());
  for (const auto& c : t_) r.push_back(c.eval(k0));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < t_.size(); ++i) {
    if (t_[i].is_zero()) continue;
    std::string c = t_[i].str();
    const bool neg = c.size() > 1 && c[0] == '-' && c.find(' ') == std::string::npos;
    if (neg) c = c.substr(1);
    if (first) {
      os << (neg ? "-" : "");
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    os << "h";
    if (i > 1) os << "^" << i;
    if (c == "1") continue;
    if (c.find(' ') == std::string::npos) {
      os << "*" << c;
    } else {
      os << "*(" << c << ")";
    }
  }
  return os.str();
}

// --------------------------------------------------------------- parser

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in scalar '" + s_ + "'", 1, static_cast<int>(pos_) + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = v / unary();
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    Scalar r(1);
    for (int i = 0; i < e; ++i) r = r * base;
    if (neg) r = Scalar(1) / r;
    return r;
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'k') {
      ++pos_;
      return Scalar::k();
    }
    if (c == 'h') {
      ++pos_;
      return Scalar::hbar();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(BigRational(mpz_class(s_.substr(start, pos_ - start))));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text) { return ScalarParser(text).parse(); }

}  // namespace chiral
