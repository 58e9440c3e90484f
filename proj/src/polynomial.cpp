#include "negabeta/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "negabeta/errors.hpp"

namespace negabeta {

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw ParseError("polynomial has no coefficients");
  if (coeffs_.front() == 0) throw ParseError("leading coefficient must be nonzero");
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<Integer> coeffs;
  std::string token;
  auto flush = [&] {
    std::string t;
    for (char c : token)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty coefficient in polynomial '" + std::string(text) + "'");
    if (t.front() == '+') t.erase(0, 1);
    Integer v;
    if (v.set_str(t, 10) != 0) throw ParseError("bad integer coefficient '" + t + "'");
    coeffs.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      token += c;
  }
  flush();
  return IntPolynomial(std::move(coeffs));
}

Integer IntPolynomial::coeff(int power) const {
  if (power < 0 || power > degree()) return 0;
  return coeffs_[static_cast<size_t>(degree() - power)];
}

Integer IntPolynomial::eval(const Integer& x) const {
  Integer acc = 0;
  for (const auto& c : coeffs_) acc = acc * x + c;
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (const auto& c : coeffs_) acc = acc * x + Rational(c);
  return acc;
}

std::string IntPolynomial::to_csv() const {
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += coeffs_[i].get_str();
  }
  return out;
}

std::string IntPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int pw = degree(); pw >= 0; --pw) {
    Integer c = coeff(pw);
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || pw == 0) os << mag.get_str();
    if (pw >= 1) os << 'x';
    if (pw >= 2) os << '^' << pw;
    first = false;
  }
  return first ? "0" : os.str();
}

namespace detail {

RatPoly to_ratpoly(const IntPolynomial& p) {
  RatPoly out(static_cast<size_t>(p.degree() + 1));
  for (int i = 0; i <= p.degree(); ++i) out[static_cast<size_t>(i)] = p.coeff(i);
  return out;
}

RatPoly to_ratpoly(const std::vector<Integer>& low_first) {
  RatPoly out(low_first.begin(), low_first.end());
  trim(out);
  return out;
}

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly derivative(const RatPoly& p) {
  RatPoly out;
  for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

void divmod(const RatPoly& num, const RatPoly& den, RatPoly& quot, RatPoly& rem) {
  if (den.empty()) throw Error("polynomial division by zero");
  rem = num;
  trim(rem);
  quot.assign(rem.size() >= den.size() ? rem.size() - den.size() + 1 : 0, Rational(0));
  const Rational& lead = den.back();
  while (!rem.empty() && rem.size() >= den.size()) {
    size_t shift = rem.size() - den.size();
    Rational f = rem.back() / lead;
    quot[shift] = f;
    for (size_t i = 0; i < den.size(); ++i) rem[shift + i] -= f * den[i];
    rem.pop_back();
    trim(rem);
  }
  trim(quot);
}

RatPoly make_monic(RatPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

RatPoly extended_gcd(const RatPoly& a, const RatPoly& b, RatPoly& s) {
  RatPoly r0 = a, r1 = b;
  trim(r0);
  trim(r1);
  RatPoly s0{Rational(1)}, s1;
  while (!r1.empty()) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.empty()) {
    s.clear();
    return r0;
  }
  Rational lead = r0.back();
  for (auto& c : r0) c /= lead;
  for (auto& c : s0) c /= lead;
  s = std::move(s0);
  return r0;
}

Rational eval(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at_dyadic(const std::vector<Integer>& low_first, const Integer& num, unsigned long exp) {
  // sum c_i num^i 2^{exp (n - i)}
  const size_t n = low_first.size();
  if (n == 0) return 0;
  Integer acc = 0;
  for (size_t k = n; k-- > 0;) {
    acc *= num;
    Integer term = low_first[k];
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), exp * (n - 1 - k));
    acc += term;
  }
  return sgn(acc);
}

SturmSequence::SturmSequence(const RatPoly& squarefree) {
  RatPoly a = squarefree;
  trim(a);
  seq_.push_back(a);
  RatPoly b = derivative(a);
  while (!b.empty()) {
    seq_.push_back(b);
    RatPoly q, r;
    divmod(a, b, q, r);
    for (auto& c : r) c = -c;
    a = std::move(b);
    b = std::move(r);
  }
}

int SturmSequence::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& p : seq_) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<Integer> squarefree_part(const IntPolynomial& p) {
  RatPoly f = to_ratpoly(p);
  RatPoly g = gcd(f, derivative(f));
  RatPoly q, r;
  divmod(f, g, q, r);
  // Clear denominators and content.
  Integer l = 1;
  for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer content = 0;
  for (const auto& c : q) {
    Integer v = c.get_num() * (l / c.get_den());
    out.push_back(v);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  if (content != 0 && content != 1)
    for (auto& v : out) v /= content;
  if (!out.empty() && out.back() < 0)
    for (auto& v : out) v = -v;
  return out;
}

}  // namespace detail
}  // namespace negabeta
