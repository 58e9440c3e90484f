#include "negabeta/exactfield.hpp"

#include <algorithm>
#include <cctype>

#include "negabeta/errors.hpp"

namespace negabeta {

namespace {

constexpr unsigned long kBaseBits = 64;

Integer pow_int(const Integer& b, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

Integer shift_left(Integer v, unsigned long bits) {
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  return v;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// PisotBase

PisotBase::PisotBase(IntPolynomial p) : minpoly_(std::move(p)) {
  for (auto& t : tables_) t.store(nullptr, std::memory_order_relaxed);
}

PisotBase::~PisotBase() {
  for (auto& t : tables_) delete t.load(std::memory_order_relaxed);
}

void PisotBase::isolate() {
  sqf_ = detail::squarefree_part(minpoly_);
  const detail::RatPoly sq = detail::to_ratpoly(sqf_);
  const detail::SturmSequence sturm(sq);

  // Cauchy bound rounded up to an integer strictly above every root.
  Rational maxr = 0;
  for (size_t i = 0; i + 1 < sq.size(); ++i) maxr = std::max<Rational>(maxr, abs(sq[i] / sq.back()));
  Integer bound = floor_div(maxr.get_num(), maxr.get_den()) + 2;

  if (sturm.count_roots(Rational(1), Rational(bound)) == 0)
    throw NoRootAboveOne("polynomial " + minpoly_.to_string() + " has no real root above 1");

  Integer lo = 1, hi = bound;
  unsigned long exp = 0;
  auto as_rat = [&](const Integer& n) {
    Rational q(n, shift_left(Integer(1), exp));
    q.canonicalize();
    return q;
  };
  auto bisect_once = [&] {
    lo *= 2;
    hi *= 2;
    ++exp;
    return Integer((lo + hi) / 2);
  };

  // Narrow (lo, hi] until it holds only the largest root.
  while (sturm.count_roots(as_rat(lo), as_rat(hi)) > 1) {
    Integer mid = bisect_once();
    if (sturm.count_roots(as_rat(mid), as_rat(hi)) >= 1)
      lo = mid;
    else
      hi = mid;
  }

  const int hi_sign = detail::sign_at_dyadic(sqf_, hi, exp);
  if (hi_sign == 0) {
    exact_ = true;
    exact_value_ = as_rat(hi);
  } else {
    // beta is the only root in (lo, hi]; the sign of sqf is -hi_sign below it.
    while (true) {
      Rational width = as_rat(hi - lo);
      bool lo_root = detail::sign_at_dyadic(sqf_, lo, exp) == 0;
      if (width <= Rational(1, shift_left(Integer(1), kBaseBits)) && !lo_root) break;
      Integer mid = bisect_once();
      int s = detail::sign_at_dyadic(sqf_, mid, exp);
      if (s == 0) {
        exact_ = true;
        exact_value_ = as_rat(mid);
        break;
      }
      if (s == hi_sign)
        hi = mid;
      else
        lo = mid;
    }
  }

  // Rational roots of a monic integer polynomial are integers.
  if (!exact_) {
    Integer c = floor_div(lo, shift_left(Integer(1), exp)) + 1;
    if (Rational(c) <= as_rat(hi) && detail::sign_at_dyadic(sqf_, c, 0) == 0) {
      exact_ = true;
      exact_value_ = Rational(c);
    }
  }

  if (exact_) {
    interval_ = {exact_value_, exact_value_};
  } else {
    lo_num_ = lo;
    hi_num_ = hi;
    exp_ = exp;
    interval_ = {as_rat(lo), as_rat(hi)};
  }

  // x^k mod p for d <= k <= 2d-2.
  const int d = degree();
  reduction_.clear();
  std::vector<Integer> row(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) row[static_cast<size_t>(i)] = -minpoly_.coeff(i);
  for (int k = d; k <= std::max(d, 2 * d - 2); ++k) {
    reduction_.push_back(row);
    // multiply row by x
    Integer top = row.back();
    for (int i = d - 1; i > 0; --i) row[static_cast<size_t>(i)] = row[static_cast<size_t>(i - 1)];
    row[0] = 0;
    for (int i = 0; i < d; ++i) row[static_cast<size_t>(i)] += top * (-minpoly_.coeff(i));
  }
}

void PisotBase::refine_locked(unsigned long bits) const {
  if (exact_) return;
  const int hi_sign = detail::sign_at_dyadic(sqf_, hi_num_, exp_);
  // width = (hi - lo) / 2^exp_ <= 2^-bits
  while (true) {
    Integer diff = hi_num_ - lo_num_;
    size_t diff_bits = mpz_sizeinbase(diff.get_mpz_t(), 2);
    if (exp_ >= bits + diff_bits) break;
    lo_num_ *= 2;
    hi_num_ *= 2;
    ++exp_;
    Integer mid = (lo_num_ + hi_num_) / 2;
    int s = detail::sign_at_dyadic(sqf_, mid, exp_);
    if (s == 0) throw Error("rational root met during refinement of an irrational beta");
    if (s == hi_sign)
      hi_num_ = mid;
    else
      lo_num_ = mid;
  }
}

RationalInterval PisotBase::refined_interval(unsigned long bits) const {
  if (exact_) return interval_;
  std::lock_guard lock(mutex_);
  refine_locked(bits);
  Integer den = shift_left(Integer(1), exp_);
  return {Rational(lo_num_, den), Rational(hi_num_, den)};
}

const detail::PowerTable& PisotBase::power_table(unsigned level) const {
  if (level >= kMaxLevels) throw Error("precision exhausted while deciding a sign");
  if (const auto* t = tables_[level].load(std::memory_order_acquire)) return *t;

  std::lock_guard lock(mutex_);
  if (const auto* t = tables_[level].load(std::memory_order_acquire)) return *t;

  auto table = std::make_unique<detail::PowerTable>();
  const unsigned long bits = kBaseBits << level;
  const int d = degree();
  table->bits = bits;
  table->lo.resize(static_cast<size_t>(d));
  table->hi.resize(static_cast<size_t>(d));
  if (exact_) {
    const Integer& a = exact_value_.get_num();
    const Integer& b = exact_value_.get_den();
    for (int i = 0; i < d; ++i) {
      Integer n = shift_left(pow_int(a, static_cast<unsigned long>(i)), bits);
      Integer m = pow_int(b, static_cast<unsigned long>(i));
      table->lo[static_cast<size_t>(i)] = floor_div(n, m);
      table->hi[static_cast<size_t>(i)] = ceil_div(n, m);
    }
  } else {
    const unsigned long guard =
        static_cast<unsigned long>(d) * (mpz_sizeinbase(hi_num_.get_mpz_t(), 2) - exp_ + 2) + 16;
    refine_locked(bits + guard);
    for (int i = 0; i < d; ++i) {
      const auto ui = static_cast<unsigned long>(i);
      Integer den = shift_left(Integer(1), exp_ * ui);
      table->lo[static_cast<size_t>(i)] = floor_div(shift_left(pow_int(lo_num_, ui), bits), den);
      table->hi[static_cast<size_t>(i)] = ceil_div(shift_left(pow_int(hi_num_, ui), bits), den);
    }
  }
  const detail::PowerTable* raw = table.release();
  tables_[level].store(raw, std::memory_order_release);
  return *raw;
}

bool PisotBase::vanishes_at_beta(const detail::RatPoly& q_in) const {
  detail::RatPoly q = q_in;
  detail::trim(q);
  if (q.empty()) return true;
  detail::RatPoly g = detail::gcd(q, detail::to_ratpoly(sqf_));
  if (detail::degree(g) <= 0) return false;
  if (exact_) return detail::eval(g, exact_value_) == 0;
  // interval_ holds exactly one root of sqf, and neither endpoint is a root.
  return sgn(detail::eval(g, interval_.lo)) * sgn(detail::eval(g, interval_.hi)) < 0;
}

std::string PisotBase::approx_string(unsigned long bits) const {
  return "~" + refined_interval(bits).midpoint().get_str();
}

void PisotBase::certify_pisot() {
  const int d = degree();
  // q(x) = p(x) / (x - beta), coefficients in Z[beta], low degree first.
  std::vector<FieldElement> q(static_cast<size_t>(d), FieldElement(*this));
  const FieldElement b = FieldElement::beta(*this);
  q[static_cast<size_t>(d - 1)] = FieldElement::from_integer(*this, 1);
  for (int k = d - 1; k >= 1; --k)
    q[static_cast<size_t>(k - 1)] = FieldElement::from_integer(*this, minpoly_.coeff(k)) + b * q[static_cast<size_t>(k)];

  // Schur-Cohn: all roots of f in the open unit disk iff |f_0| < |f_n| and
  // the reduced polynomial (f_n f(z) - f_0 z^n f(1/z)) / z has the property.
  std::vector<FieldElement> f = std::move(q);
  while (f.size() > 1) {
    const size_t n = f.size() - 1;
    const FieldElement a0 = f[0];
    const FieldElement an = f[n];
    if (fe_sign(an * an - a0 * a0) <= 0) {
      pisot_ = false;
      return;
    }
    std::vector<FieldElement> next;
    next.reserve(n);
    for (size_t i = 0; i < n; ++i) next.push_back(an * f[i + 1] - a0 * f[n - 1 - i]);
    f = std::move(next);
  }
  pisot_ = true;
}

BasePtr isolate_pisot_base(const IntPolynomial& p, bool want_pisot_check) {
  if (!p.is_monic()) throw ParseError("base polynomial must be monic");
  if (p.degree() < 1) throw ParseError("base polynomial must have degree >= 1");
  std::shared_ptr<PisotBase> base(new PisotBase(p));
  base->isolate();
  if (want_pisot_check) {
    base->certify_pisot();
    base->irreducible_ = base->pisot_ && p.coeff(0) != 0;
  }
  return base;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const PisotBase& base)
    : base_(&base), num_(static_cast<size_t>(base.degree()), Integer(0)), den_(1) {}

FieldElement FieldElement::from_integer(const PisotBase& base, const Integer& n) {
  FieldElement e(base);
  e.num_[0] = n;
  return e;
}

FieldElement FieldElement::from_rational(const PisotBase& base, const Rational& q) {
  FieldElement e(base);
  e.num_[0] = q.get_num();
  e.den_ = q.get_den();
  return e;
}

FieldElement FieldElement::from_coefficients(const PisotBase& base, const std::vector<Rational>& low_first) {
  FieldElement acc(base);
  FieldElement power = from_integer(base, 1);
  for (size_t i = 0; i < low_first.size(); ++i) {
    if (low_first[i] != 0) {
      FieldElement term = power;
      term.den_ *= low_first[i].get_den();
      for (auto& c : term.num_) c *= low_first[i].get_num();
      term.normalize();
      acc += term;
    }
    if (i + 1 < low_first.size()) power = power.times_beta();
  }
  return acc;
}

FieldElement FieldElement::beta(const PisotBase& base) { return from_integer(base, 1).times_beta(); }

FieldElement FieldElement::beta_power(const PisotBase& base, long k) {
  FieldElement step = k >= 0 ? beta(base) : beta(base).inverse();
  FieldElement out = from_integer(base, 1);
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) out = k >= 0 ? out.times_beta() : out * step;
  return out;
}

Rational FieldElement::coeff(int i) const {
  Rational q(num_.at(static_cast<size_t>(i)), den_);
  q.canonicalize();
  return q;
}

std::vector<Rational> FieldElement::coefficients() const {
  std::vector<Rational> out;
  for (int i = 0; i < degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool FieldElement::is_zero_representation() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& c) { return c == 0; });
}

void FieldElement::check_base(const FieldElement& o) const {
  if (base_ != o.base_ || base_ == nullptr) throw BaseMismatch();
}

void FieldElement::normalize() {
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g == 1) return;
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_base(o);
  if (den_ == o.den_) {
    for (size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_base(o);
  if (den_ == o.den_) {
    for (size_t i = 0; i < num_.size(); ++i) num_[i] -= o.num_[i];
  } else {
    for (size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ - o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

void FieldElement::reduce_product(std::vector<Integer>& wide) {
  const size_t d = num_.size();
  for (size_t k = d; k < wide.size(); ++k) {
    if (wide[k] == 0) continue;
    const auto& row = base_->reduction_row(static_cast<int>(k));
    for (size_t j = 0; j < d; ++j) wide[j] += wide[k] * row[j];
  }
  wide.resize(d);
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_base(o);
  const size_t d = num_.size();
  std::vector<Integer> wide(2 * d - 1, Integer(0));
  for (size_t i = 0; i < d; ++i) {
    if (num_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) wide[i + j] += num_[i] * o.num_[j];
  }
  reduce_product(wide);
  num_ = std::move(wide);
  den_ *= o.den_;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator+=(const Integer& n) {
  num_[0] += n * den_;
  return *this;
}

FieldElement& FieldElement::operator-=(const Integer& n) {
  num_[0] -= n * den_;
  return *this;
}

FieldElement& FieldElement::operator*=(const Integer& n) {
  for (auto& c : num_) c *= n;
  normalize();
  return *this;
}

FieldElement FieldElement::times_beta() const {
  FieldElement out = *this;
  const size_t d = num_.size();
  Integer top = num_[d - 1];
  for (size_t i = d - 1; i > 0; --i) out.num_[i] = num_[i - 1];
  out.num_[0] = 0;
  if (top != 0) {
    const auto& row = base_->reduction_row(static_cast<int>(d));
    for (size_t j = 0; j < d; ++j) out.num_[j] += top * row[j];
  }
  return out;
}

FieldElement FieldElement::inverse() const {
  detail::RatPoly a;
  for (const auto& c : num_) a.emplace_back(c);
  detail::trim(a);
  if (a.empty() || base_->vanishes_at_beta(a)) throw DivisionByZero();
  detail::RatPoly modulus = detail::to_ratpoly(base_->minpoly());
  // Drop factors shared with the element; they do not vanish at beta.
  while (true) {
    detail::RatPoly s;
    detail::RatPoly g = detail::extended_gcd(a, modulus, s);
    if (detail::degree(g) == 0) {
      // a is the numerator polynomial, so the inverse is den_ * s(beta).
      return from_coefficients(*base_, s) * den_;
    }
    detail::RatPoly q, r;
    detail::divmod(modulus, g, q, r);
    modulus = std::move(q);
  }
}

std::size_t FieldElement::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](const Integer& v) {
    std::size_t x = mpz_size(v.get_mpz_t()) ? mpz_getlimbn(v.get_mpz_t(), 0) : 0;
    x ^= static_cast<std::size_t>(mpz_sgn(v.get_mpz_t()) + 1) << 61;
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const auto& c : num_) mix(c);
  mix(den_);
  return h;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.same_representation(b)) return true;
  return fe_sign(a - b) == 0;
}

std::string FieldElement::to_string() const {
  std::string out;
  for (int i = 0; i < degree(); ++i) {
    Rational c = coeff(i);
    if (c == 0) continue;
    Rational mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "b";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FieldElement FieldElement::parse(const PisotBase& base, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty field element");

  FieldElement acc(base);
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("cannot parse field element '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&](std::string& out) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    out = s.substr(start, pos - start);
    return !out.empty();
  };

  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    Rational coef = 1;
    bool have_coef = false;
    std::string digits;
    if (read_uint(digits)) {
      have_coef = true;
      Integer numer(digits), denom = 1;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        if (!read_uint(digits)) fail("missing denominator");
        denom = Integer(digits);
        if (denom == 0) fail("zero denominator");
      }
      coef = Rational(numer, denom);
      coef.canonicalize();
    }
    long power = 0;
    bool star = pos < s.size() && s[pos] == '*';
    if (star) ++pos;
    if (pos < s.size() && s[pos] == 'b') {
      ++pos;
      if (s.compare(pos, 3, "eta") == 0) pos += 3;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        int psign = 1;
        if (pos < s.size() && s[pos] == '-') {
          psign = -1;
          ++pos;
        }
        if (!read_uint(digits)) fail("missing exponent");
        power = psign * std::stol(digits);
      }
    } else if (star || !have_coef) {
      fail("expected 'b'");
    }
    FieldElement term = power == 0 ? from_integer(base, 1) : beta_power(base, power);
    term.den_ *= coef.get_den();
    for (auto& c : term.num_) c *= coef.get_num() * sign;
    term.normalize();
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Exact sign and floor

namespace {

// Returns [lo, hi] with a(beta) * den * 2^bits in [lo, hi].
void enclose_scaled(const FieldElement& a, const detail::PowerTable& t, Integer& lo, Integer& hi) {
  lo = 0;
  hi = 0;
  const auto& num = a.numerators();
  for (size_t i = 0; i < num.size(); ++i) {
    const Integer& c = num[i];
    if (c == 0) continue;
    if (c > 0) {
      lo += c * t.lo[i];
      hi += c * t.hi[i];
    } else {
      lo += c * t.hi[i];
      hi += c * t.lo[i];
    }
  }
}

bool exactly_equals_integer(const FieldElement& a, const Integer& n) {
  if (a.is_rational()) return a.numerators()[0] == n * a.denominator();
  if (a.base().irreducible_certified()) return false;
  detail::RatPoly q;
  for (const auto& c : a.numerators()) q.emplace_back(c);
  q[0] -= Rational(n * a.denominator());
  return a.base().vanishes_at_beta(q);
}

}  // namespace

FieldElement fe_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
  }
  return a;
}

int fe_sign(const FieldElement& a) {
  if (a.is_rational()) return sgn(a.numerators()[0]);
  bool zero_checked = a.base().irreducible_certified();
  Integer lo, hi;
  for (unsigned level = 0;; ++level) {
    enclose_scaled(a, a.base().power_table(level), lo, hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (!zero_checked) {
      if (exactly_equals_integer(a, 0)) return 0;
      zero_checked = true;
    }
  }
}

Integer fe_floor(const FieldElement& a) {
  if (a.is_rational()) return floor_div(a.numerators()[0], a.denominator());
  Integer lo, hi;
  Integer checked_candidate;
  bool have_checked = false;
  for (unsigned level = 0;; ++level) {
    const auto& t = a.base().power_table(level);
    enclose_scaled(a, t, lo, hi);
    Integer scale = shift_left(a.denominator(), t.bits);
    Integer f_lo = floor_div(lo, scale);
    Integer f_hi = floor_div(hi, scale);
    if (f_lo == f_hi) return f_lo;
    if (f_hi - f_lo == 1 && !(have_checked && checked_candidate == f_hi)) {
      if (exactly_equals_integer(a, f_hi)) return f_hi;
      checked_candidate = f_hi;
      have_checked = true;
    }
  }
}

int fe_compare(const FieldElement& a, const FieldElement& b) {
  if (a.same_representation(b)) return 0;
  return fe_sign(a - b);
}

RationalInterval fe_enclose(const FieldElement& a, unsigned long bits) {
  unsigned level = 0;
  while ((kBaseBits << level) < bits + 8 && level + 1 < PisotBase::kMaxLevels) ++level;
  const auto& t = a.base().power_table(level);
  Integer lo, hi;
  enclose_scaled(a, t, lo, hi);
  Integer scale = shift_left(a.denominator(), t.bits);
  Rational rlo(lo, scale), rhi(hi, scale);
  rlo.canonicalize();
  rhi.canonicalize();
  return {rlo, rhi};
}

}  // namespace negabeta
