#include <doctest.h>

#include <random>

#include "golden_oracle.hpp"
#include "negabeta/errors.hpp"
#include "negabeta/negabase.hpp"
#include "oracles.hpp"

using namespace negabeta;

namespace {

NegativeBase make(const char* poly) { return NegativeBase(isolate_pisot_base(IntPolynomial::parse(poly))); }

IntPolynomial mbonacci(int m, int d) {
  std::vector<Integer> c{1};
  for (int i = 0; i < d; ++i) c.emplace_back(-m);
  return IntPolynomial(c);
}

FieldElement minus_inv_beta_plus_one(const PisotBase& b) {
  return -(FieldElement::beta(b) + Integer(1)).inverse();
}

// Shifts an arbitrary element into [l, l+1) by an integer.
FieldElement into_domain(const NegativeBase& nb, FieldElement x) {
  x -= fe_floor(x - nb.ell());
  return x;
}

FieldElement random_element(const PisotBase& b, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<Rational> q;
  for (int i = 0; i < b.degree(); ++i) q.emplace_back(c(rng));
  return FieldElement::from_coefficients(b, q);
}

}  // namespace

TEST_CASE("ell_beta") {
  auto golden = make("1,-1,-1");
  CHECK(fe_sign(golden.ell()) == -1);
  CHECK(fe_floor(golden.ell()) == -1);
  CHECK(golden.max_digit() == 1);

  auto trib = make("1,-1,-1,-1");
  auto enc = fe_enclose(trib.ell(), 100);
  CHECK(enc.lo > Rational(-6479, 10000));
  CHECK(enc.hi < Rational(-6477, 10000));

  for (const char* p : {"1,-3,-3,-3", "1,-5,1,-1", "1,-2,-2"}) {
    auto nb = make(p);
    CHECK(fe_sign(nb.ell()) < 0);
    CHECK(fe_sign(nb.ell_plus_one()) > 0);
  }
}

TEST_CASE("t_step examples") {
  auto nb = make("1,-1,-1,-1");
  const auto& b = nb.base();
  auto s0 = t_step(nb, FieldElement(b));
  CHECK(s0.digit == 0);
  CHECK(fe_sign(s0.state) == 0);

  auto fixed = minus_inv_beta_plus_one(b);
  auto s1 = t_step(nb, fixed);
  CHECK(s1.digit == 1);
  CHECK(s1.state == fixed);

  CHECK_THROWS_AS(t_step(nb, nb.ell_plus_one()), OutOfDomain);
  CHECK_NOTHROW(t_step(nb, nb.ell()));

  for (int m = 1; m <= 4; ++m) {
    NegativeBase cubic(isolate_pisot_base(mbonacci(m, 3)));
    auto a = t_step(cubic, cubic.ell());
    auto c = t_step(cubic, a.state);
    auto e = t_step(cubic, c.state);
    CHECK(a.digit == m);
    CHECK(c.digit == 0);
    CHECK(e.digit == m);
  }
}

TEST_CASE("digit_sequence examples") {
  for (int m = 1; m <= 4; ++m) {
    NegativeBase nb(isolate_pisot_base(mbonacci(m, 3)));
    auto seq = digit_sequence(nb, nb.ell());
    CHECK(seq.word.preperiod == std::vector<long>{m, 0});
    CHECK(seq.word.period == std::vector<long>{m});
    CHECK(seq.orbit.cycle_start == 2u);

    auto fixed = digit_sequence(nb, minus_inv_beta_plus_one(nb.base()));
    CHECK(fixed.word.preperiod.empty());
    CHECK(fixed.word.period == std::vector<long>{1});

    auto zero = digit_sequence(nb, FieldElement(nb.base()));
    CHECK(zero.word.preperiod.empty());
    CHECK(zero.word.period.empty());
    CHECK(zero.word.eventually_zero());
  }
}

TEST_CASE("digit_sequence budget truncates") {
  auto nb = make("1,-1,-1,-1");
  FieldElement x = FieldElement::parse(nb.base(), "1/7");
  auto seq = digit_sequence(nb, x, 3);
  CHECK(seq.word.truncated);
  CHECK(seq.orbit.open());
  CHECK(seq.word.preperiod.size() == 3);
  CHECK_FALSE(seq.word.eventually_zero());
}

TEST_CASE("expansion: zero and golden ratio") {
  auto nb = make("1,-1,-1");
  const auto& b = nb.base();
  auto zero = expansion(nb, FieldElement(b));
  CHECK(zero.to_text() == "0 • 0^ω");
  CHECK(zero.radix_k == 0);

  // 1/(−β) = l and 1/β² = l + 1 both sit on the boundary, so k = 3.
  auto one = expansion(nb, FieldElement::from_integer(b, 1));
  CHECK(one.radix_k == 3);
  CHECK(one.to_text() == "1 1 0 • 0^ω");
  CHECK(one.to_json().dump() == R"({"period":[],"preperiod":[1,1,0],"radix":3})");
}

TEST_CASE("expansion agrees with the Q(sqrt 5) oracle") {
  auto nb = make("1,-1,-1");
  const auto& b = nb.base();
  for (long p = -12; p <= 12; ++p) {
    for (long q = -12; q <= 12; q += 3) {
      // p + q*beta with beta = (1 + sqrt 5)/2
      FieldElement x = FieldElement::from_coefficients(b, {Rational(p), Rational(q)});
      golden::Q5 g{mpq_class(p) + mpq_class(q, 2), mpq_class(q, 2)};
      if (p == 0 && q == 0) continue;
      auto w = expansion(nb, x);
      REQUIRE_FALSE(w.truncated);
      auto [k, digits] = golden::expansion(g, static_cast<int>(w.preperiod.size() + 2 * w.period.size()) + 4);
      CHECK(w.radix_k == k);
      std::vector<long> lib = w.preperiod;
      for (std::size_t i = 0; lib.size() < digits.size(); ++i)
        lib.push_back(w.period.empty() ? 0 : w.period[i % w.period.size()]);
      CHECK(lib == digits);
    }
  }
}

TEST_CASE("expansion: tribonacci witness values") {
  auto nb = make("1,-1,-1,-1");
  const auto& b = nb.base();
  auto beta = FieldElement::beta(b);
  FieldElement x = FieldElement::from_integer(b, 1) - beta;
  auto wx = expansion(nb, x);
  CHECK(wx.to_text() == "1 1 • 0^ω");
  CHECK(fr_length(nb, x).length == 0L);

  FieldElement y = FieldElement::beta_power(b, 4) - FieldElement::beta_power(b, 3);
  auto wy = expansion(nb, y);
  CHECK(wy.to_text() == "1 1 0 0 0 • 0^ω");
  CHECK(fr_length(nb, y).length == 0L);

  auto diff = fr_length(nb, x - y);
  CHECK(diff.length == 6L);
}

TEST_CASE("fr_length of the non-finite fixed point") {
  auto nb = make("1,-1,-1,-1");
  auto r = fr_length(nb, minus_inv_beta_plus_one(nb.base()));
  CHECK_FALSE(r.finite());
  CHECK(r.word.period.size() == 1);
  CHECK(r.word.to_text() == "0 • (per: 1)");
}

TEST_CASE("enumerate_zmb") {
  auto nb = make("1,-1,-1,-1");
  const auto& b = nb.base();
  auto s0 = enumerate_zmb(nb, 0);
  REQUIRE(s0.size() == 1);
  CHECK(fe_sign(s0[0]) == 0);

  auto s1 = enumerate_zmb(nb, 1);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == FieldElement(b));
  CHECK(s1[1] == -nb.beta_inverse());

  std::size_t prev = 0;
  for (int k = 0; k <= 7; ++k) {
    auto sk = enumerate_zmb(nb, k, Exec::Serial);
    auto par = enumerate_zmb(nb, k, Exec::Parallel);
    REQUIRE(sk.size() == par.size());
    for (std::size_t i = 0; i < sk.size(); ++i) CHECK(sk[i].same_representation(par[i]));
    CHECK(sk.size() >= prev);
    prev = sk.size();
    if (k == 0) continue;
    auto below = enumerate_zmb(nb, k - 1, Exec::Serial);
    for (const auto& x : sk) {
      auto step = t_step(nb, x);
      bool found = false;
      for (const auto& y : below) found = found || step.state.same_representation(y);
      CHECK(found);
    }
  }
  for (const auto& z : zmb_integers(nb, 6)) CHECK(fr_length(nb, z).length == 0L);
}

TEST_CASE("conservation, domain closure and digit bound") {
  for (const char* p : {"1,-1,-1,-1", "1,-3,-3,-3", "1,-2,-1,-1", "1,-3,1", "1,-1,-1,-1,-1"}) {
    auto nb = make(p);
    const auto& b = nb.base();
    std::mt19937_64 rng(5);
    FieldElement neg_beta = -FieldElement::beta(b);
    for (int trial = 0; trial < 30; ++trial) {
      FieldElement x = into_domain(nb, random_element(b, rng, 40));
      FieldElement cur = x;
      FieldElement partial(b);
      FieldElement scale = FieldElement::from_integer(b, 1);  // (−β)^-n
      for (int n = 1; n <= 20; ++n) {
        auto s = t_step(nb, cur);
        CHECK(s.digit >= 0);
        CHECK(s.digit <= nb.max_digit());
        CHECK(nb.in_domain(s.state));
        scale = scale * neg_beta.inverse();
        partial += scale * Integer(s.digit);
        cur = s.state;
        CHECK(x == partial + cur * scale);
      }
    }
  }
}

TEST_CASE("expansion minimality") {
  auto nb = make("1,-1,-1,-1");
  std::mt19937_64 rng(9);
  FieldElement neg_beta = -FieldElement::beta(nb.base());
  for (int i = 0; i < 40; ++i) {
    FieldElement x = random_element(nb.base(), rng, 30);
    if (fe_sign(x) == 0) continue;
    auto w = expansion(nb, x);
    FieldElement y = x;
    for (long j = 0; j < w.radix_k; ++j) {
      CHECK_FALSE(nb.in_open_domain(y));
      y = y * neg_beta.inverse();
    }
    CHECK(nb.in_open_domain(y));
  }
}

TEST_CASE("digit strings") {
  auto base = isolate_pisot_base(IntPolynomial::parse("1,-1,-1,-1"));
  auto v = digits_value(*base, parse_digit_string("1 1 0 0 0 •"));
  CHECK(v == FieldElement::beta_power(*base, 4) - FieldElement::beta_power(*base, 3));
  CHECK_THROWS_AS(parse_digit_string("1 • 1"), ParseError);
  CHECK_THROWS_AS(parse_digit_string("1 -1"), ParseError);
}
