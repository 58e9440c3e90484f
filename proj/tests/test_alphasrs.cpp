#include <doctest.h>

#include <algorithm>
#include <random>

#include "negabeta/alphasrs.hpp"
#include "negabeta/negabase.hpp"

using namespace negabeta;

namespace {

IntPolynomial mbonacci(int m, int d) {
  std::vector<Integer> c{1};
  for (int i = 0; i < d; ++i) c.emplace_back(-m);
  return IntPolynomial(c);
}

// x^3 - a x^2 + b x - c
IntPolynomial cubic(long a, long b, long c) { return IntPolynomial({1, -a, b, -c}); }

SrsState random_state(std::mt19937_64& rng, int dim, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  SrsState z;
  for (int i = 0; i < dim; ++i) z.push_back(u(rng));
  return z;
}

bool contains_cycle_through(const WitnessClosure& w, const SrsState& s) {
  for (const auto& c : w.cycles)
    if (std::find(c.begin(), c.end(), s) != c.end()) return true;
  return false;
}

}  // namespace

TEST_CASE("srs_from_base: cubic unit with c = 1") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{2, -1}, {3, 1}, {4, 2}, {3, 0}}) {
    auto base = isolate_pisot_base(cubic(a, b, 1));
    auto p = srs_from_base(base);
    REQUIRE(p.dim() == 2);
    FieldElement inv = FieldElement::beta(*base).inverse();
    CHECK(p.r()[0] == inv);
    CHECK(p.r()[1] == inv * Integer(b) - inv * inv);
    FieldElement beta = FieldElement::beta(*base);
    CHECK(p.alpha() == beta / (beta + Integer(1)));
  }
}

TEST_CASE("srs_from_base: d-bonacci parameters") {
  for (int m = 1; m <= 3; ++m) {
    auto base = isolate_pisot_base(mbonacci(m, 5));
    auto p = srs_from_base(base);
    REQUIRE(p.dim() == 4);
    FieldElement inv = FieldElement::beta(*base).inverse();
    FieldElement partial(*base), pw = FieldElement::from_integer(*base, 1);
    for (int i = 0; i < 4; ++i) {
      pw = pw * inv;
      partial += pw * Integer(m);
      CHECK(p.r()[static_cast<std::size_t>(i)] == (i % 2 == 0 ? partial : -partial));
    }
    // -beta r_i - r_{i-1} is an integer.
    FieldElement beta = FieldElement::beta(*base);
    for (int i = 0; i < 4; ++i) {
      FieldElement c = -(beta * p.r()[static_cast<std::size_t>(i)]);
      if (i > 0) c -= p.r()[static_cast<std::size_t>(i - 1)];
      CHECK(c.is_rational());
      CHECK(c.is_integral());
    }
  }
}

TEST_CASE("tau_step orbits") {
  auto p = srs_from_base(isolate_pisot_base(cubic(2, -1, 1)));
  CHECK(tau_step(p, {0, 0}) == SrsState{0, 0});
  std::vector<SrsState> orbit{{-1, 1}, {1, 1}, {1, 0}, {0, -1}, {-1, -1}, {-1, 0}, {0, 0}};
  for (std::size_t i = 0; i + 1 < orbit.size(); ++i) CHECK(tau_step(p, orbit[i]) == orbit[i + 1]);

  for (int m = 1; m <= 4; ++m) {
    auto q = srs_from_base(isolate_pisot_base(mbonacci(m, 3)));
    std::vector<SrsState> chain{{0, 1}, {1, 1}, {1, 0}, {0, -1}, {-1, -1}, {-1, 0}, {0, 0}};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) CHECK(tau_step(q, chain[i]) == chain[i + 1]);
  }
}

TEST_CASE("tau_step alpha override and defining inequality") {
  auto base = isolate_pisot_base(mbonacci(2, 3));
  auto p = srs_from_base(base);
  std::mt19937_64 rng(1);
  FieldElement zero(*base);
  for (int i = 0; i < 500; ++i) {
    SrsState z = random_state(rng, 2, 50);
    SrsState t = tau_step(p, z);
    FieldElement v = p.dot(z) + Integer(t.back()) + p.alpha();
    CHECK(fe_sign(v) >= 0);
    CHECK(fe_compare(v, FieldElement::from_integer(*base, 1)) < 0);
    SrsState t0 = tau_step(p, z, zero);
    CHECK(t0 == tau_zero_step(p, z));
    FieldElement v0 = p.dot(z) + Integer(t0.back());
    CHECK(fe_sign(v0) >= 0);
  }
}

TEST_CASE("phi: conjugacy, injectivity and inverse") {
  auto base = isolate_pisot_base(IntPolynomial::parse("1,-1,-1,-1"));
  NegativeBase nb(base);
  auto p = srs_from_base(base);
  CHECK(fe_sign(phi(p, {0, 0})) == 0);
  auto x = phi(p, {0, 1});
  CHECK(t_step(nb, x).state == phi(p, tau_step(p, {0, 1})));
  CHECK(tau_step(p, {0, 1}) == SrsState{1, 1});

  std::vector<FieldElement> images;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      FieldElement y = phi(p, {a, b});
      CHECK(nb.in_domain(y));
      for (const auto& prev : images) CHECK_FALSE(prev.same_representation(y));
      images.push_back(y);
      auto back = phi_inverse(p, y);
      REQUIRE(back.has_value());
      CHECK(*back == SrsState{a, b});
    }
}

TEST_CASE("witness closure for d-bonacci d = 3") {
  for (int m = 1; m <= 3; ++m) {
    auto p = srs_from_base(isolate_pisot_base(mbonacci(m, 3)));
    auto w = witness_closure(p);
    CHECK(w.saturated);
    CHECK(w.cycles.empty());
    for (const auto& z : w.states) {
      CHECK(std::abs(z[0]) <= 1);
      CHECK(std::abs(z[1]) <= 1);
      CHECK(z != SrsState{1, -1});
      CHECK(z != SrsState{-1, 1});
    }
    CHECK(decide_d0(p).verdict == D0Verdict::InD0);
  }
}

TEST_CASE("witness closure for d-bonacci d = 5 reaches 0 within 11 steps") {
  for (int m = 1; m <= 3; ++m) {
    auto p = srs_from_base(isolate_pisot_base(mbonacci(m, 5)));
    auto w = witness_closure(p);
    REQUIRE(w.saturated);
    CHECK(w.cycles.empty());
    for (auto z : w.states) {
      for (int i = 0; i < 11; ++i) z = tau_step(p, z);
      CHECK(z == SrsState(4, 0));
    }
  }
}

TEST_CASE("closure is closed under both generating maps") {
  auto p = srs_from_base(isolate_pisot_base(mbonacci(1, 4)));
  auto w = witness_closure(p);
  REQUIRE(w.saturated);
  std::unordered_set<SrsState, SrsStateHash> set(w.states.begin(), w.states.end());
  for (int i = 0; i < 3; ++i)
    for (long s : {1L, -1L}) {
      SrsState e(3, 0);
      e[static_cast<std::size_t>(i)] = s;
      CHECK(set.count(e) == 1);
    }
  for (const auto& z : w.states) {
    CHECK(set.count(tau_zero_step(p, z)) == 1);
    SrsState neg = z;
    for (auto& v : neg) v = -v;
    SrsState t = tau_zero_step(p, neg);
    for (auto& v : t) v = -v;
    CHECK(set.count(t) == 1);
  }
}

TEST_CASE("cubic c = 1, b <= -2 has the fixed point (-1,-1)") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{2, -2}, {3, -2}, {5, -3}}) {
    auto p = srs_from_base(isolate_pisot_base(cubic(a, b, 1)));
    CHECK(tau_step(p, {-1, -1}) == SrsState{-1, -1});
    auto w = witness_closure(p);
    CHECK(contains_cycle_through(w, {-1, -1}));
    auto dec = decide_d0(p);
    CHECK(dec.verdict == D0Verdict::NotInD0);
    CHECK(replay_cycle(p, dec.cycle));
  }
}

TEST_CASE("decide_d0 on d-bonacci") {
  for (int m = 1; m <= 3; ++m) {
    for (int d = 2; d <= 8; ++d) {
      auto p = srs_from_base(isolate_pisot_base(mbonacci(m, d)));
      auto serial = witness_closure(p, kDefaultClosureCap, Exec::Serial);
      auto par = witness_closure(p, kDefaultClosureCap, Exec::Parallel);
      CHECK(serial.states == par.states);
      CHECK(serial.cycles == par.cycles);
      auto dec = decide_d0(p);
      INFO("m=" << m << " d=" << d << " closure=" << dec.closure_size);
      if (d == 3 || d == 5) {
        CHECK(dec.verdict == D0Verdict::InD0);
        continue;
      }
      REQUIRE(dec.verdict == D0Verdict::NotInD0);
      CHECK(replay_cycle(p, dec.cycle));
      if (d % 2 == 0) {
        SrsState ones(static_cast<std::size_t>(d - 1), -1);
        CHECK(tau_step(p, ones) == ones);
        CHECK(contains_cycle_through(serial, ones));
      } else {
        SrsState s(static_cast<std::size_t>(d - 1), 0);
        s[0] = -1;
        s[3] = -1;
        SrsState z = s;
        for (int i = 0; i < d - 1; ++i) z = tau_step(p, z);
        CHECK(z == s);
        CHECK(contains_cycle_through(serial, s));
      }
    }
  }
}

TEST_CASE("InD0 agrees with finite orbits of random points") {
  auto base = isolate_pisot_base(mbonacci(1, 3));
  NegativeBase nb(base);
  auto p = srs_from_base(base);
  REQUIRE(decide_d0(p).verdict == D0Verdict::InD0);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    FieldElement x = phi(p, random_state(rng, 2, 200));
    auto seq = digit_sequence(nb, x);
    CHECK(seq.word.eventually_zero());
  }
}

TEST_CASE("certificate JSON") {
  auto p = srs_from_base(isolate_pisot_base(mbonacci(1, 2)));
  auto dec = decide_d0(p);
  REQUIRE(dec.verdict == D0Verdict::NotInD0);
  CHECK(dec.cycle == std::vector<SrsState>{{-1}});
  auto j = dec.to_json();
  CHECK(j["verdict"] == "NotInD0");
  CHECK(j["cycle"].dump() == "[[-1]]");
  CHECK(state_string({-1, 0, 3}) == "(-1,0,3)");
}
