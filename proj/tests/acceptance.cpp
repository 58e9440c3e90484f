// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "negabeta/errors.hpp"
#include "negabeta/finiteness.hpp"
#include "negabeta/negarith.hpp"

using namespace negabeta;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

IntPolynomial mbonacci(int m, int d) {
  std::vector<Integer> c{1};
  for (int i = 0; i < d; ++i) c.emplace_back(-m);
  return IntPolynomial(c);
}

bool contains_state(const std::vector<SrsState>& cycle, const SrsState& s) {
  return std::find(cycle.begin(), cycle.end(), s) != cycle.end();
}

// 1. Cubic units: closed form against the decision procedure.
void cubic_sweep(Outcome& o) {
  int cases = 0;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b)
      for (long c : {-1L, 1L}) {
        CubicClass cls;
        try {
          cls = classify_cubic_unit(a, b, c);
        } catch (const NotCubic&) {
          continue;
        }
        if (cls == CubicClass::NotPisotUnit) continue;
        const IntPolynomial p({1, -a, b, -c});
        auto base = isolate_pisot_base(p);
        o.require(base->pisot_certified(), p.to_string() + " not certified Pisot");
        auto v = decide_minus_f(base);
        ++cases;
        o.require((v.verdict == Verdict::MinusF) == (cls == CubicClass::MinusF),
                  p.to_string() + ": " + to_string(v.verdict) + " vs " + to_string(cls));
        if (v.verdict == Verdict::NotMinusF) o.require(replay_certificate(v, base), p.to_string() + " replay");
      }
  o.require(cases >= 24, "too few cases");
  o.detail << cases << " irreducible cubic Pisot units";
}

// 2. d-bonacci family.
void dbonacci(Outcome& o) {
  int checked = 0;
  for (int m = 1; m <= 3; ++m)
    for (int d = 1; d <= 8; ++d) {
      if (m == 1 && d == 1) continue;  // beta = 1 is excluded
      auto base = isolate_pisot_base(mbonacci(m, d));
      auto v = decide_minus_f(base);
      const std::string tag = "m=" + std::to_string(m) + " d=" + std::to_string(d);
      const bool expect = d == 1 || d == 3 || d == 5;
      o.require((v.verdict == Verdict::MinusF) == expect, tag + " verdict " + to_string(v.verdict));
      ++checked;
      if (expect) continue;
      o.require(replay_certificate(v, base), tag + " certificate replay");
      if (d % 2 == 0) {
        o.require(v.kind == CertificateKind::PMinusOneUnit || v.kind == CertificateKind::SrsCycle, tag + " kind");
        continue;
      }
      // Odd d >= 7: tau^(d-1) fixes (-1,0,0,-1,0,...,0).
      auto p = srs_from_base(base);
      SrsState s(static_cast<std::size_t>(d - 1), 0);
      s[0] = -1;
      s[3] = -1;
      std::vector<SrsState> orbit{s};
      for (SrsState t = tau_step(p, s); t != s && orbit.size() <= static_cast<std::size_t>(d); t = tau_step(p, t))
        orbit.push_back(t);
      SrsState z = s;
      for (int i = 0; i < d - 1; ++i) z = tau_step(p, z);
      o.require(z == s, tag + " tau^(d-1) fixes the point");
      o.require((d - 1) % static_cast<int>(orbit.size()) == 0, tag + " period divides d - 1");
      o.require(replay_cycle(p, canonical_rotation(orbit)), tag + " cycle replay");
      o.require(v.kind == CertificateKind::SrsCycle && contains_state(v.cycle, s), tag + " certificate cycle");
    }
  o.detail << checked << " bases";
}

// 3. Dominant first coefficient.
void dominant(Outcome& o) {
  std::mt19937_64 rng(2024);
  int item1 = 0, done = 0;
  while (done < 20) {
    std::uniform_int_distribution<int> deg(3, 6), small(0, 2), top(0, 8);
    const int d = deg(rng);
    std::vector<long> a(static_cast<std::size_t>(d + 1), 0);
    long rest = 0;
    for (int i = 2; i <= d; ++i) rest += a[static_cast<std::size_t>(i)] = small(rng);
    if (a[static_cast<std::size_t>(d)] == 0) continue;
    const long a1 = top(rng);
    if (a1 < 2 + rest) continue;
    a[1] = a1;
    std::vector<Integer> coeffs{1};
    for (int i = 1; i <= d; ++i) coeffs.emplace_back(i % 2 ? -a[static_cast<std::size_t>(i)] : a[static_cast<std::size_t>(i)]);
    const IntPolynomial p(coeffs);
    auto base = isolate_pisot_base(p);
    auto v = decide_minus_f(base);
    o.require(v.verdict == Verdict::MinusF, p.to_string() + " verdict " + to_string(v.verdict));

    // Bounds on the r_i sums, checked exactly.
    auto srs = srs_from_base(base);
    FieldElement abs_sum(*base), neg_sum(*base);
    for (const auto& r : srs.r()) {
      if (fe_sign(r) < 0) {
        abs_sum -= r;
        neg_sum -= r;
      } else {
        abs_sum += r;
      }
    }
    const FieldElement beta = FieldElement::beta(*base);
    const FieldElement one_over = (beta + Integer(1)).inverse();
    o.require(fe_compare(abs_sum, srs.alpha()) < 0, p.to_string() + " sum |r_i| < alpha");
    o.require(fe_compare(neg_sum, one_over) < 0, p.to_string() + " negative part < 1/(beta+1)");
    const bool by_item1 = v.kind == CertificateKind::CriterionItem && v.criterion_item == 1;
    o.require(by_item1 || v.kind == CertificateKind::WitnessProof || v.kind == CertificateKind::CriterionItem,
              p.to_string() + " certificate");
    item1 += by_item1;
    ++done;
  }
  o.detail << done << " polynomials, item 1 fired for " << item1;
}

// 4. Both sufficient conditions for failure.
void notf(Outcome& o) {
  int ell_bases = 0;
  for (const char* ps : {"1,-1,-1", "1,-2,-2", "1,-3,-3", "1,-3,-2,1", "1,-4,-2,2", "1,-2,-1,1"}) {
    auto base = isolate_pisot_base(IntPolynomial::parse(ps));
    NegativeBase nb(base);
    auto word = check_notf_ell(nb);
    o.require(word.has_value(), std::string(ps) + " finite l-orbit");
    if (!word) continue;
    FinitenessVerdict cert;
    cert.verdict = Verdict::NotMinusF;
    cert.kind = CertificateKind::EllFiniteOrbit;
    cert.ell_digits = *word;
    o.require(replay_certificate(cert, base), std::string(ps) + " 1^w replay");
    o.require(decide_minus_f(base).verdict == Verdict::NotMinusF, std::string(ps) + " verdict");
    ++ell_bases;
  }
  std::vector<IntPolynomial> units;
  for (int m = 1; m <= 3; ++m) units.push_back(IntPolynomial({1, -m, -m}));
  units.push_back(IntPolynomial::parse("1,-1,-1,-1,-1"));
  for (const auto& p : units) {
    auto base = isolate_pisot_base(p);
    auto v = decide_minus_f(base);
    o.require(v.verdict == Verdict::NotMinusF && v.kind == CertificateKind::PMinusOneUnit &&
                  abs(v.p_minus_one) == 1 && replay_certificate(v, base),
              p.to_string() + " p(-1) certificate");
  }
  o.detail << ell_bases << " finite l-orbits, " << units.size() << " unit p(-1)";
}

long sub_expected(int m) { return m == 1 || m % 2 == 0 ? 3 * m + 3 : 3 * m + 4; }

// 5. Maximal fr(x - y) and the witnesses.
void frmax_sub_values(Outcome& o) {
  const long expected[] = {6, 9, 13, 15};
  for (int m = 1; m <= 4; ++m) {
    CubicSystem sys(m);
    auto r = frmax_sub(sys);
    o.require(r.certified == expected[m - 1], "m=" + std::to_string(m) + " got " + std::to_string(r.certified));
    o.require(r.certified == sub_expected(m) && r.diagnostics.empty(), "m=" + std::to_string(m) + " cross-check");
    try {
      auto w = frmax_sub_witness(sys);
      o.require(w.fr == expected[m - 1], "m=" + std::to_string(m) + " witness fr");
    } catch (const WitnessMismatch& e) {
      o.require(false, e.what());
    }
    o.detail << r.certified << (m < 4 ? ", " : "");
  }
}

// 6. Maximal fr(x + y).
void frmax_add_values(Outcome& o) {
  const long expected[] = {6, 7, 13, 14};
  for (int m = 1; m <= 4; ++m) {
    auto r = frmax_add(CubicSystem(m));
    o.require(r.certified == expected[m - 1], "m=" + std::to_string(m) + " got " + std::to_string(r.certified));
    o.detail << r.certified << (m < 4 ? ", " : "");
  }
}

// 7. Exhaustive search over small (-beta)-integers.
void oracle(Outcome& o) {
  CubicSystem sys(1);
  const long sub_cert = frmax_sub(sys).certified, add_cert = frmax_add(sys).certified;
  for (int depth = 1; depth < 7; ++depth)
    o.require(frmax_oracle(sys, depth, FrOp::Sub) <= sub_cert, "sub depth " + std::to_string(depth));
  for (int depth = 1; depth < 8; ++depth)
    o.require(frmax_oracle(sys, depth, FrOp::Add) <= add_cert, "add depth " + std::to_string(depth));
  const long sub7 = frmax_oracle(sys, 7, FrOp::Sub), add8 = frmax_oracle(sys, 8, FrOp::Add);
  o.require(sub7 == 6, "sub depth 7 gave " + std::to_string(sub7));
  o.require(add8 == 6, "add depth 8 gave " + std::to_string(add8));
  o.detail << "sub(7) = " << sub7 << ", add(8) = " << add8;
}

// 8. Closed-form floor, successor chains and the invariant set.
void floor_chains_invariant(Outcome& o) {
  long points = 0;
  for (int m = 1; m <= 6; ++m) {
    CubicSystem sys(m);
    for (long z0 = -m - 1; z0 <= m; ++z0)
      for (long z1 = -m - 1; z1 <= m + 1; ++z1) {
        if (!in_psi_box(z0, z1, m)) continue;
        ++points;
        o.require(floor_rz_alpha_closed_form(z0, z1) == sys.srs().floor_rz({z0, z1}).get_si(),
                  "floor at " + state_string({z0, z1}));
      }
    auto chains = check_tv_chains(sys);
    o.require(chains.empty(), chains.empty() ? "" : chains.front());
    auto paths = check_path_formulas(sys);
    o.require(paths.empty(), paths.empty() ? "" : paths.front());
    o.require(verify_v_invariant(sys, build_v(m)).empty(), "V invariant m=" + std::to_string(m));
  }
  o.detail << points << " box points, m <= 6";
}

// 9. T^n(phi(z)) = phi(tau^n(z)).
void conjugacy(Outcome& o) {
  std::mt19937_64 rng(9);
  int bases = 0;
  for (const char* ps : {"1,-1,-1", "1,-1,-1,-1", "1,-3,-1,-1", "1,-1,-1,-1,-1", "1,-2,-2,-2,-2,-2"}) {
    auto base = isolate_pisot_base(IntPolynomial::parse(ps));
    NegativeBase nb(base);
    auto p = srs_from_base(base);
    std::uniform_int_distribution<long> u(-1000, 1000);
    for (int i = 0; i < 1000; ++i) {
      SrsState z;
      for (int k = 0; k < p.dim(); ++k) z.push_back(u(rng));
      FieldElement x = phi(p, z);
      for (int n = 0; n < 10; ++n) {
        x = t_step(nb, x).state;
        z = tau_step(p, z);
        if (!(x == phi(p, z))) {
          o.require(false, std::string(ps) + " mismatch");
          break;
        }
      }
    }
    ++bases;
  }
  o.detail << bases << " bases x 1000 states x 10 steps";
}

// 10. Quadratic families.
void quadratic(Outcome& o) {
  int pos = 0, neg = 0;
  for (long m = 3; m <= 8; ++m)
    for (long n = 1; n <= m - 2; ++n) {
      auto v = decide_minus_f(isolate_pisot_base(IntPolynomial({1, -m, n})));
      o.require(v.verdict == Verdict::MinusF, "x^2 - " + std::to_string(m) + "x + " + std::to_string(n));
      ++pos;
    }
  for (long m = 1; m <= 8; ++m)
    for (long n = 1; n <= m; ++n) {
      auto base = isolate_pisot_base(IntPolynomial({1, -m, -n}));
      if (!base->pisot_certified()) continue;
      auto v = decide_minus_f(base);
      o.require(v.verdict == Verdict::NotMinusF, "x^2 - " + std::to_string(m) + "x - " + std::to_string(n));
      ++neg;
    }
  o.detail << pos << " with positive conjugate, " << neg << " with negative conjugate";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"cubic units: decision agrees with the closed form", cubic_sweep},
      {"d-bonacci bases m <= 3, d <= 8", dbonacci},
      {"dominant first coefficient", dominant},
      {"finite l-orbit and unit p(-1) certificates", notf},
      {"max fr(x - y) = 6, 9, 13, 15 with witnesses", frmax_sub_values},
      {"max fr(x + y) = 6, 7, 13, 14", frmax_add_values},
      {"exhaustive oracle for m = 1", oracle},
      {"closed-form floor, successor chains, invariant V (m <= 6)", floor_chains_invariant},
      {"conjugacy of T and tau", conjugacy},
      {"quadratic families", quadratic},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << ": " << criteria[i].first << " (" << o.detail.str()
              << "; " << t.str() << " s)\n";
  }
  return failures == 0 ? 0 : 1;
}
