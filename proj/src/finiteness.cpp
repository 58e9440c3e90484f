#include "negabeta/finiteness.hpp"

#include <algorithm>
#include <sstream>

#include "negabeta/errors.hpp"

namespace negabeta {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::MinusF:
      return "MinusF";
    case Verdict::NotMinusF:
      return "NotMinusF";
    case Verdict::TrivialFin0:
      return "TrivialFin0";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::EllFiniteOrbit:
      return "EllFiniteOrbit";
    case CertificateKind::PMinusOneUnit:
      return "PMinusOneUnit";
    case CertificateKind::SrsCycle:
      return "SrsCycle";
    case CertificateKind::WitnessProof:
      return "WitnessProof";
    case CertificateKind::CriterionItem:
      return "CriterionItem";
    case CertificateKind::SmallBeta:
      return "SmallBeta";
    case CertificateKind::None:
      return "None";
  }
  return "?";
}

const char* to_string(CubicClass c) {
  switch (c) {
    case CubicClass::MinusF:
      return "MinusF";
    case CubicClass::NotMinusF:
      return "NotMinusF";
    case CubicClass::NotPisotUnit:
      return "NotPisotUnit";
  }
  return "?";
}

nlohmann::json FinitenessVerdict::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["pisot_certified"] = pisot_certified;
  nlohmann::json cert;
  cert["kind"] = to_string(kind);
  switch (kind) {
    case CertificateKind::EllFiniteOrbit:
      cert["ell_digits"] = ell_digits.to_json();
      break;
    case CertificateKind::PMinusOneUnit:
      cert["poly"] = unit_poly.to_csv();
      cert["p_minus_one"] = p_minus_one.get_si();
      break;
    case CertificateKind::SrsCycle:
      cert["cycle"] = cycle;
      if (criterion_item) cert["item"] = criterion_item;
      break;
    case CertificateKind::WitnessProof:
      cert["closure_size"] = closure_size;
      break;
    case CertificateKind::CriterionItem:
      cert["item"] = criterion_item;
      break;
    case CertificateKind::SmallBeta:
    case CertificateKind::None:
      break;
  }
  j["certificate"] = cert;
  j["notes"] = notes;
  return j;
}

std::string FinitenessVerdict::to_text() const {
  std::ostringstream os;
  os << "verdict: " << to_string(verdict) << '\n';
  os << "certificate: " << to_string(kind);
  switch (kind) {
    case CertificateKind::EllFiniteOrbit:
      os << " d(l) = " << ell_digits.to_text();
      break;
    case CertificateKind::PMinusOneUnit:
      os << " p(x) = " << unit_poly.to_string() << ", p(-1) = " << p_minus_one.get_str();
      break;
    case CertificateKind::SrsCycle:
      os << " cycle:";
      for (const auto& z : cycle) os << ' ' << state_string(z);
      if (criterion_item) os << " (item " << criterion_item << ")";
      break;
    case CertificateKind::WitnessProof:
      os << " closure of " << closure_size << " states, no nonzero cycle";
      break;
    case CertificateKind::CriterionItem:
      os << " item " << criterion_item;
      break;
    case CertificateKind::SmallBeta:
      os << " beta < (1+sqrt 5)/2";
      break;
    case CertificateKind::None:
      break;
  }
  os << '\n';
  for (const auto& n : notes) os << "note: " << n << '\n';
  return os.str();
}

std::optional<DigitWord> check_notf_ell(const NegativeBase& nb, long max_steps, bool* budget_hit) {
  auto seq = digit_sequence(nb, nb.ell(), max_steps);
  if (budget_hit) *budget_hit = seq.word.truncated;
  if (!seq.word.eventually_zero()) return std::nullopt;
  return seq.word;
}

std::optional<Integer> check_notf_punit(const IntPolynomial& p) {
  Integer v = p.eval(Integer(-1));
  if (abs(v) == 1) return v;
  return std::nullopt;
}

namespace {

FieldElement sum_abs(const SrsParams& p) {
  FieldElement s(p.base());
  for (const auto& r : p.r()) s += fe_sign(r) < 0 ? -r : r;
  return s;
}

}  // namespace

std::optional<CriterionResult> criterion_regions(const SrsParams& p) {
  const int d = p.dim();
  const FieldElement& alpha = p.alpha();
  const FieldElement alpha_minus_one = alpha - Integer(1);
  const bool abs_ok = fe_compare(sum_abs(p), alpha) <= 0;

  std::vector<int> signs;
  for (const auto& r : p.r()) signs.push_back(fe_sign(r));
  const long negatives = std::count(signs.begin(), signs.end(), -1);

  // Item 3: exactly one negative entry, at index d - k.
  if (abs_ok && negatives == 1) {
    const int idx = static_cast<int>(std::find(signs.begin(), signs.end(), -1) - signs.begin());
    const int k = d - idx;
    FieldElement s(p.base());
    for (int j = 1; j * k <= d; ++j) s += p.r()[static_cast<std::size_t>(d - j * k)];
    CriterionResult out{3, D0Verdict::InD0, {}};
    if (fe_compare(s, alpha_minus_one) <= 0) {
      SrsState z(static_cast<std::size_t>(d), 0);
      for (int j = 1; j * k <= d; ++j) z[static_cast<std::size_t>(d - j * k)] = -1;
      std::vector<SrsState> orbit{z};
      for (SrsState t = tau_step(p, z); t != z && orbit.size() <= static_cast<std::size_t>(d) + 1; t = tau_step(p, t))
        orbit.push_back(t);
      out.verdict = D0Verdict::NotInD0;
      out.cycle = canonical_rotation(std::move(orbit));
      if (!replay_cycle(p, out.cycle)) throw Error("criterion_regions: periodic point does not replay");
    }
    return out;
  }

  // Item 2: 0 <= r_0 <= r_1 <= ... <= r_{d-1} <= alpha.
  if (d > 0 && signs.front() >= 0) {
    bool chain = fe_compare(p.r().back(), alpha) <= 0;
    for (int i = 0; chain && i + 1 < d; ++i)
      chain = fe_compare(p.r()[static_cast<std::size_t>(i)], p.r()[static_cast<std::size_t>(i + 1)]) <= 0;
    if (chain) return CriterionResult{2, D0Verdict::InD0, {}};
  }

  // Item 1.
  if (abs_ok) {
    FieldElement neg(p.base());
    for (int i = 0; i < d; ++i)
      if (signs[static_cast<std::size_t>(i)] < 0) neg += p.r()[static_cast<std::size_t>(i)];
    if (fe_compare(neg, alpha_minus_one) > 0) return CriterionResult{1, D0Verdict::InD0, {}};
  }
  return std::nullopt;
}

FinitenessVerdict decide_minus_f(const BasePtr& base, long cap, const std::vector<IntPolynomial>& extra, Exec exec) {
  const PisotBase& b = *base;
  if (b.minpoly().coeff(0) == 0) throw OutOfDomain("decide_minus_f: polynomial is divisible by x");

  FinitenessVerdict v;
  v.pisot_certified = b.pisot_certified();
  if (!v.pisot_certified) v.notes.emplace_back("base is not certified Pisot; (-F) requires a Pisot base");

  const FieldElement beta = FieldElement::beta(b);
  if (fe_sign(beta * beta - beta - Integer(1)) < 0) {
    v.verdict = Verdict::TrivialFin0;
    v.kind = CertificateKind::SmallBeta;
    return v;
  }

  std::vector<IntPolynomial> polys{b.minpoly()};
  for (const auto& q : extra) {
    if (!b.vanishes_at_beta(detail::to_ratpoly(q)))
      throw OutOfDomain("extra polynomial " + q.to_string() + " does not vanish at beta");
    polys.push_back(q);
  }
  for (const auto& q : polys) {
    if (auto val = check_notf_punit(q)) {
      v.verdict = Verdict::NotMinusF;
      v.kind = CertificateKind::PMinusOneUnit;
      v.unit_poly = q;
      v.p_minus_one = *val;
      return v;
    }
  }

  NegativeBase nb(base);
  bool budget_hit = false;
  if (auto word = check_notf_ell(nb, -1, &budget_hit)) {
    v.verdict = Verdict::NotMinusF;
    v.kind = CertificateKind::EllFiniteOrbit;
    v.ell_digits = *word;
    return v;
  }
  if (budget_hit) v.notes.emplace_back("orbit of l not resolved within the step budget");

  const SrsParams p = srs_from_base(base);
  if (auto crit = criterion_regions(p)) {
    v.criterion_item = crit->item;
    if (crit->verdict == D0Verdict::InD0) {
      v.verdict = Verdict::MinusF;
      v.kind = CertificateKind::CriterionItem;
    } else {
      v.verdict = Verdict::NotMinusF;
      v.kind = CertificateKind::SrsCycle;
      v.cycle = crit->cycle;
    }
    return v;
  }

  D0Decision dec = decide_d0(p, cap, exec);
  v.closure_size = dec.closure_size;
  switch (dec.verdict) {
    case D0Verdict::InD0:
      v.verdict = Verdict::MinusF;
      v.kind = CertificateKind::WitnessProof;
      break;
    case D0Verdict::NotInD0:
      v.verdict = Verdict::NotMinusF;
      v.kind = CertificateKind::SrsCycle;
      v.cycle = dec.cycle;
      break;
    case D0Verdict::Inconclusive:
      v.verdict = Verdict::Inconclusive;
      v.notes.emplace_back("witness closure exceeded the cap of " + std::to_string(cap) + " states");
      break;
  }
  return v;
}

bool replay_certificate(const FinitenessVerdict& v, const BasePtr& base) {
  const PisotBase& b = *base;
  switch (v.kind) {
    case CertificateKind::EllFiniteOrbit: {
      NegativeBase nb(base);
      auto seq = digit_sequence(nb, nb.ell());
      if (!(seq.word == v.ell_digits) || !seq.word.eventually_zero()) return false;
      // -1/(beta+1) is then a fixed point with digit 1, so its expansion is 1^ω.
      FieldElement x = -(FieldElement::beta(b) + Integer(1)).inverse();
      auto fixed = digit_sequence(nb, x);
      return fixed.word.preperiod.empty() && fixed.word.period == std::vector<long>{1};
    }
    case CertificateKind::PMinusOneUnit:
      return abs(v.unit_poly.eval(Integer(-1))) == 1 && v.unit_poly.eval(Integer(-1)) == v.p_minus_one &&
             b.vanishes_at_beta(detail::to_ratpoly(v.unit_poly));
    case CertificateKind::SrsCycle: {
      auto p = srs_from_base(base);
      bool nonzero = false;
      for (const auto& z : v.cycle)
        nonzero = nonzero || std::any_of(z.begin(), z.end(), [](long c) { return c != 0; });
      return nonzero && replay_cycle(p, v.cycle);
    }
    case CertificateKind::WitnessProof: {
      auto dec = decide_d0(srs_from_base(base));
      return dec.verdict == D0Verdict::InD0 && dec.closure_size == v.closure_size;
    }
    case CertificateKind::CriterionItem: {
      auto crit = criterion_regions(srs_from_base(base));
      return crit && crit->item == v.criterion_item && crit->verdict == D0Verdict::InD0;
    }
    case CertificateKind::SmallBeta: {
      FieldElement beta = FieldElement::beta(b);
      return fe_sign(beta * beta - beta - Integer(1)) < 0;
    }
    case CertificateKind::None:
      return false;
  }
  return false;
}

bool cubic_pisot_by_coefficients(long a, long b, long c) {
  const long sc = c > 0 ? 1 : (c < 0 ? -1 : 0);
  return std::abs(b + 1) < a + c && b + c * c < sc * (1 + a * c);
}

CubicClass classify_cubic_unit(long a, long b, long c) {
  if (c != 1 && c != -1) throw OutOfDomain("classify_cubic_unit: constant term must be +-1");
  // A monic integer cubic is reducible iff it has a root dividing c, i.e. +-1.
  IntPolynomial p({1, -a, b, -c});
  if (p.eval(Integer(1)) == 0 || p.eval(Integer(-1)) == 0)
    throw NotCubic("x^3 - " + std::to_string(a) + "x^2 + ... has a rational root");
  if (!cubic_pisot_by_coefficients(a, b, c)) return CubicClass::NotPisotUnit;
  const bool minus_f = c == 1 && -1 <= b && b < a && std::abs(a) + std::abs(b) >= 2;
  return minus_f ? CubicClass::MinusF : CubicClass::NotMinusF;
}

}  // namespace negabeta
