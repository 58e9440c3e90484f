#include "negabeta/negabase.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "negabeta/errors.hpp"

namespace negabeta {

namespace {

constexpr const char* kRadixPoint = "•";

long resolve_budget(long max_steps) { return max_steps < 0 ? step_budget() : max_steps; }

void join(std::ostringstream& os, const std::vector<long>& digits, std::size_t from, std::size_t to,
          bool& first) {
  for (std::size_t i = from; i < to; ++i) {
    if (!first) os << ' ';
    os << digits[i];
    first = false;
  }
}

// Makes the preperiod cover the integer digits so that the radix point falls
// inside it.
void cover_integer_part(DigitWord& w) {
  const auto k = static_cast<std::size_t>(w.radix_k);
  while (w.preperiod.size() < k) {
    if (w.period.empty()) {
      w.preperiod.push_back(0);
    } else {
      w.preperiod.push_back(w.period.front());
      std::rotate(w.period.begin(), w.period.begin() + 1, w.period.end());
    }
  }
}

}  // namespace

std::optional<long> DigitWord::fractional_length() const {
  if (!eventually_zero()) return std::nullopt;
  long n = static_cast<long>(preperiod.size()) - radix_k;
  return n > 0 ? n : 0;
}

std::string DigitWord::to_text() const {
  std::ostringstream os;
  const auto k = std::min(preperiod.size(), static_cast<std::size_t>(std::max<long>(radix_k, 0)));
  bool first = true;
  if (k == 0) {
    os << '0';
    first = false;
  } else {
    join(os, preperiod, 0, k, first);
  }
  os << ' ' << kRadixPoint;
  first = false;
  join(os, preperiod, k, preperiod.size(), first);
  if (truncated) {
    os << " ...";
  } else if (period.empty()) {
    os << " 0^ω";
  } else {
    os << " (per:";
    for (long d : period) os << ' ' << d;
    os << ')';
  }
  return os.str();
}

nlohmann::json DigitWord::to_json() const {
  nlohmann::json j;
  j["preperiod"] = preperiod;
  j["period"] = period;
  j["radix"] = radix_k;
  if (truncated) j["truncated"] = true;
  return j;
}

FieldElement ell_beta(const PisotBase& base) {
  FieldElement beta = FieldElement::beta(base);
  return -(beta * (beta + Integer(1)).inverse());
}

NegativeBase::NegativeBase(BasePtr base) : base_(std::move(base)) {
  ell_ = ell_beta(*base_);
  ell_plus_one_ = ell_ + Integer(1);
  beta_inv_ = FieldElement::beta(*base_).inverse();
  max_digit_ = fe_floor(FieldElement::beta(*base_)).get_si();
}

bool NegativeBase::in_domain(const FieldElement& x) const {
  return fe_compare(x, ell_) >= 0 && fe_compare(x, ell_plus_one_) < 0;
}

bool NegativeBase::in_open_domain(const FieldElement& x) const {
  return fe_compare(x, ell_) > 0 && fe_compare(x, ell_plus_one_) < 0;
}

namespace {

StepResult step_unchecked(const NegativeBase& nb, const FieldElement& x) {
  FieldElement y = -x.times_beta();
  Integer digit = fe_floor(y - nb.ell());
  y -= digit;
  return {std::move(y), digit.get_si()};
}

}  // namespace

StepResult t_step(const NegativeBase& nb, const FieldElement& x) {
  if (!nb.in_domain(x)) throw OutOfDomain("t_step: " + x.to_string() + " is outside [l, l+1)");
  return step_unchecked(nb, x);
}

DigitSequence digit_sequence(const NegativeBase& nb, const FieldElement& x, long max_steps) {
  if (!nb.in_domain(x)) throw OutOfDomain("digit_sequence: " + x.to_string() + " is outside [l, l+1)");
  const long budget = resolve_budget(max_steps);

  DigitSequence out;
  std::unordered_map<FieldElement, std::size_t, RepresentationHash, RepresentationEqual> seen;
  std::vector<long> digits;
  FieldElement cur = x;
  for (long step = 0;; ++step) {
    auto [it, fresh] = seen.emplace(cur, out.orbit.states.size());
    if (!fresh) {
      out.orbit.cycle_start = it->second;
      break;
    }
    out.orbit.states.push_back(cur);
    if (step >= budget) break;
    auto next = step_unchecked(nb, cur);
    digits.push_back(next.digit);
    cur = std::move(next.state);
  }

  DigitWord& w = out.word;
  if (out.orbit.cycle_start) {
    const std::size_t c = *out.orbit.cycle_start;
    w.preperiod.assign(digits.begin(), digits.begin() + static_cast<long>(c));
    w.period.assign(digits.begin() + static_cast<long>(c), digits.end());
    if (w.period == std::vector<long>{0}) w.period.clear();
  } else {
    w.preperiod = std::move(digits);
    w.truncated = true;
  }
  return out;
}

DigitWord expansion(const NegativeBase& nb, const FieldElement& x, long max_steps) {
  if (fe_sign(x) == 0) return DigitWord{};
  const long budget = resolve_budget(max_steps);
  FieldElement y = x;
  long k = 0;
  while (!nb.in_open_domain(y)) {
    if (++k > budget) throw StepBudgetExceeded("expansion: no admissible radix position within budget");
    y = -(y * nb.beta_inverse());
  }
  DigitWord w = digit_sequence(nb, y, budget).word;
  w.radix_k = k;
  cover_integer_part(w);
  return w;
}

FrLength fr_length(const NegativeBase& nb, const FieldElement& x, long max_steps) {
  FrLength out;
  out.word = expansion(nb, x, max_steps);
  out.length = out.word.fractional_length();
  return out;
}

std::vector<FieldElement> enumerate_zmb(const NegativeBase& nb, int depth, Exec exec) {
  const PisotBase& base = nb.base();
  std::vector<FieldElement> level{FieldElement(base)};
  const long digits = nb.max_digit() + 1;
  for (int j = 0; j < depth; ++j) {
    const long n = static_cast<long>(level.size()) * digits;
    std::vector<std::optional<FieldElement>> cand(static_cast<std::size_t>(n));
    auto build = [&](long idx) {
      const auto& y = level[static_cast<std::size_t>(idx / digits)];
      FieldElement c = -((y + Integer(idx % digits)) * nb.beta_inverse());
      if (nb.in_domain(c)) cand[static_cast<std::size_t>(idx)] = std::move(c);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (long idx = 0; idx < n; ++idx) build(idx);
    } else {
      for (long idx = 0; idx < n; ++idx) build(idx);
    }
    std::unordered_set<FieldElement, RepresentationHash, RepresentationEqual> seen;
    std::vector<FieldElement> next;
    for (auto& c : cand) {
      if (c && seen.insert(*c).second) next.push_back(std::move(*c));
    }
    level = std::move(next);
  }
  return level;
}

std::vector<FieldElement> zmb_integers(const NegativeBase& nb, int depth, Exec exec) {
  auto level = enumerate_zmb(nb, depth, exec);
  FieldElement scale = FieldElement::beta_power(nb.base(), depth);
  if (depth % 2 == 1) scale = -scale;
  for (auto& x : level) x *= scale;
  return level;
}

FieldElement digits_value(const PisotBase& base, const std::vector<long>& digits) {
  FieldElement v(base);
  for (long d : digits) {
    v = -v.times_beta();
    v += Integer(d);
  }
  return v;
}

std::vector<long> parse_digit_string(const std::string& text) {
  std::istringstream is(text);
  std::vector<long> out;
  std::string tok;
  bool point = false;
  while (is >> tok) {
    if (tok == kRadixPoint || tok == ".") {
      point = true;
      continue;
    }
    if (point) throw ParseError("digit string has fractional digits: " + text);
    std::size_t used = 0;
    long d = -1;
    try {
      d = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || d < 0) throw ParseError("bad digit '" + tok + "' in: " + text);
    out.push_back(d);
  }
  return out;
}

}  // namespace negabeta
