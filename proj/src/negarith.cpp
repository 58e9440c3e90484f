#include "negabeta/negarith.hpp"

#include <algorithm>
#include <sstream>

#include <omp.h>

#include "negabeta/errors.hpp"

namespace negabeta {

namespace {

IntPolynomial cubic_poly(int m) {
  if (m < 1) throw OutOfDomain("m must be at least 1");
  return IntPolynomial({1, -m, -m, -m});
}

}  // namespace

CubicSystem::CubicSystem(int m)
    : m_(m), nb_(isolate_pisot_base(cubic_poly(m))), srs_(srs_from_base(nb_.base_ptr())) {}

std::string ExtState::to_string() const {
  return "(" + std::to_string(z0) + "," + std::to_string(z1) + "," + std::to_string(h) + ")";
}

std::size_t ExtStateHash::operator()(const ExtState& s) const noexcept {
  std::size_t x = static_cast<std::size_t>(s.z0) * 0x9E3779B97F4A7C15ull;
  x ^= static_cast<std::size_t>(s.z1) + 0x7F4A7C159E3779B9ull + (x << 6) + (x >> 2);
  x ^= static_cast<std::size_t>(s.h + 1) * 0xC2B2AE3D27D4EB4Full;
  return x;
}

std::string RegionLabel::to_string() const {
  switch (kind) {
    case RegionKind::Origin:
      return "Origin";
    case RegionKind::MinusOneMinusOne:
      return "(-1,-1)";
    case RegionKind::Outside:
      return "Outside";
    default:
      break;
  }
  static const char* names = "ABCDEF";
  return std::string(1, names[static_cast<int>(kind)]) + "_" + std::to_string(k);
}

RegionLabel region_classify(long z0, long z1, int m) {
  if (z0 == 0 && z1 == 0) return {RegionKind::Origin, 0};
  if (z0 == -1 && z1 == -1) return {RegionKind::MinusOneMinusOne, 0};
  RegionLabel out;
  if (z1 >= 0 && z0 >= -1 && z0 < z1) {
    out = {RegionKind::A, z1};
  } else if (z0 >= 1 && z1 >= 1 && z1 <= z0) {
    out = {RegionKind::B, z0};
  } else if (z0 >= 1 && z1 <= 0) {
    out = {RegionKind::C, z0 - z1};
  } else if (z1 < 0 && z0 <= 0 && -z0 < -z1) {
    out = {RegionKind::D, -z1};
  } else if (z0 <= -2 && z1 <= -2 && z0 <= z1) {
    out = {RegionKind::E, -z0};
  } else if (z0 <= -2 && z1 >= -1) {
    out = {RegionKind::F, z1 - z0};
  } else {
    return {RegionKind::Outside, 0};
  }
  if (out.k > m + 1) return {RegionKind::Outside, 0};
  return out;
}

std::vector<SrsState> region_points(RegionKind kind, long k) {
  std::vector<SrsState> pts;
  switch (kind) {
    case RegionKind::A:
      for (long j = -1; j < k; ++j) pts.push_back({j, k});
      break;
    case RegionKind::B:
      for (long j = 1; j <= k; ++j) pts.push_back({k, j});
      break;
    case RegionKind::C:
      for (long j = 1; j <= k; ++j) pts.push_back({j, j - k});
      break;
    case RegionKind::D:
      for (long j = 0; j < k; ++j) pts.push_back({-j, -k});
      break;
    case RegionKind::E:
      for (long j = 2; j <= k; ++j) pts.push_back({-k, -j});
      break;
    case RegionKind::F:
      for (long j = 2; j <= k + 1; ++j) pts.push_back({-j, k - j});
      break;
    case RegionKind::Origin:
      pts.push_back({0, 0});
      break;
    case RegionKind::MinusOneMinusOne:
      pts.push_back({-1, -1});
      break;
    case RegionKind::Outside:
      break;
  }
  return pts;
}

bool VSet::full(long z0, long z1) const {
  for (int h = -1; h <= 1; ++h)
    if (!contains({z0, z1, h})) return false;
  return true;
}

std::vector<ExtState> VSet::sorted() const {
  std::vector<ExtState> out(members_.begin(), members_.end());
  std::sort(out.begin(), out.end());
  return out;
}

VSet build_v(int m) {
  if (m < 1) throw OutOfDomain("build_v: m must be at least 1");
  VSet v(m);
  const long n = m + 1;
  auto add = [&](const SrsState& z, std::initializer_list<int> hs) {
    for (int h : hs) v.insert({z[0], z[1], h});
  };
  auto add_all = [&](RegionKind kind, long k, std::initializer_list<int> hs,
                     std::initializer_list<SrsState> skip = {}) {
    for (const auto& z : region_points(kind, k))
      if (std::find(skip.begin(), skip.end(), z) == skip.end()) add(z, hs);
  };

  for (long k = 0; k <= m; ++k)
    for (auto kind : {RegionKind::A, RegionKind::B, RegionKind::C, RegionKind::D, RegionKind::E, RegionKind::F})
      add_all(kind, k, {-1, 0, 1});
  v.erase({-1, m, 1});
  v.erase({0, m, 1});

  add_all(RegionKind::C, n, {1}, {{n, 0}});
  add_all(RegionKind::D, n, {1});
  add_all(RegionKind::D, n, {0}, {{0, -n}});
  add_all(RegionKind::D, n, {-1}, {{0, -n}, {-1, -n}, {-2, -n}});
  add({0, 0}, {-1, 0, 1});
  add({-1, -1}, {-1, 0, 1});
  add_all(RegionKind::E, n, {-1, 0, 1}, {{-n, -n}});
  add_all(RegionKind::F, n, {-1, 0}, {{-n - 1, -1}, {-n, 0}});
  if (m == 1) v.insert({-2, 0, -1});
  return v;
}

bool in_psi_box(long z0, long z1, int m) {
  return -m - 1 <= z0 && z0 <= m && std::abs(z1) <= m + 1 && std::abs(z0 - z1) <= m + 1;
}

long floor_rz_alpha_closed_form(long z0, long z1) {
  if (z0 >= 0 || (z0 == -1 && z1 <= -1)) return z0 - z1;
  return z0 - z1 + 1;
}

long floor_rz_alpha(const CubicSystem& sys, long z0, long z1) {
  if (in_psi_box(z0, z1, sys.m())) return floor_rz_alpha_closed_form(z0, z1);
  return sys.srs().floor_rz({z0, z1}).get_si();
}

std::vector<Transition> tilde_tau_transitions(const CubicSystem& sys, const ExtState& s) {
  const long m = sys.m();
  const long fl = floor_rz_alpha(sys, s.z0, s.z1);
  const ExtState base{s.z1, s.h - fl, 0};
  const long c = (s.z1 - s.z0 - s.h + fl) * m + floor_rz_alpha(sys, base.z0, base.z1);
  std::vector<Transition> out;
  for (int hp = -1; hp <= 1; ++hp) {
    const long b = hp - c;
    if (b < -2 * m || b > m) continue;
    ExtState t = base;
    t.h = hp;
    out.push_back({b, t});
  }
  return out;
}

std::vector<ExtState> tilde_tau(const CubicSystem& sys, const ExtState& s) {
  std::vector<ExtState> out;
  for (const auto& t : tilde_tau_transitions(sys, s)) out.push_back(t.to);
  return out;
}

FieldElement ext_phi(const CubicSystem& sys, const ExtState& s) {
  return phi(sys.srs(), s.z()) + Integer(s.h);
}

std::optional<ExtState> ext_phi_inverse(const CubicSystem& sys, const FieldElement& x) {
  const long h = fe_floor(x - sys.nb().ell()).get_si();
  if (h < -1 || h > 1) return std::nullopt;
  auto z = phi_inverse(sys.srs(), x - Integer(h));
  if (!z) return std::nullopt;
  return ExtState{(*z)[0], (*z)[1], static_cast<int>(h)};
}

std::vector<Violation> verify_v_invariant(const CubicSystem& sys, const VSet& v, Exec exec) {
  const auto members = v.sorted();
  std::vector<std::vector<Violation>> per(members.size());
  auto check = [&](std::size_t i) {
    for (const auto& t : tilde_tau(sys, members[i]))
      if (!v.contains(t)) per[i].push_back({members[i], t});
  };
  const long n = static_cast<long>(members.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) check(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) check(static_cast<std::size_t>(i));
  }
  std::vector<Violation> out;
  for (auto& p : per) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<std::string> check_tv_chains(const CubicSystem& sys) {
  const long m = sys.m();
  std::vector<std::string> failures;
  auto tau = [&](const SrsState& z) { return tau_step(sys.srs(), z); };
  auto in_set = [](const SrsState& z, RegionKind kind, long k) {
    auto pts = region_points(kind, k);
    return std::find(pts.begin(), pts.end(), z) != pts.end();
  };
  auto chain = [&](RegionKind from, long kf, RegionKind to, long kt, std::optional<SrsState> skip = std::nullopt) {
    for (const auto& z : region_points(from, kf)) {
      if (skip && z == *skip) continue;
      SrsState t = tau(z);
      if (!in_set(t, to, kt))
        failures.push_back(RegionLabel{from, kf}.to_string() + " -> " + RegionLabel{to, kt}.to_string() + ": " +
                           state_string(z) + " maps to " + state_string(t));
    }
  };
  for (long k = 3; k <= m + 1; ++k) {
    chain(RegionKind::C, k, RegionKind::D, k, SrsState{m + 1, 0});
    chain(RegionKind::D, k, RegionKind::E, k);
    chain(RegionKind::E, k, RegionKind::F, k - 1);
  }
  for (long k = 1; k <= m; ++k) {
    chain(RegionKind::F, k + 1, RegionKind::A, k);
    chain(RegionKind::A, k, RegionKind::B, k);
    chain(RegionKind::B, k, RegionKind::C, k);
    chain(RegionKind::C, k, RegionKind::D, k);
  }
  const std::vector<std::pair<SrsState, SrsState>> exceptional = {
      {{0, -2}, {-2, -2}},  {{-2, -2}, {-2, -1}}, {{-2, -1}, {-1, 0}}, {{-1, 0}, {0, 0}},
      {{-1, -2}, {-2, -1}}, {{0, -1}, {-1, -1}},  {{-1, -1}, {-1, 0}}, {{-m - 2, -1}, {-1, m}},
  };
  for (const auto& [z, t] : exceptional) {
    SrsState got = tau(z);
    if (got != t) failures.push_back(state_string(z) + " maps to " + state_string(got) + ", expected " + state_string(t));
  }
  return failures;
}

std::vector<std::string> check_path_formulas(const CubicSystem& sys) {
  const long m = sys.m();
  std::vector<std::string> failures;
  auto check = [&](RegionKind kind, long k, long target, long n) {
    const auto dest = region_points(RegionKind::D, target);
    for (const auto& z : region_points(kind, k)) {
      SrsState cur = z;
      long steps = 0;
      for (; steps <= n; ++steps) {
        if (std::find(dest.begin(), dest.end(), cur) != dest.end()) break;
        cur = tau_step(sys.srs(), cur);
      }
      if (steps != n)
        failures.push_back(RegionLabel{kind, k}.to_string() + ": " + state_string(z) + " reaches D_" +
                           std::to_string(target) + " after " + (steps > n ? "more than " : "") +
                           std::to_string(steps) + " steps, expected " + std::to_string(n));
    }
  };
  for (long k = 1; 2 * k <= m; ++k) {
    check(RegionKind::F, 2 * k + 1, 2, 6 * k - 2);
    check(RegionKind::A, 2 * k, 2, 6 * k - 3);
    check(RegionKind::B, 2 * k, 2, 6 * k - 4);
    check(RegionKind::C, 2 * k, 2, 6 * k - 5);
    check(RegionKind::D, 2 * k + 1, 1, 6 * k);
    check(RegionKind::E, 2 * k + 1, 1, 6 * k - 1);
  }
  for (long k = 2; 2 * k <= m + 1; ++k) {
    check(RegionKind::D, 2 * k, 2, 6 * k - 6);
    check(RegionKind::E, 2 * k, 2, 6 * k - 7);
  }
  for (long k = 1; 2 * k <= m + 1; ++k) {
    check(RegionKind::F, 2 * k, 1, 6 * k - 2);
    check(RegionKind::A, 2 * k - 1, 1, 6 * k - 3);
    check(RegionKind::B, 2 * k - 1, 1, 6 * k - 4);
    check(RegionKind::C, 2 * k - 1, 1, 6 * k - 5);
  }
  for (auto [z, n] : std::vector<std::pair<SrsState, long>>{{{0, -2}, 4}, {{-1, -2}, 3}, {{0, -1}, 3}}) {
    const long got = steps_to_zero(sys, z);
    if (got != n)
      failures.push_back(state_string(z) + " reaches the origin in " + std::to_string(got) + " steps, expected " +
                         std::to_string(n));
  }
  return failures;
}

long steps_to_zero(const CubicSystem& sys, const SrsState& z, long cap) {
  SrsState cur = z;
  for (long n = 0; n <= cap; ++n) {
    if (cur[0] == 0 && cur[1] == 0) return n;
    cur = tau_step(sys.srs(), cur);
  }
  return -1;
}

std::vector<ExtState> reachable_states(const CubicSystem& sys, Exec exec) {
  std::unordered_set<ExtState, ExtStateHash> seen{{0, 0, 0}};
  std::vector<ExtState> frontier{{0, 0, 0}};
  while (!frontier.empty()) {
    std::vector<std::vector<ExtState>> next(frontier.size());
    const long n = static_cast<long>(frontier.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (long i = 0; i < n; ++i) next[i] = tilde_tau(sys, frontier[static_cast<std::size_t>(i)]);
    } else {
      for (long i = 0; i < n; ++i) next[i] = tilde_tau(sys, frontier[static_cast<std::size_t>(i)]);
    }
    frontier.clear();
    for (const auto& succ : next)
      for (const auto& t : succ)
        if (seen.insert(t).second) frontier.push_back(t);
  }
  std::vector<ExtState> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

const char* to_string(FrOp op) { return op == FrOp::Add ? "add" : "sub"; }

namespace {

struct StartCount {
  SrsState z;
  long steps = 0;
};

std::vector<StartCount> count_steps(const CubicSystem& sys, const std::vector<SrsState>& starts, Exec exec) {
  std::vector<StartCount> out(starts.size());
  const long n = static_cast<long>(starts.size());
  auto one = [&](long i) {
    const auto& z = starts[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = {z, steps_to_zero(sys, z)};
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  for (const auto& c : out)
    if (c.steps < 0) throw StepBudgetExceeded("orbit of " + state_string(c.z) + " does not reach 0");
  return out;
}

const StartCount& argmax(const std::vector<StartCount>& v) {
  if (v.empty()) throw Error("empty start-state set");
  // Ties go to the lexicographically smallest state.
  return *std::max_element(v.begin(), v.end(), [](const StartCount& a, const StartCount& b) {
    return a.steps != b.steps ? a.steps < b.steps : b.z < a.z;
  });
}

std::vector<SrsState> sorted_unique(std::vector<SrsState> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// h with -Phi(-z, h) = phi(z).
long add_lift(const CubicSystem& sys, const SrsState& z) {
  return floor_rz_alpha(sys, -z[0], -z[1]) + floor_rz_alpha(sys, z[0], z[1]);
}

}  // namespace

FrmaxResult frmax_sub(const CubicSystem& sys, Exec exec) {
  const VSet v = build_v(sys.m());
  std::vector<SrsState> v_starts, reach_starts;
  for (const auto& s : v.sorted())
    if (s.h == 0) v_starts.push_back(s.z());
  for (const auto& s : reachable_states(sys, exec))
    if (s.h == 0) reach_starts.push_back(s.z());

  FrmaxResult r;
  r.m = sys.m();
  const auto v_counts = count_steps(sys, v_starts, exec);
  r.v_bound = argmax(v_counts).steps;
  const auto counts = count_steps(sys, sorted_unique(reach_starts), exec);
  const auto& best = argmax(counts);
  r.certified = best.steps;
  r.argmax = best.z;
  r.start_states = counts.size();
  for (auto* check : {&check_tv_chains, &check_path_formulas})
    for (auto& f : (*check)(sys)) r.diagnostics.push_back(std::move(f));
  return r;
}

FrmaxResult frmax_add(const CubicSystem& sys, Exec exec) {
  const long m = sys.m();
  const VSet v = build_v(static_cast<int>(m));
  FrmaxResult r;
  r.m = sys.m();

  std::vector<SrsState> v_starts;
  for (const auto& s : v.sorted()) {
    SrsState z{-s.z0, -s.z1};
    if (s.h == add_lift(sys, z)) v_starts.push_back(z);
  }
  v_starts = sorted_unique(std::move(v_starts));
  for (const auto& z : v_starts)
    for (long j = 2; j <= m + 1; ++j)
      if (-z[0] == -j && -z[1] == m - j + 1)
        r.diagnostics.push_back("start state " + state_string(z) + " has -z = (-j, m-j+1) with j = " +
                                std::to_string(j));
  r.v_bound = argmax(count_steps(sys, v_starts, exec)).steps;

  std::vector<SrsState> reach_starts;
  for (const auto& s : reachable_states(sys, exec)) {
    SrsState z{-s.z0, -s.z1};
    if (s.h == add_lift(sys, z)) reach_starts.push_back(z);
  }
  const auto counts = count_steps(sys, sorted_unique(std::move(reach_starts)), exec);
  const auto& best = argmax(counts);
  r.certified = best.steps;
  r.argmax = best.z;
  r.start_states = counts.size();
  return r;
}

namespace {

std::string join_digits(const std::vector<long>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(d[i]);
  }
  return s;
}

}  // namespace

std::pair<std::string, std::string> frmax_sub_witness_digits(int m) {
  if (m < 1) throw OutOfDomain("m must be at least 1");
  if (m == 1) return {"1 1", "1 1 0 0 0"};
  std::vector<long> x, y;
  auto push = [](std::vector<long>& v, std::initializer_list<long> d) { v.insert(v.end(), d); };
  const long blocks = m % 2 == 0 ? m / 2 : (m - 1) / 2;
  for (long k = 1; k <= blocks; ++k) {
    push(x, {0, 0, 0, 0, 2 * k, 2 * k});
    push(y, {0, 2 * k, 2 * k, 0, 0, 0});
  }
  if (m % 2 == 0) {
    push(x, {0, 0, 0, 0});
    push(y, {0, 0, 1, 2});
  } else {
    push(x, {0, 0, 0, 0, m, m, 0, 0, 0, 0, 0, m});
    push(y, {0, m, 0, 0, 0, 0, 0, 0, 1, 2, 0, 0});
  }
  return {join_digits(x), join_digits(y)};
}

FrmaxWitness frmax_sub_witness(const CubicSystem& sys) {
  auto [xs, ys] = frmax_sub_witness_digits(sys.m());
  FrmaxWitness w;
  w.x_digits = xs;
  w.y_digits = ys;
  w.x = digits_value(sys.base(), parse_digit_string(xs));
  w.y = digits_value(sys.base(), parse_digit_string(ys));
  for (const auto* v : {&w.x, &w.y}) {
    auto fr = fr_length(sys.nb(), *v);
    if (!fr.finite() || *fr.length != 0) throw WitnessMismatch("witness component is not a (-beta)-integer");
    auto digits = parse_digit_string(v == &w.x ? xs : ys);
    digits.erase(digits.begin(), std::find_if(digits.begin(), digits.end(), [](long d) { return d != 0; }));
    if (expansion(sys.nb(), *v).preperiod != digits)
      throw WitnessMismatch("witness digit string is not the (-beta)-expansion of its value");
  }
  auto fr = fr_length(sys.nb(), w.x - w.y);
  if (!fr.finite()) throw WitnessMismatch("x - y has an infinite expansion");
  w.fr = *fr.length;
  const long cert = frmax_sub(sys).certified;
  if (w.fr != cert)
    throw WitnessMismatch("fr(x - y) = " + std::to_string(w.fr) + " but the certified bound is " + std::to_string(cert));
  return w;
}

long frmax_oracle(const CubicSystem& sys, int depth, FrOp op, Exec exec, long max_pairs) {
  const auto ints = zmb_integers(sys.nb(), depth, exec);
  const long n = static_cast<long>(ints.size());
  const long pairs = op == FrOp::Sub ? n * n : n * (n + 1) / 2;
  if (pairs > max_pairs)
    throw BudgetExceeded(std::to_string(pairs) + " pairs exceed the limit of " + std::to_string(max_pairs));

  // Distinct values of x op y.
  std::unordered_set<FieldElement, RepresentationHash, RepresentationEqual> values;
  for (long i = 0; i < n; ++i)
    for (long j = op == FrOp::Sub ? 0 : i; j < n; ++j) {
      const auto& x = ints[static_cast<std::size_t>(i)];
      const auto& y = ints[static_cast<std::size_t>(j)];
      values.insert(op == FrOp::Sub ? x - y : x + y);
    }
  std::vector<FieldElement> todo(values.begin(), values.end());

  const long count = static_cast<long>(todo.size());
  std::vector<long> fr(todo.size(), 0);
  auto one = [&](long i) {
    auto r = fr_length(sys.nb(), todo[static_cast<std::size_t>(i)]);
    fr[static_cast<std::size_t>(i)] = r.finite() ? *r.length : -1;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < count; ++i) one(i);
  } else {
    for (long i = 0; i < count; ++i) one(i);
  }
  long best = 0;
  for (long v : fr) {
    if (v < 0) throw StepBudgetExceeded("an oracle value has no finite expansion within the budget");
    best = std::max(best, v);
  }
  return best;
}

char region_map_char(const VSet& v, long z0, long z1) {
  const bool lo = v.contains({z0, z1, -1}), mid = v.contains({z0, z1, 0}), hi = v.contains({z0, z1, 1});
  if (lo && mid && hi) return '#';
  if (!lo && mid && hi) return 'u';
  if (lo && mid && !hi) return 'n';
  if (!lo && !mid && hi) return 'o';
  if (lo && !mid && !hi) return '-';
  if (!lo && mid && !hi) return '0';
  if (lo && !mid && hi) return 'x';
  return '.';
}

std::string region_map(const VSet& v, long radius) {
  std::ostringstream os;
  for (long z1 = radius; z1 >= -radius; --z1) {
    for (long z0 = -radius; z0 <= radius; ++z0) {
      if (z0 > -radius) os << ' ';
      os << region_map_char(v, z0, z1);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace negabeta
