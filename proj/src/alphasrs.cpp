#include "negabeta/alphasrs.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "negabeta/errors.hpp"

namespace negabeta {

namespace {

constexpr int kShift = 62;
constexpr long kFastCoordLimit = 1L << 40;

std::optional<__int128> to_int128(const Integer& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 120) return std::nullopt;
  Integer a = abs(v);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  unsigned __int128 r = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  __int128 s = static_cast<__int128>(r);
  return sgn(v) < 0 ? -s : s;
}

bool scaled_bounds(const FieldElement& x, __int128& lo, __int128& hi) {
  RationalInterval iv = fe_enclose(x, kShift + 16);
  Rational scale(Integer(1) << kShift);
  Rational l = iv.lo * scale, h = iv.hi * scale;
  Integer fl, ch;
  mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
  mpz_cdiv_q(ch.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  auto a = to_int128(fl), b = to_int128(ch);
  if (!a || !b) return false;
  lo = *a;
  hi = *b;
  return true;
}

}  // namespace

std::size_t SrsStateHash::operator()(const SrsState& z) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (long v : z) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string state_string(const SrsState& z) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < z.size(); ++i) os << (i ? "," : "") << z[i];
  os << ')';
  return os.str();
}

SrsParams::SrsParams(BasePtr base, std::vector<FieldElement> r, FieldElement alpha)
    : base_(std::move(base)), r_(std::move(r)), alpha_(std::move(alpha)) {
  fast_ok_ = scaled_bounds(alpha_, alpha_lo_, alpha_hi_);
  for (const auto& ri : r_) {
    __int128 lo = 0, hi = 0;
    fast_ok_ = fast_ok_ && scaled_bounds(ri, lo, hi);
    r_lo_.push_back(lo);
    r_hi_.push_back(hi);
  }
}

FieldElement SrsParams::dot(const SrsState& z) const {
  FieldElement acc(*base_);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (z[i] != 0) acc += r_[i] * Integer(z[i]);
  }
  return acc;
}

bool SrsParams::fast_floor(const SrsState& z, bool zero_alpha, long& out) const {
  if (!fast_ok_) return false;
  __int128 lo = zero_alpha ? 0 : alpha_lo_;
  __int128 hi = zero_alpha ? 0 : alpha_hi_;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const long v = z[i];
    if (v > kFastCoordLimit || v < -kFastCoordLimit) return false;
    if (v >= 0) {
      lo += static_cast<__int128>(v) * r_lo_[i];
      hi += static_cast<__int128>(v) * r_hi_[i];
    } else {
      lo += static_cast<__int128>(v) * r_hi_[i];
      hi += static_cast<__int128>(v) * r_lo_[i];
    }
  }
  const __int128 a = lo >> kShift, b = hi >> kShift;
  if (a != b) return false;
  out = static_cast<long>(a);
  return true;
}

Integer SrsParams::floor_rz(const SrsState& z, bool zero_alpha) const {
  long v = 0;
  if (fast_floor(z, zero_alpha, v)) return Integer(v);
  FieldElement x = dot(z);
  if (!zero_alpha) x += alpha_;
  return fe_floor(x);
}

SrsParams srs_from_base(BasePtr base) {
  const PisotBase& b = *base;
  const int d = b.degree();
  const auto& p = b.minpoly();
  auto a = [&](int i) { return p.coeff(d - i); };  // a_i

  const FieldElement beta = FieldElement::beta(b);
  const FieldElement inv = beta.inverse();
  std::vector<FieldElement> inv_pow{FieldElement::from_integer(b, 1)};
  for (int k = 1; k <= d; ++k) inv_pow.push_back(inv_pow.back() * inv);

  std::vector<FieldElement> r;
  for (int i = 0; i <= d - 2; ++i) {
    FieldElement s(b);
    for (int j = 0; j <= i; ++j) s += inv_pow[static_cast<std::size_t>(j + 1)] * a(d - i + j);
    if ((d - i) % 2 != 0) s = -s;
    r.push_back(std::move(s));
  }

  // (x + beta) Q(x) = (-1)^d p(-x), coefficient by coefficient.
  auto target = [&](int k) {  // coefficient of x^k in (-1)^d p(-x)
    Integer c = p.coeff(k);
    return ((d - k) % 2 == 0) ? c : Integer(-c);
  };
  auto q = [&](int k) -> FieldElement {  // coefficient of x^k in Q
    if (k == d - 1) return FieldElement::from_integer(b, 1);
    if (k < 0 || k > d - 1) return FieldElement(b);
    return r[static_cast<std::size_t>(k)];
  };
  for (int k = 0; k <= d; ++k) {
    FieldElement lhs = q(k - 1) + beta * q(k);
    if (!(lhs == FieldElement::from_integer(b, target(k))))
      throw Error("srs_from_base: factorization identity fails at x^" + std::to_string(k));
  }

  FieldElement alpha = beta * (beta + Integer(1)).inverse();
  return SrsParams(std::move(base), std::move(r), std::move(alpha));
}

SrsState tau_zero_step(const SrsParams& p, const SrsState& z) {
  SrsState out(z.begin() + (z.empty() ? 0 : 1), z.end());
  if (z.empty()) return out;
  out.push_back(-p.floor_rz(z, true).get_si());
  return out;
}

SrsState tau_step(const SrsParams& p, const SrsState& z, const std::optional<FieldElement>& alpha_override) {
  if (static_cast<int>(z.size()) != p.dim()) throw Error("tau_step: state dimension mismatch");
  if (z.empty()) return z;
  Integer f;
  if (!alpha_override) {
    f = p.floor_rz(z);
  } else if (fe_sign(*alpha_override) == 0) {
    f = p.floor_rz(z, true);
  } else {
    f = fe_floor(p.dot(z) + *alpha_override);
  }
  SrsState out(z.begin() + 1, z.end());
  out.push_back(-f.get_si());
  return out;
}

FieldElement phi(const SrsParams& p, const SrsState& z) {
  FieldElement x = p.dot(z);
  x -= p.floor_rz(z);
  return x;
}

std::optional<SrsState> phi_inverse(const SrsParams& p, const FieldElement& x) {
  const int d = p.base().degree();
  const int n = p.dim() + 1;
  if (n != d) return std::nullopt;
  // Columns: 1, r_0, ..., r_{dim-1}; solve M (c, z) = coefficients of x.
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
  for (int row = 0; row < d; ++row) {
    m[static_cast<std::size_t>(row)][0] = row == 0 ? 1 : 0;
    for (int j = 0; j < p.dim(); ++j) m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j + 1)] = p.r()[static_cast<std::size_t>(j)].coeff(row);
    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(n)] = x.coeff(row);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < d; ++row)
      if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
    auto& prow = m[static_cast<std::size_t>(col)];
    Rational inv = 1 / prow[static_cast<std::size_t>(col)];
    for (auto& v : prow) v *= inv;
    for (int row = 0; row < d; ++row) {
      if (row == col) continue;
      auto& cur = m[static_cast<std::size_t>(row)];
      Rational f = cur[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int k = 0; k <= n; ++k) cur[static_cast<std::size_t>(k)] -= f * prow[static_cast<std::size_t>(k)];
    }
  }
  SrsState z;
  for (int j = 1; j < n; ++j) {
    const Rational& v = m[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
    z.push_back(v.get_num().get_si());
  }
  if (!(phi(p, z) == x)) return std::nullopt;
  return z;
}

namespace {

// States stored contiguously; the hash set holds indices into the storage.
class FlatStateSet {
 public:
  explicit FlatStateSet(int dim) : dim_(dim), index_(64, Hash{this}, Eq{this}) {}

  std::size_t size() const { return count_; }
  const long* at(std::size_t i) const { return data_.data() + i * static_cast<std::size_t>(dim_); }
  SrsState state(std::size_t i) const { return SrsState(at(i), at(i) + dim_); }

  /// Index of z, inserting it if absent.
  std::pair<std::size_t, bool> insert(const long* z) {
    data_.insert(data_.end(), z, z + dim_);
    auto [it, fresh] = index_.insert(count_);
    if (!fresh) {
      data_.resize(data_.size() - static_cast<std::size_t>(dim_));
      return {*it, false};
    }
    return {count_++, true};
  }

  /// Index of z or -1; safe for concurrent readers while nothing inserts.
  long find(const long* z) const {
    probe_ = z;
    auto it = index_.find(kProbe);
    return it == index_.end() ? -1 : static_cast<long>(*it);
  }

 private:
  static constexpr std::size_t kProbe = static_cast<std::size_t>(-1);

  const long* ptr(std::size_t i) const { return i == kProbe ? probe_ : at(i); }

  struct Hash {
    const FlatStateSet* s;
    std::size_t operator()(std::size_t i) const {
      const long* z = s->ptr(i);
      std::size_t h = 0x9e3779b97f4a7c15ULL;
      for (int k = 0; k < s->dim_; ++k) h ^= static_cast<std::size_t>(z[k]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };
  struct Eq {
    const FlatStateSet* s;
    bool operator()(std::size_t a, std::size_t b) const {
      return std::equal(s->ptr(a), s->ptr(a) + s->dim_, s->ptr(b));
    }
  };

  int dim_;
  std::size_t count_ = 0;
  std::vector<long> data_;
  std::unordered_set<std::size_t, Hash, Eq> index_;
  static thread_local const long* probe_;
};

thread_local const long* FlatStateSet::probe_ = nullptr;

void neg_tau_neg(const SrsParams& p, const long* z, long* out) {
  const int d = p.dim();
  SrsState neg(z, z + d);
  for (auto& v : neg) v = -v;
  std::copy(neg.begin() + 1, neg.end(), out);
  out[d - 1] = p.floor_rz(neg, true).get_si();
  for (int i = 0; i < d - 1; ++i) out[i] = -out[i];
}

void tau0(const SrsParams& p, const long* z, long* out) {
  const int d = p.dim();
  SrsState s(z, z + d);
  std::copy(s.begin() + 1, s.end(), out);
  out[d - 1] = -p.floor_rz(s, true).get_si();
}

}  // namespace

std::vector<SrsState> canonical_rotation(std::vector<SrsState> cycle) {
  if (cycle.empty()) return cycle;
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

WitnessClosure witness_closure(const SrsParams& p, long cap, Exec exec) {
  WitnessClosure out;
  const int d = p.dim();
  if (d == 0) {
    out.saturated = true;
    return out;
  }
  FlatStateSet set(d);
  std::vector<std::size_t> frontier;
  for (int i = 0; i < d; ++i) {
    for (long s : {1L, -1L}) {
      SrsState e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = s;
      auto [idx, fresh] = set.insert(e.data());
      if (fresh) frontier.push_back(idx);
    }
  }

  const std::size_t du = static_cast<std::size_t>(d);
  bool capped = false;
  std::vector<long> buf;
  while (!frontier.empty() && !capped) {
    const long n = static_cast<long>(frontier.size());
    buf.assign(static_cast<std::size_t>(n) * 2 * du, 0);
    auto expand = [&](long i) {
      const long* z = set.at(frontier[static_cast<std::size_t>(i)]);
      tau0(p, z, buf.data() + static_cast<std::size_t>(2 * i) * du);
      neg_tau_neg(p, z, buf.data() + static_cast<std::size_t>(2 * i + 1) * du);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
      for (long i = 0; i < n; ++i) expand(i);
    } else {
      for (long i = 0; i < n; ++i) expand(i);
    }
    std::vector<std::size_t> next;
    for (long k = 0; k < 2 * n; ++k) {
      auto [idx, fresh] = set.insert(buf.data() + static_cast<std::size_t>(k) * du);
      if (!fresh) continue;
      next.push_back(idx);
      if (static_cast<long>(set.size()) > cap) {
        capped = true;
        break;
      }
    }
    frontier = std::move(next);
  }
  out.saturated = !capped;

  // tau_{r,alpha} successor of every state, as an index (-1 if outside).
  const long n = static_cast<long>(set.size());
  std::vector<long> succ(static_cast<std::size_t>(n), -1);
  auto successor = [&](long i) {
    SrsState z = set.state(static_cast<std::size_t>(i));
    SrsState t = tau_step(p, z);
    succ[static_cast<std::size_t>(i)] = set.find(t.data());
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) successor(i);
  } else {
    for (long i = 0; i < n; ++i) successor(i);
  }

  // Cycles of the functional graph, skipping the zero fixed point.
  std::vector<char> color(static_cast<std::size_t>(n), 0);
  std::vector<long> pos(static_cast<std::size_t>(n), -1);
  std::vector<long> path;
  for (long start = 0; start < n; ++start) {
    if (color[static_cast<std::size_t>(start)]) continue;
    path.clear();
    long v = start;
    while (v >= 0 && color[static_cast<std::size_t>(v)] == 0) {
      color[static_cast<std::size_t>(v)] = 1;
      pos[static_cast<std::size_t>(v)] = static_cast<long>(path.size());
      path.push_back(v);
      v = succ[static_cast<std::size_t>(v)];
    }
    if (v >= 0 && color[static_cast<std::size_t>(v)] == 1) {
      std::vector<SrsState> cyc;
      for (std::size_t k = static_cast<std::size_t>(pos[static_cast<std::size_t>(v)]); k < path.size(); ++k)
        cyc.push_back(set.state(static_cast<std::size_t>(path[k])));
      bool zero = cyc.size() == 1 && std::all_of(cyc[0].begin(), cyc[0].end(), [](long c) { return c == 0; });
      if (!zero) out.cycles.push_back(canonical_rotation(std::move(cyc)));
    }
    for (long u : path) color[static_cast<std::size_t>(u)] = 2;
  }
  std::sort(out.cycles.begin(), out.cycles.end());

  out.states.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.states.push_back(set.state(static_cast<std::size_t>(i)));
  return out;
}

bool replay_cycle(const SrsParams& p, const std::vector<SrsState>& cycle) {
  if (cycle.empty()) return false;
  SrsState z = cycle.front();
  for (std::size_t i = 1; i <= cycle.size(); ++i) {
    z = tau_step(p, z);
    if (z != cycle[i % cycle.size()]) return false;
  }
  return true;
}

D0Decision decide_d0(const SrsParams& p, long cap, Exec exec) {
  WitnessClosure w = witness_closure(p, cap, exec);
  D0Decision out;
  out.closure_size = w.states.size();
  if (!w.cycles.empty()) {
    out.verdict = D0Verdict::NotInD0;
    out.cycle = w.cycles.front();
  } else {
    out.verdict = w.saturated ? D0Verdict::InD0 : D0Verdict::Inconclusive;
  }
  return out;
}

const char* to_string(D0Verdict v) {
  switch (v) {
    case D0Verdict::InD0:
      return "InD0";
    case D0Verdict::NotInD0:
      return "NotInD0";
    case D0Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

nlohmann::json D0Decision::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  if (verdict == D0Verdict::NotInD0) j["cycle"] = cycle;
  j["closure_size"] = closure_size;
  return j;
}

}  // namespace negabeta
