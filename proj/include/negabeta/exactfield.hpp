#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "negabeta/polynomial.hpp"

namespace negabeta {

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

namespace detail {

// Fixed-point enclosures of beta^0 .. beta^{d-1}: beta^i lies in
// [lo[i], hi[i]] / 2^bits.
struct PowerTable {
  unsigned long bits = 0;
  std::vector<Integer> lo;
  std::vector<Integer> hi;
};

}  // namespace detail

/// A real algebraic integer beta > 1 given by a monic integer polynomial and
/// an isolating interval for its largest real root.
///
/// The isolating interval is refined lazily (and only ever narrowed) when a
/// sign or floor decision needs more precision; refinement is guarded so a
/// single base may be shared between threads.
class PisotBase {
 public:
  PisotBase(const PisotBase&) = delete;
  PisotBase& operator=(const PisotBase&) = delete;
  ~PisotBase();

  const IntPolynomial& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  /// Isolating interval of width at most 2^-64.
  const RationalInterval& beta_interval() const { return interval_; }
  bool pisot_certified() const { return pisot_; }
  /// True when the minimal polynomial is known to be irreducible (every other
  /// root inside the unit disk and nonzero constant term), which makes the
  /// coefficient vector a canonical form.
  bool irreducible_certified() const { return irreducible_; }
  bool beta_is_rational() const { return exact_; }

  /// Interval of width at most 2^-bits around beta (narrowing the cache).
  RationalInterval refined_interval(unsigned long bits) const;
  /// Exact decision of whether the rational polynomial q (low degree first)
  /// vanishes at beta, via gcd with the squarefree part.
  bool vanishes_at_beta(const detail::RatPoly& q) const;

  const detail::PowerTable& power_table(unsigned level) const;
  /// x^k mod minpoly for d <= k <= 2d-2, low degree first, length d.
  const std::vector<Integer>& reduction_row(int k) const {
    return reduction_[static_cast<size_t>(k - degree())];
  }
  const std::vector<Integer>& squarefree_part() const { return sqf_; }

  /// "~p/q" rendering of the midpoint of a 2^-bits interval.
  std::string approx_string(unsigned long bits = 32) const;

  static constexpr unsigned kMaxLevels = 12;

 private:
  friend std::shared_ptr<const PisotBase> isolate_pisot_base(const IntPolynomial&, bool);
  explicit PisotBase(IntPolynomial p);

  void isolate();
  void certify_pisot();
  // Narrows the cached dyadic interval to width <= 2^-bits. Caller holds mutex_.
  void refine_locked(unsigned long bits) const;

  IntPolynomial minpoly_;
  std::vector<Integer> sqf_;
  RationalInterval interval_;
  bool pisot_ = false;
  bool irreducible_ = false;
  bool exact_ = false;
  std::vector<std::vector<Integer>> reduction_;

  mutable std::mutex mutex_;
  // beta in [lo_num_, hi_num_] / 2^exp_ (or exactly exact_value_)
  mutable Integer lo_num_, hi_num_;
  mutable unsigned long exp_ = 0;
  Rational exact_value_;
  mutable std::array<std::atomic<const detail::PowerTable*>, kMaxLevels> tables_{};
};

using BasePtr = std::shared_ptr<const PisotBase>;

/// Isolates the largest real root of a monic polynomial (which must exceed
/// 1) and optionally certifies that every other root has modulus < 1.
BasePtr isolate_pisot_base(const IntPolynomial& p, bool want_pisot_check = true);

/// Exact element of Q(beta), stored as integer numerators over a common
/// positive denominator in the power basis 1, beta, ..., beta^{d-1}.
///
/// The element keeps a non-owning pointer to its base, which must outlive it.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(const PisotBase& base);

  static FieldElement from_integer(const PisotBase& base, const Integer& n);
  static FieldElement from_rational(const PisotBase& base, const Rational& q);
  /// Coefficients of 1, beta, beta^2, ... (any length; reduced modulo the
  /// minimal polynomial).
  static FieldElement from_coefficients(const PisotBase& base, const std::vector<Rational>& low_first);
  static FieldElement beta(const PisotBase& base);
  /// beta^k for any integer k.
  static FieldElement beta_power(const PisotBase& base, long k);
  /// Parses "c0 + c1*b + c2*b^2" with rational coefficients "p/q"; powers
  /// of b may exceed the degree.
  static FieldElement parse(const PisotBase& base, std::string_view text);

  const PisotBase& base() const { return *base_; }
  const PisotBase* base_ptr() const { return base_; }
  int degree() const { return static_cast<int>(num_.size()); }
  Rational coeff(int i) const;
  std::vector<Rational> coefficients() const;
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  bool is_zero_representation() const;
  bool is_rational() const;
  /// True iff the element is an integer combination of the power basis.
  bool is_integral() const { return den_ == 1; }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator+=(const Integer& n);
  FieldElement& operator-=(const Integer& n);
  FieldElement& operator*=(const Integer& n);
  /// Multiplication by beta (cheap: shift and one reduction step).
  FieldElement times_beta() const;
  FieldElement inverse() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator+(FieldElement a, const Integer& n) { return a += n; }
  friend FieldElement operator-(FieldElement a, const Integer& n) { return a -= n; }
  friend FieldElement operator*(FieldElement a, const Integer& n) { return a *= n; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  /// Representation equality (same base, same reduced coefficients).
  bool same_representation(const FieldElement& o) const {
    return base_ == o.base_ && den_ == o.den_ && num_ == o.num_;
  }
  std::size_t hash() const;

  /// Exact value equality.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  void check_base(const FieldElement& o) const;
  void normalize();
  void reduce_product(std::vector<Integer>& wide);

  const PisotBase* base_ = nullptr;
  std::vector<Integer> num_;
  Integer den_ = 1;
};

enum class ArithOp { Add, Sub, Mul };

FieldElement fe_arith(const FieldElement& a, const FieldElement& b, ArithOp op);
/// Exact sign of a(beta).
int fe_sign(const FieldElement& a);
/// Exact floor of a(beta).
Integer fe_floor(const FieldElement& a);
/// Three-way exact comparison.
int fe_compare(const FieldElement& a, const FieldElement& b);
/// Rational enclosure of a(beta) of width roughly 2^-bits.
RationalInterval fe_enclose(const FieldElement& a, unsigned long bits);

struct RepresentationHash {
  std::size_t operator()(const FieldElement& a) const { return a.hash(); }
};
struct RepresentationEqual {
  bool operator()(const FieldElement& a, const FieldElement& b) const { return a.same_representation(b); }
};

}  // namespace negabeta
