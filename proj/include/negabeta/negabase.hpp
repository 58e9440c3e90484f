#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "negabeta/config.hpp"
#include "negabeta/exactfield.hpp"

namespace negabeta {

/// Eventually periodic digit word with a radix point after the first
/// `radix_k` digits. An empty period means the word ends in 0^ω.
struct DigitWord {
  std::vector<long> preperiod;
  std::vector<long> period;
  long radix_k = 0;
  /// Set when the orbit was cut off by the step budget before a cycle closed.
  bool truncated = false;

  bool eventually_zero() const { return period.empty() && !truncated; }
  /// Number of digits after the radix point before 0^ω, if eventually zero.
  std::optional<long> fractional_length() const;

  /// "d1 ... dk • f1 f2 ... (per: p1 p2 ...)"; "0^ω" closes finite words and
  /// an empty integer part prints as "0".
  std::string to_text() const;
  nlohmann::json to_json() const;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;
};

struct OrbitRecord {
  std::vector<FieldElement> states;
  std::optional<std::size_t> cycle_start;
  bool open() const { return !cycle_start.has_value(); }
};

/// A base together with the cached constants of its (−β)-transformation.
class NegativeBase {
 public:
  explicit NegativeBase(BasePtr base);

  const PisotBase& base() const { return *base_; }
  const BasePtr& base_ptr() const { return base_; }
  const FieldElement& ell() const { return ell_; }
  const FieldElement& ell_plus_one() const { return ell_plus_one_; }
  const FieldElement& beta_inverse() const { return beta_inv_; }
  /// Largest digit, floor(beta).
  long max_digit() const { return max_digit_; }

  /// Closed-open membership x in [l, l+1).
  bool in_domain(const FieldElement& x) const;
  /// Open membership x in (l, l+1).
  bool in_open_domain(const FieldElement& x) const;

 private:
  BasePtr base_;
  FieldElement ell_;
  FieldElement ell_plus_one_;
  FieldElement beta_inv_;
  long max_digit_ = 0;
};

/// −β/(β+1) as an exact element.
FieldElement ell_beta(const PisotBase& base);

struct StepResult {
  FieldElement state;
  long digit = 0;
};

/// One application of T(x) = −βx − ⌊−βx − l⌋. Throws OutOfDomain unless x is
/// in [l, l+1).
StepResult t_step(const NegativeBase& nb, const FieldElement& x);

struct DigitSequence {
  DigitWord word;
  OrbitRecord orbit;
};

/// Digits of x under T until the orbit closes a cycle or `max_steps` steps
/// have been taken (negative means the configured budget).
DigitSequence digit_sequence(const NegativeBase& nb, const FieldElement& x, long max_steps = -1);

/// The (−β)-expansion of any x, with radix_k the minimal k such that
/// x/(−β)^k lies in the open interval (l, l+1).
DigitWord expansion(const NegativeBase& nb, const FieldElement& x, long max_steps = -1);

struct FrLength {
  std::optional<long> length;  ///< empty: NotFinite
  DigitWord word;
  bool finite() const { return length.has_value(); }
};

FrLength fr_length(const NegativeBase& nb, const FieldElement& x, long max_steps = -1);

/// T^{-k}(0), built backwards from {0}. The (−β)-integers with at most k
/// integer digits are (−β)^k times these elements.
std::vector<FieldElement> enumerate_zmb(const NegativeBase& nb, int depth, Exec exec = Exec::Parallel);

/// (−β)-integers with at most `depth` digits, i.e. (−β)^depth · T^{-depth}(0).
std::vector<FieldElement> zmb_integers(const NegativeBase& nb, int depth, Exec exec = Exec::Parallel);

/// Value of the digit string "d1 d2 ... dn" (optionally ending in "•"),
/// leftmost digit at the highest power of −β.
FieldElement digits_value(const PisotBase& base, const std::vector<long>& digits);
std::vector<long> parse_digit_string(const std::string& text);

}  // namespace negabeta
