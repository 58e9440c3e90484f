#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace negabeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Univariate polynomial with integer coefficients, stored highest degree
/// first. The leading coefficient is never zero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);

  /// Parses "1,-3,-3,-3" (highest degree first).
  static IntPolynomial parse(std::string_view text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  /// Coefficient of x^power; zero outside [0, degree].
  Integer coeff(int power) const;
  bool is_monic() const { return !coeffs_.empty() && coeffs_.front() == 1; }

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  std::string to_csv() const;
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coeffs_;
};

namespace detail {

// Dense rational polynomial, lowest degree first, used by the exact
// machinery (gcd, Sturm sequences, inverses). Trailing zeros are trimmed so
// the zero polynomial is the empty vector.
using RatPoly = std::vector<Rational>;

RatPoly to_ratpoly(const IntPolynomial& p);
RatPoly to_ratpoly(const std::vector<Integer>& low_first);
void trim(RatPoly& p);
int degree(const RatPoly& p);  // -1 for zero
RatPoly derivative(const RatPoly& p);
RatPoly mul(const RatPoly& a, const RatPoly& b);
RatPoly sub(const RatPoly& a, const RatPoly& b);
void divmod(const RatPoly& num, const RatPoly& den, RatPoly& quot, RatPoly& rem);
RatPoly make_monic(RatPoly p);
RatPoly gcd(RatPoly a, RatPoly b);
/// Returns g = gcd(a, b) and s with s*a = g (mod b).
RatPoly extended_gcd(const RatPoly& a, const RatPoly& b, RatPoly& s);
Rational eval(const RatPoly& p, const Rational& x);
/// Sign of p(num / 2^exp) computed in integer arithmetic.
int sign_at_dyadic(const std::vector<Integer>& low_first, const Integer& num, unsigned long exp);

/// Sturm sequence of a squarefree polynomial; variations(x) minus
/// variations(y) counts the distinct real roots in (x, y].
class SturmSequence {
 public:
  explicit SturmSequence(const RatPoly& squarefree);
  int variations(const Rational& x) const;
  int count_roots(const Rational& lo, const Rational& hi) const {
    return variations(lo) - variations(hi);
  }

 private:
  std::vector<RatPoly> seq_;
};

/// Squarefree part with integer coefficients and positive leading term.
std::vector<Integer> squarefree_part(const IntPolynomial& p);

}  // namespace detail
}  // namespace negabeta
