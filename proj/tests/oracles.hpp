#pragma once

// Independent test oracles. Nothing here calls into the exact sign/floor
// machinery: beta is bracketed by plain rational bisection on p, and values
// are enclosed with rational interval arithmetic.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "negabeta/polynomial.hpp"

namespace oracle {

using negabeta::Integer;
using negabeta::IntPolynomial;
using negabeta::Rational;

struct Bracket {
  Rational lo, hi;
};

/// Brackets the unique sign change of p in (1, 2 + max|a_i|] by bisection,
/// to width 2^-bits. Assumes p has exactly one simple real root above 1.
inline Bracket beta_bracket(const IntPolynomial& p, int bits) {
  Integer bound = 2;
  for (const auto& c : p.coefficients()) bound = std::max<Integer>(bound, abs(c) + 2);
  Rational lo = 1, hi = bound;
  int slo = sgn(p.eval(lo));
  Rational eps(1);
  eps /= Rational(Integer(1) << bits);
  while (hi - lo > eps) {
    Rational mid = (lo + hi) / 2;
    int s = sgn(p.eval(mid));
    if (s == 0) return {mid, mid};
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

/// Encloses sum c_i beta^i for beta in [lo, hi] with lo > 0.
inline Bracket enclose(const std::vector<Rational>& coeffs_low_first, const Bracket& b) {
  Rational lo = 0, hi = 0;
  Rational plo = 1, phi = 1;
  for (const auto& c : coeffs_low_first) {
    if (c >= 0) {
      lo += c * plo;
      hi += c * phi;
    } else {
      lo += c * phi;
      hi += c * plo;
    }
    plo *= b.lo;
    phi *= b.hi;
  }
  return {lo, hi};
}

inline double beta_double(const IntPolynomial& p) {
  Bracket b = beta_bracket(p, 60);
  return b.lo.get_d();
}

/// Numeric moduli of all roots of a monic polynomial (companion matrix).
inline std::vector<std::complex<double>> numeric_roots(const IntPolynomial& p) {
  const int d = p.degree();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) companion(0, i) = -p.coeff(d - 1 - i).get_d();
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

}  // namespace oracle
