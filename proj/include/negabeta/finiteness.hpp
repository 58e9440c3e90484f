#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "negabeta/alphasrs.hpp"
#include "negabeta/negabase.hpp"

namespace negabeta {

enum class Verdict { MinusF, NotMinusF, TrivialFin0, Inconclusive };

enum class CertificateKind {
  EllFiniteOrbit,  ///< T^k(l) = 0: the digits of l
  PMinusOneUnit,   ///< a polynomial vanishing at beta with p(-1) = +-1
  SrsCycle,        ///< a nonzero tau_{r,alpha} cycle
  WitnessProof,    ///< saturated witness closure without nonzero cycles
  CriterionItem,   ///< a finiteness region of the alpha-SRS parameters
  SmallBeta,       ///< beta below the golden ratio
  None,
};

struct FinitenessVerdict {
  Verdict verdict = Verdict::Inconclusive;
  CertificateKind kind = CertificateKind::None;

  DigitWord ell_digits;
  IntPolynomial unit_poly;
  Integer p_minus_one;
  std::vector<SrsState> cycle;
  std::size_t closure_size = 0;
  int criterion_item = 0;

  bool pisot_certified = false;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

const char* to_string(Verdict v);
const char* to_string(CertificateKind k);

/// Finite digit word of l when its T-orbit reaches 0. `budget_hit` is set
/// when the orbit neither closed nor reached 0 within the budget.
std::optional<DigitWord> check_notf_ell(const NegativeBase& nb, long max_steps = -1, bool* budget_hit = nullptr);

/// p(-1) when it is +-1.
std::optional<Integer> check_notf_punit(const IntPolynomial& p);

struct CriterionResult {
  int item = 0;
  D0Verdict verdict = D0Verdict::InD0;
  std::vector<SrsState> cycle;  ///< periodic point orbit when item 3 rules out finiteness
};

/// Checks the three finiteness regions, item 3 first (it decides both ways),
/// then item 2, then item 1.
std::optional<CriterionResult> criterion_regions(const SrsParams& p);

/// Pipeline: small beta, p(-1) = +-1 (minimal polynomial and `extra`), finite
/// l-orbit, criterion regions, witness closure.
FinitenessVerdict decide_minus_f(const BasePtr& base, long cap = kDefaultClosureCap,
                                 const std::vector<IntPolynomial>& extra = {}, Exec exec = Exec::Parallel);

/// Re-checks the certificate carried by a verdict from scratch.
bool replay_certificate(const FinitenessVerdict& v, const BasePtr& base);

enum class CubicClass { MinusF, NotMinusF, NotPisotUnit };
const char* to_string(CubicClass c);

/// Closed-form Pisot test for x^3 - a x^2 + b x - c.
bool cubic_pisot_by_coefficients(long a, long b, long c);
/// Closed-form answer for the cubic unit x^3 - a x^2 + b x - c (c = +-1).
/// Throws NotCubic if the polynomial has a rational root.
CubicClass classify_cubic_unit(long a, long b, long c);

}  // namespace negabeta
