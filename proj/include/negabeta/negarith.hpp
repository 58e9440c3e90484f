#pragma once

#include <compare>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "negabeta/alphasrs.hpp"
#include "negabeta/negabase.hpp"

namespace negabeta {

/// The base x^3 - m x^2 - m x - m with its (−β)-transformation and the
/// conjugated alpha-SRS, r = (m/β, −m/β − m/β²).
class CubicSystem {
 public:
  explicit CubicSystem(int m);

  int m() const { return m_; }
  const PisotBase& base() const { return nb_.base(); }
  const BasePtr& base_ptr() const { return nb_.base_ptr(); }
  const NegativeBase& nb() const { return nb_; }
  const SrsParams& srs() const { return srs_; }

 private:
  int m_;
  NegativeBase nb_;
  SrsParams srs_;
};

struct ExtState {
  long z0 = 0, z1 = 0;
  int h = 0;

  SrsState z() const { return {z0, z1}; }
  friend auto operator<=>(const ExtState&, const ExtState&) = default;
  std::string to_string() const;
};

struct ExtStateHash {
  std::size_t operator()(const ExtState& s) const noexcept;
};

enum class RegionKind { A, B, C, D, E, F, Origin, MinusOneMinusOne, Outside };

struct RegionLabel {
  RegionKind kind = RegionKind::Outside;
  long k = 0;
  friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
  std::string to_string() const;
};

/// Label of z among A_k ... F_k (k <= m + 1), the origin and (-1,-1).
RegionLabel region_classify(long z0, long z1, int m);
/// All points of the region set kind_k.
std::vector<SrsState> region_points(RegionKind kind, long k);

class VSet {
 public:
  VSet() = default;
  explicit VSet(int m) : m_(m) {}

  int m() const { return m_; }
  bool contains(const ExtState& s) const { return members_.count(s) != 0; }
  bool insert(const ExtState& s) { return members_.insert(s).second; }
  bool erase(const ExtState& s) { return members_.erase(s) != 0; }
  std::size_t size() const { return members_.size(); }
  /// True when (z,-1), (z,0), (z,1) all belong to V.
  bool full(long z0, long z1) const;
  /// Members in sorted order.
  std::vector<ExtState> sorted() const;

 private:
  int m_ = 0;
  std::unordered_set<ExtState, ExtStateHash> members_;
};

VSet build_v(int m);

/// floor(r.z + alpha): closed form on the box -m-1 <= z0 <= m, |z1| <= m+1,
/// |z0 - z1| <= m+1, exact evaluation elsewhere.
long floor_rz_alpha(const CubicSystem& sys, long z0, long z1);
bool in_psi_box(long z0, long z1, int m);
/// The closed form alone (valid on the box).
long floor_rz_alpha_closed_form(long z0, long z1);

struct Transition {
  long carry = 0;
  ExtState to;
};

/// All successors of s under the set-valued extension with carries
/// b in {-2m, ..., m}, each with the carry that produces it.
std::vector<Transition> tilde_tau_transitions(const CubicSystem& sys, const ExtState& s);
/// Successor set of s.
std::vector<ExtState> tilde_tau(const CubicSystem& sys, const ExtState& s);

/// Phi(z, h) = r.z - floor(r.z + alpha) + h.
FieldElement ext_phi(const CubicSystem& sys, const ExtState& s);
/// (z, h) with Phi(z, h) = x, if it exists.
std::optional<ExtState> ext_phi_inverse(const CubicSystem& sys, const FieldElement& x);

struct Violation {
  ExtState from;
  ExtState to;
};

std::vector<Violation> verify_v_invariant(const CubicSystem& sys, const VSet& v, Exec exec = Exec::Parallel);
inline bool verify_v_invariant(int m) { return verify_v_invariant(CubicSystem(m), build_v(m)).empty(); }

/// Failed transitions of the successor chains and the exceptional orbits,
/// described as text (empty when everything holds).
std::vector<std::string> check_tv_chains(const CubicSystem& sys);

/// Checks the per-set path lengths into D_2 and D_1 (6k - c steps) and the
/// final legs (0,-2): 4, (-1,-2): 3, (0,-1): 3 steps to the origin.
std::vector<std::string> check_path_formulas(const CubicSystem& sys);

/// Number of tau steps from z to 0 (-1 if not reached within `cap`).
long steps_to_zero(const CubicSystem& sys, const SrsState& z, long cap = 10000);

/// States reachable from (0,0,0) under the set-valued extension.
std::vector<ExtState> reachable_states(const CubicSystem& sys, Exec exec = Exec::Parallel);

struct FrmaxWitness {
  std::string x_digits, y_digits;
  FieldElement x, y;
  long fr = 0;
};

struct FrmaxResult {
  int m = 0;
  long certified = 0;      ///< max over reachable start states
  long v_bound = 0;        ///< max over start states allowed by V
  SrsState argmax;         ///< a start state attaining `certified`
  std::size_t start_states = 0;
  /// Addition start states with -z = (-j, m-j+1), which the bound analysis rules out,
  /// and failed chain or path-length checks.
  std::vector<std::string> diagnostics;
};

enum class FrOp { Add, Sub };
const char* to_string(FrOp op);

FrmaxResult frmax_sub(const CubicSystem& sys, Exec exec = Exec::Parallel);
FrmaxResult frmax_add(const CubicSystem& sys, Exec exec = Exec::Parallel);
inline FrmaxResult frmax(const CubicSystem& sys, FrOp op, Exec exec = Exec::Parallel) {
  return op == FrOp::Sub ? frmax_sub(sys, exec) : frmax_add(sys, exec);
}

/// Digit strings of the explicit subtraction witnesses.
std::pair<std::string, std::string> frmax_sub_witness_digits(int m);
/// Builds the witness pair, checks both are (−β)-integers and that
/// fr(x - y) equals frmax_sub; throws WitnessMismatch otherwise.
FrmaxWitness frmax_sub_witness(const CubicSystem& sys);

/// Largest fr(x op y) over (−β)-integers with at most `depth` digits.
/// Throws BudgetExceeded when the pair count exceeds `max_pairs`.
long frmax_oracle(const CubicSystem& sys, int depth, FrOp op, Exec exec = Exec::Parallel,
                  long max_pairs = 50'000'000);

/// Textual picture of V on the box |z0|, |z1| <= radius, one character per
/// set of lifts h: '#' full, 'u' {0,1}, 'n' {-1,0}, 'o' {1}, '-' {-1},
/// '0' {0}, 'x' {-1,1}, '.' none. Rows run from z1 = radius down.
std::string region_map(const VSet& v, long radius);
char region_map_char(const VSet& v, long z0, long z1);

}  // namespace negabeta
