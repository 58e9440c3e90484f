#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "negabeta/config.hpp"
#include "negabeta/exactfield.hpp"

namespace negabeta {

/// Lattice point z in Z^dim. Coordinates stay far below 2^40 in every system
/// handled here; larger values take the exact (slow) path.
using SrsState = std::vector<long>;

struct SrsStateHash {
  std::size_t operator()(const SrsState& z) const noexcept;
};

std::string state_string(const SrsState& z);

/// Parameters r = (r_0, ..., r_{dim-1}) and alpha of the map
/// tau(z) = (z_1, ..., z_{dim-1}, -floor(r.z + alpha)).
class SrsParams {
 public:
  SrsParams(BasePtr base, std::vector<FieldElement> r, FieldElement alpha);

  int dim() const { return static_cast<int>(r_.size()); }
  const std::vector<FieldElement>& r() const { return r_; }
  const FieldElement& alpha() const { return alpha_; }
  const PisotBase& base() const { return *base_; }
  const BasePtr& base_ptr() const { return base_; }

  /// Exact r.z.
  FieldElement dot(const SrsState& z) const;
  /// floor(r.z + alpha), or floor(r.z) when `zero_alpha`.
  Integer floor_rz(const SrsState& z, bool zero_alpha = false) const;

 private:
  bool fast_floor(const SrsState& z, bool zero_alpha, long& out) const;

  BasePtr base_;
  std::vector<FieldElement> r_;
  FieldElement alpha_;
  // Fixed-point enclosures scaled by 2^kShift.
  std::vector<__int128> r_lo_, r_hi_;
  __int128 alpha_lo_ = 0, alpha_hi_ = 0;
  bool fast_ok_ = false;
};

/// r_i = (-1)^{d-i} (a_{d-i}/beta + ... + a_d/beta^{i+1}) for the minimal
/// polynomial x^d + a_1 x^{d-1} + ... + a_d, and alpha = beta/(beta+1). The
/// factorization (x + beta)(x^{d-1} + r_{d-2} x^{d-2} + ... + r_0) =
/// (-1)^d p(-x) is re-verified exactly.
SrsParams srs_from_base(BasePtr base);

/// tau_{r,alpha}(z); `alpha_override` replaces alpha (zero gives tau_{r,0}).
SrsState tau_step(const SrsParams& p, const SrsState& z,
                  const std::optional<FieldElement>& alpha_override = std::nullopt);
/// tau_{r,0}(z) without building an override element.
SrsState tau_zero_step(const SrsParams& p, const SrsState& z);

/// phi(z) = r.z - floor(r.z + alpha), a point of Z[beta] in [l, l+1).
FieldElement phi(const SrsParams& p, const SrsState& z);
/// The state z with phi(z) = x, if x = n + r.z for integers n and z.
std::optional<SrsState> phi_inverse(const SrsParams& p, const FieldElement& x);

struct WitnessClosure {
  std::vector<SrsState> states;
  bool saturated = false;
  /// Nonzero tau_{r,alpha} cycles inside the closure, each rotated to its
  /// lexicographically smallest state; sorted.
  std::vector<std::vector<SrsState>> cycles;
};

/// Smallest set containing +-e_i and closed under tau_{r,0}(z) and
/// -tau_{r,0}(-z), followed by a search for tau_{r,alpha} cycles in it.
WitnessClosure witness_closure(const SrsParams& p, long cap = kDefaultClosureCap, Exec exec = Exec::Parallel);

enum class D0Verdict { InD0, NotInD0, Inconclusive };

struct D0Decision {
  D0Verdict verdict = D0Verdict::Inconclusive;
  std::vector<SrsState> cycle;  ///< certificate for NotInD0
  std::size_t closure_size = 0;
  nlohmann::json to_json() const;
};

D0Decision decide_d0(const SrsParams& p, long cap = kDefaultClosureCap, Exec exec = Exec::Parallel);

/// Rotates a cycle so that its lexicographically smallest state comes first.
std::vector<SrsState> canonical_rotation(std::vector<SrsState> cycle);
/// True if iterating tau_{r,alpha} from cycle[0] visits exactly the listed
/// states in order and returns to cycle[0].
bool replay_cycle(const SrsParams& p, const std::vector<SrsState>& cycle);

const char* to_string(D0Verdict v);

}  // namespace negabeta
