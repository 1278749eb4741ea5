#pragma once

#include <cstddef>
#include <cstdint>

namespace varitas {

/// Resource limits shared by every operation.  Defaults may be overridden by
/// VARITAS_CAP_ORDER and VARITAS_CAP_BUDGET in the environment.
struct Limits {
  /// Largest group order that construct_group / direct_product will build.
  std::size_t order_cap = 5040;
  /// Largest group order for which the full subgroup lattice is enumerated.
  std::size_t lattice_cap = 60;
  /// Tuple evaluations allowed per identity / verbal / marginal scan.
  std::uint64_t budget = 100'000'000;
  /// Largest |A|^d accepted by the Var(A) oracle.
  std::uint64_t oracle_cap = 4096;
  /// Largest relatively free object the oracle will close.
  std::uint64_t oracle_closure_cap = 200'000;

  static Limits from_env();
};

/// Process-wide limits, initialised from the environment on first use.
Limits const& limits();
void set_limits(Limits const& l);

/// RAII override of the process-wide limits, mostly for tests.
class ScopedLimits {
 public:
  explicit ScopedLimits(Limits const& l) : saved_(limits()) { set_limits(l); }
  ~ScopedLimits() { set_limits(saved_); }
  ScopedLimits(ScopedLimits const&) = delete;
  ScopedLimits& operator=(ScopedLimits const&) = delete;

 private:
  Limits saved_;
};

}  // namespace varitas
