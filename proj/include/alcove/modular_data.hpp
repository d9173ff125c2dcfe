#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "alcove/alcove_fusion.hpp"
#include "alcove/cyclotomic.hpp"

namespace alcove {

/// Twists, quantum dimensions and Hopf-link values of an alcove, exact in Z[zeta_M] with
/// M = 2 L (k + h). Values are computed lazily per label and are safe to request concurrently.
class ModularData {
 public:
  explicit ModularData(const AlcoveContext& ctx);
  ModularData(const ModularData&) = delete;
  ModularData& operator=(const ModularData&) = delete;

  const AlcoveContext& context() const noexcept { return *ctx_; }
  const CycloContextPtr& ring() const noexcept { return ring_; }
  int order() const noexcept { return ring_->order(); }

  /// q = zeta^(2L).
  CycloValue q() const { return CycloValue::root(ring_, 2LL * ctx_->root_system().denom_scale()); }
  CycloValue one() const { return CycloValue::integer(ring_, 1); }
  CycloValue zeta_power(long long e) const { return CycloValue::root(ring_, e); }

  /// C_lambda = zeta^twist_exponent(lambda).
  int twist_exponent(LabelId id) const { return twist_exp_[id]; }
  CycloValue twist(LabelId id) const { return zeta_power(twist_exp_[id]); }
  /// Exponent of exp(2 pi i (a, b)) as a power of zeta.
  int pairing_exponent(const Weight& a, const Weight& b) const;

  /// Quantum Weyl dimension product over the positive roots.
  const CycloValue& qdim(LabelId id) const;

  /// S_ab = conj(C_a) conj(C_b) sum_c N_ab^c qdim(c) C_c, using one fusion row.
  CycloValue s_entry(LabelId a, LabelId b) const;
  CycloValue s_from_row(LabelId a, LabelId b, const FusionRow& row) const;

  /// Full S-matrix from a sealed table; the parallel kernel splits over rows.
  CycloMatrix smatrix(const FusionTable& table, Execution exec = Execution::Parallel) const;
  /// S restricted to `members`, entries computed from fusion on demand.
  CycloMatrix smatrix(std::span<const LabelId> members, Execution exec = Execution::Parallel) const;

 private:
  const AlcoveContext* ctx_;
  CycloContextPtr ring_;
  std::vector<int> twist_exp_;
  CycloField denominator_inverse_;
  long long rho_shift_ = 0;  // sum over positive roots of L (rho, alpha)
  mutable std::unique_ptr<std::once_flag[]> qdim_once_;
  mutable std::vector<CycloValue> qdim_;
  mutable std::vector<CycloValue> weighted_;  // qdim(c) C_c
};

}  // namespace alcove
