#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alcove/multiplicity.hpp"
#include "alcove/root_data.hpp"

namespace alcove {

using LabelId = std::uint32_t;

/// How table-building kernels run. `Serial` is the reference implementation kept for testing.
enum class Execution { Serial, Parallel };

/// Result of moving a weight into the shifted alcove with the quantum Weyl group.
struct AffineRep {
  std::optional<Weight> representative;  // empty on a wall
  int sign = 0;                          // -1, +1, or 0 on a wall
  bool is_wall() const noexcept { return sign == 0; }
};

/// Sparse fusion row: (eta, N) pairs sorted by label.
using FusionRow = std::vector<std::pair<LabelId, std::int64_t>>;

/// Invertible labels under the truncated tensor product.
struct InvertibleGroup {
  std::vector<LabelId> members;           // members[0] is the identity label
  std::vector<std::size_t> product;       // product[i*n+j] = index of members[i] (x) members[j]
  std::vector<bool> in_k_ell_image;       // false only for invertibles outside k*ell[Z(G)]
  bool has_anomaly() const;               // some invertible lies outside k*ell[Z(G)]
  std::size_t index_of(LabelId id) const;
  bool contains(LabelId id) const;
};

struct AlcoveOptions {
  std::size_t max_labels = 20000;
  bool allow_large = false;
};

/// The level-k Weyl alcove of a simple Lie algebra with its fusion machinery.
class AlcoveContext {
 public:
  AlcoveContext(std::shared_ptr<const RootSystem> rs, int level, AlcoveOptions options = {});
  AlcoveContext(const AlcoveContext&) = delete;
  AlcoveContext& operator=(const AlcoveContext&) = delete;

  const RootSystem& root_system() const noexcept { return *rs_; }
  std::shared_ptr<const RootSystem> root_system_ptr() const noexcept { return rs_; }
  const CenterGroup& center() const noexcept { return center_; }
  int level() const noexcept { return level_; }
  /// k + h, the order of q.
  int shifted_level() const noexcept { return level_ + rs_->dual_coxeter(); }

  std::size_t size() const noexcept { return labels_.size(); }
  const Weight& label(LabelId id) const { return labels_[id]; }
  const std::vector<Weight>& labels() const noexcept { return labels_; }
  std::optional<LabelId> find(const Weight& w) const;
  LabelId require(const Weight& w) const;
  static constexpr LabelId identity() noexcept { return 0; }
  LabelId dual(LabelId id) const { return dual_[id]; }

  /// Extreme points k*l_i/(l_i,theta) that are weights, preceded by the identity.
  const std::vector<LabelId>& corners() const noexcept { return corners_; }
  bool is_corner(LabelId id) const;
  /// k*ell(z) as a label.
  LabelId k_ell(int z) const;

  AffineRep affine_dominant(const Weight& mu) const;

  std::shared_ptr<const WeightDiagram> diagram(LabelId id) const;
  /// Every weight of the diagram of `id`, cached per label.
  const std::vector<WeightMultiplicity>& expanded_diagram(LabelId id) const;
  /// Classical Weyl dimension, used to pick the cheaper side of a product.
  double classical_dimension(LabelId id) const { return dims_[id]; }

  /// The full fusion row of lambda (x) gamma.
  FusionRow fuse(LabelId lambda, LabelId gamma) const;
  /// Same row, pushing the weights of `gamma` through the affine action (no side selection).
  FusionRow fuse_via(LabelId lambda, LabelId gamma) const;

  const InvertibleGroup& invertibles() const;
  /// phi_u(gamma): the unique summand of u (x) gamma. Throws NonInvertible unless u (x) u^dagger = iota.
  LabelId phi(LabelId u, LabelId gamma) const;
  /// Linear part tau of phi_u (phi_u(g) = u + tau(g)) in the fundamental basis, column j = tau(l_j).
  /// Empty when the alcove does not contain every fundamental weight.
  std::optional<std::vector<Weight>> tau_columns(LabelId u) const;

 private:
  std::shared_ptr<const RootSystem> rs_;
  CenterGroup center_;
  int level_;
  std::vector<Weight> labels_;
  std::unordered_map<Weight, LabelId, WeightHash> index_;
  std::vector<LabelId> dual_;
  std::vector<LabelId> corners_;
  std::vector<double> dims_;

  mutable DiagramCache cache_;
  mutable std::unique_ptr<std::once_flag[]> expanded_once_;
  mutable std::vector<std::vector<WeightMultiplicity>> expanded_;
  mutable std::once_flag invertible_once_;
  mutable InvertibleGroup invertibles_;
};

/// Sealed fusion table N_{lambda gamma}^eta over all alcove labels.
class FusionTable {
 public:
  FusionTable(const AlcoveContext& ctx, std::vector<FusionRow> rows);

  const AlcoveContext& context() const noexcept { return *ctx_; }
  std::size_t size() const noexcept { return n_; }
  const FusionRow& row(LabelId a, LabelId b) const { return rows_[a * n_ + b]; }
  std::int64_t multiplicity(LabelId a, LabelId b, LabelId c) const;
  std::size_t nonzero_count() const;
  friend bool operator==(const FusionTable& x, const FusionTable& y) { return x.rows_ == y.rows_; }

 private:
  const AlcoveContext* ctx_;
  std::size_t n_;
  std::vector<FusionRow> rows_;
};

/// Builds the table row by row; rows are independent, so the parallel kernel splits over lambda.
FusionTable build_fusion_table(const AlcoveContext& ctx, Execution exec = Execution::Parallel);

}  // namespace alcove
