#include "alcove/alcove_fusion.hpp"

#include <algorithm>
#include <functional>

#include "alcove/errors.hpp"

namespace alcove {

bool InvertibleGroup::has_anomaly() const {
  return std::find(in_k_ell_image.begin(), in_k_ell_image.end(), false) != in_k_ell_image.end();
}

std::size_t InvertibleGroup::index_of(LabelId id) const {
  auto it = std::find(members.begin(), members.end(), id);
  if (it == members.end()) throw Error(ErrorCode::NonInvertible, "label is not invertible");
  return static_cast<std::size_t>(it - members.begin());
}

bool InvertibleGroup::contains(LabelId id) const {
  return std::find(members.begin(), members.end(), id) != members.end();
}

AlcoveContext::AlcoveContext(std::shared_ptr<const RootSystem> rs, int level, AlcoveOptions options)
    : rs_(std::move(rs)), center_(*rs_), level_(level), cache_(*rs_) {
  if (level_ < 1) throw Error(ErrorCode::Parse, "level must be at least 1");
  const int r = rs_->rank();

  // Dominant weights with (lambda, theta) <= k.
  std::vector<Weight> found;
  Weight w(r);
  std::function<void(int, int)> walk = [&](int i, int budget) {
    if (i == r) {
      found.push_back(w);
      if (!options.allow_large && found.size() > options.max_labels)
        throw Error(ErrorCode::TooLarge, "alcove of " + rs_->name() + " at level " + std::to_string(level_) +
                                             " exceeds " + std::to_string(options.max_labels) + " labels");
      return;
    }
    const int c = rs_->comark(i);
    for (int a = 0; a * c <= budget; ++a) {
      w[i] = a;
      walk(i + 1, budget - a * c);
    }
    w[i] = 0;
  };
  walk(0, level_);
  std::sort(found.begin(), found.end(), [&](const Weight& a, const Weight& b) {
    const auto la = rs_->level_of(a), lb = rs_->level_of(b);
    return la != lb ? la < lb : a > b;
  });
  labels_ = std::move(found);
  for (LabelId i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);

  dual_.resize(labels_.size());
  dims_.resize(labels_.size());
  for (LabelId i = 0; i < labels_.size(); ++i) {
    dual_[i] = require(rs_->dual(labels_[i]));
    dims_[i] = rs_->weyl_dimension(labels_[i]).get_d();
  }

  corners_.push_back(identity());
  for (int i = 0; i < r; ++i) {
    const int c = rs_->comark(i);
    if (level_ % c != 0) continue;
    Weight corner(r);
    corner[i] = level_ / c;
    corners_.push_back(require(corner));
  }

  expanded_once_ = std::make_unique<std::once_flag[]>(labels_.size());
  expanded_.resize(labels_.size());
}

std::optional<LabelId> AlcoveContext::find(const Weight& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelId AlcoveContext::require(const Weight& w) const {
  auto id = find(w);
  if (!id) throw Error(ErrorCode::Parse, "weight " + w.to_string() + " is not in the level-" + std::to_string(level_) +
                                             " alcove of " + rs_->name());
  return *id;
}

bool AlcoveContext::is_corner(LabelId id) const {
  return std::find(corners_.begin(), corners_.end(), id) != corners_.end();
}

LabelId AlcoveContext::k_ell(int z) const { return require(level_ * center_.ell_weight(z)); }

AffineRep AlcoveContext::affine_dominant(const Weight& mu) const {
  const RootSystem& rs = *rs_;
  const int r = rs.rank();
  const std::int64_t wall = shifted_level();
  Weight x = mu + rs.rho();
  int sign = 1;
  while (true) {
    bool moved = false;
    for (int i = 0; i < r; ++i) {
      if (x[i] == 0) return {};
      if (x[i] < 0) {
        x = rs.reflect(x, i);
        sign = -sign;
        moved = true;
      }
    }
    if (moved) continue;
    const std::int64_t t = rs.level_of(x);
    if (t == wall) return {};
    if (t < wall) break;
    const int shift = static_cast<int>(t - wall);
    x -= shift * rs.theta();
    sign = -sign;
  }
  return {x - rs.rho(), sign};
}

std::shared_ptr<const WeightDiagram> AlcoveContext::diagram(LabelId id) const { return cache_.get(labels_[id]); }

const std::vector<WeightMultiplicity>& AlcoveContext::expanded_diagram(LabelId id) const {
  std::call_once(expanded_once_[id], [&] { expanded_[id] = diagram(id)->expand(*rs_); });
  return expanded_[id];
}

FusionRow AlcoveContext::fuse_via(LabelId lambda, LabelId gamma) const {
  const Weight& base = labels_[lambda];
  FusionRow acc;
  for (const auto& [nu, m] : expanded_diagram(gamma)) {
    AffineRep rep = affine_dominant(base + nu);
    if (rep.is_wall()) continue;
    auto id = find(*rep.representative);
    if (!id) throw ConsistencyError("affine action left the alcove");
    acc.emplace_back(*id, rep.sign * m);
  }
  std::sort(acc.begin(), acc.end());
  FusionRow row;
  for (const auto& [id, m] : acc) {
    if (!row.empty() && row.back().first == id)
      row.back().second += m;
    else
      row.emplace_back(id, m);
  }
  std::erase_if(row, [](const auto& e) { return e.second == 0; });
  for (const auto& e : row)
    if (e.second < 0) throw ConsistencyError("negative fusion multiplicity");
  return row;
}

FusionRow AlcoveContext::fuse(LabelId lambda, LabelId gamma) const {
  if (dims_[gamma] <= dims_[lambda]) return fuse_via(lambda, gamma);
  return fuse_via(gamma, lambda);
}

const InvertibleGroup& AlcoveContext::invertibles() const {
  std::call_once(invertible_once_, [&] {
    InvertibleGroup g;
    std::vector<LabelId> candidates = corners_;
    std::sort(candidates.begin(), candidates.end());
    for (LabelId u : candidates) {
      const FusionRow row = fuse(u, dual_[u]);
      if (row.size() == 1 && row[0].first == identity() && row[0].second == 1) g.members.push_back(u);
    }
    std::vector<LabelId> image;
    for (int z = 0; z < center_.order(); ++z) image.push_back(k_ell(z));
    const std::size_t n = g.members.size();
    g.product.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      g.in_k_ell_image.push_back(std::find(image.begin(), image.end(), g.members[i]) != image.end());
      for (std::size_t j = 0; j < n; ++j) {
        const FusionRow row = fuse(g.members[i], g.members[j]);
        if (row.size() != 1 || row[0].second != 1) throw ConsistencyError("product of invertibles is not simple");
        auto it = std::find(g.members.begin(), g.members.end(), row[0].first);
        if (it == g.members.end()) throw ConsistencyError("invertibles are not closed under fusion");
        g.product[i * n + j] = static_cast<std::size_t>(it - g.members.begin());
      }
    }
    for (LabelId u : image)
      if (!g.contains(u)) throw ConsistencyError("k*ell image contains a non-invertible label");
    invertibles_ = std::move(g);
  });
  return invertibles_;
}

LabelId AlcoveContext::phi(LabelId u, LabelId gamma) const {
  if (!invertibles().contains(u)) {
    const FusionRow check = fuse(u, dual_[u]);
    if (!(check.size() == 1 && check[0].first == identity() && check[0].second == 1))
      throw Error(ErrorCode::NonInvertible, "label " + labels_[u].to_string() + " is not invertible");
  }
  const FusionRow row = fuse(u, gamma);
  if (row.size() != 1 || row[0].second != 1) throw ConsistencyError("fusion with an invertible is not simple");
  return row[0].first;
}

std::optional<std::vector<Weight>> AlcoveContext::tau_columns(LabelId u) const {
  std::vector<Weight> cols;
  for (int j = 0; j < rs_->rank(); ++j) {
    auto id = find(rs_->fundamental(j));
    if (!id) return std::nullopt;
    cols.push_back(labels_[phi(u, *id)] - labels_[u]);
  }
  return cols;
}

// ---------------------------------------------------------------------------
// FusionTable

FusionTable::FusionTable(const AlcoveContext& ctx, std::vector<FusionRow> rows)
    : ctx_(&ctx), n_(ctx.size()), rows_(std::move(rows)) {
  if (rows_.size() != n_ * n_) throw ConsistencyError("fusion table has the wrong number of rows");
}

std::int64_t FusionTable::multiplicity(LabelId a, LabelId b, LabelId c) const {
  const auto& r = row(a, b);
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(c, std::int64_t{0}),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  return it != r.end() && it->first == c ? it->second : 0;
}

std::size_t FusionTable::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

FusionTable build_fusion_table(const AlcoveContext& ctx, Execution exec) {
  const std::size_t n = ctx.size();
  std::vector<FusionRow> rows(n * n);
  const auto count = static_cast<long long>(n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long a = 0; a < count; ++a) {
      for (std::size_t b = static_cast<std::size_t>(a); b < n; ++b) {
        FusionRow r = ctx.fuse(static_cast<LabelId>(a), static_cast<LabelId>(b));
        rows[b * n + static_cast<std::size_t>(a)] = r;
        rows[static_cast<std::size_t>(a) * n + b] = std::move(r);
      }
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        FusionRow r = ctx.fuse(static_cast<LabelId>(a), static_cast<LabelId>(b));
        rows[b * n + a] = r;
        rows[a * n + b] = std::move(r);
      }
    }
  }
  return FusionTable(ctx, std::move(rows));
}

}  // namespace alcove
