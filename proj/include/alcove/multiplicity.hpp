#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alcove/root_data.hpp"

namespace alcove {

struct WeightMultiplicity {
  Weight weight;
  std::int64_t multiplicity = 0;
};

/// Weight multiplicities of the classical irreducible representation of highest weight `highest`.
/// Stored orbit-compressed: one entry per dominant weight; `expand()` lists every weight.
class WeightDiagram {
 public:
  WeightDiagram() = default;
  WeightDiagram(Weight highest, std::vector<WeightMultiplicity> dominant)
      : highest_(std::move(highest)), dominant_(std::move(dominant)) {}

  const Weight& highest() const noexcept { return highest_; }
  /// Dominant weights in order of increasing depth below the highest weight.
  const std::vector<WeightMultiplicity>& dominant_entries() const noexcept { return dominant_; }
  /// Multiplicity of an arbitrary weight (0 outside the diagram).
  std::int64_t multiplicity(const RootSystem& rs, const Weight& mu) const;
  /// Every weight with its multiplicity, in a deterministic order.
  std::vector<WeightMultiplicity> expand(const RootSystem& rs) const;
  /// Total dimension, summing orbit sizes.
  std::int64_t dimension(const RootSystem& rs) const;

 private:
  Weight highest_;
  std::vector<WeightMultiplicity> dominant_;
};

/// Classical Weyl orbit of a weight, in breadth-first order from the input.
std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& w);

/// Freudenthal recursion for the dominant part of the diagram.
WeightDiagram weight_diagram(const RootSystem& rs, const Weight& highest);

/// m_lambda(mu). Throws NonDominantWeight if lambda is not dominant.
std::int64_t weight_multiplicity(const RootSystem& rs, const Weight& lambda, const Weight& mu);

/// Thread-safe memo of weight diagrams for one root system. Readers share the lock; insertion is
/// exclusive. When a cache directory is configured, diagrams are also persisted in a small
/// binary format (versioned header followed by sparse dominant entries).
class DiagramCache {
 public:
  explicit DiagramCache(const RootSystem& rs, std::optional<std::filesystem::path> dir = cache_dir_from_env());

  std::shared_ptr<const WeightDiagram> get(const Weight& highest);
  std::size_t size() const;

  /// Reads ALCOVE_CACHE_DIR.
  static std::optional<std::filesystem::path> cache_dir_from_env();

 private:
  std::filesystem::path file_for(const Weight& highest) const;

  const RootSystem* rs_;
  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Weight, std::shared_ptr<const WeightDiagram>, WeightHash> memo_;
};

/// Binary serialization used by the on-disk cache.
void write_diagram(std::ostream& out, const RootSystem& rs, const WeightDiagram& d);
WeightDiagram read_diagram(std::istream& in, const RootSystem& rs);

}  // namespace alcove
