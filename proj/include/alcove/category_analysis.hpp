#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alcove/alcove_fusion.hpp"
#include "alcove/modular_data.hpp"

namespace alcove {

enum class SubsetKind { Gamma, Delta, Explicit };

/// A label subset closed under duality and fusion.
struct ClosedSubset {
  SubsetKind kind = SubsetKind::Explicit;
  std::optional<CenterSubgroup> source;
  std::vector<LabelId> members;  // sorted; members.front() is the identity
  bool contains(LabelId id) const;
  std::size_t size() const noexcept { return members.size(); }
  std::string describe() const;
};

/// Gamma_Z: labels annihilated by the characters of Z.
ClosedSubset gamma_subset(const AlcoveContext& ctx, const CenterSubgroup& z);
/// Delta_Z = k ell[Z].
ClosedSubset delta_subset(const AlcoveContext& ctx, const CenterSubgroup& z);
/// Checks duality and fusion closure exhaustively.
bool is_closed(const AlcoveContext& ctx, const std::vector<LabelId>& members);

struct Degenerate {
  LabelId label;
  int parity;  // +1 even (C = 1), -1 odd (C = -1)
  friend bool operator==(const Degenerate&, const Degenerate&) = default;
};

struct DegeneracyReport {
  std::vector<Degenerate> degenerates;  // ordered by label
  /// Center elements z with k ell(z) degenerate; degenerates equal Delta of this set.
  std::vector<int> center_elements;
  std::size_t odd_count() const;
  bool is_degenerate(LabelId id) const;
  int parity_of(LabelId id) const;  // 0 when not degenerate
  friend bool operator==(const DegeneracyReport&, const DegeneracyReport&) = default;
};

/// Per-simple test S_lg = qdim(l) qdim(g) for all g in the subset, over every member.
/// A degenerate that is not invertible raises ErrorCode::DegenerateNotInvertible; disagreement with
/// the arithmetic criterion (characters and the parity of k (l_i, l_i)) raises ConsistencyError.
DegeneracyReport degeneracy_report(const ClosedSubset& subset, const ModularData& md,
                                   Execution exec = Execution::Parallel);

enum class Verdict { Modular, Quotientable, Obstructed };
std::string to_string(Verdict v);

Verdict modularity_verdict(const DegeneracyReport& report);

/// Levels k <= k_max with k (ell(z), ell(z)) / 2 integral for every z in Z.
std::vector<int> dw_levels(const RootSystem& rs, const CenterSubgroup& z, int k_max);
bool dw_condition(const RootSystem& rs, const CenterSubgroup& z, int k);
/// Whether k ell embeds Z into Gamma_Z as even degenerates (and nothing obstructs).
bool embeds_as_even_degenerates(const AlcoveContext& ctx, const CenterSubgroup& z, const DegeneracyReport& report);

struct QuotientData {
  std::vector<std::vector<LabelId>> orbits;  // each orbit sorted, orbits ordered by first member
  std::vector<int> stabilizers;
  int group_order = 1;
  int simple_count() const;
  int torus_dimension() const { return simple_count(); }
};

/// Orbits of the degenerate group acting by phi. Throws ErrorCode::OddDegenerate if any degenerate is odd.
QuotientData quotient_data(const AlcoveContext& ctx, const ClosedSubset& subset, const DegeneracyReport& report);

struct ProductDecomposition {
  ClosedSubset gamma_factor;  // Gamma_{Z'}
  ClosedSubset delta_factor;  // Delta_Z
  std::vector<LabelId> intersection;
  bool factors_modular = false;
  bool s_factorization_checked = false;  // true when the factors are modular and the tensor identity held
};

/// Candidate pairs (Gamma_{Z'}, Delta_Z), Z inside Z', satisfying the four product conditions.
/// Largest Gamma factor first.
std::vector<ProductDecomposition> decompose_product(const ClosedSubset& subset, const DegeneracyReport& report,
                                                    const ModularData& md);

/// Everything `classify` reports for one cyclic subgroup.
struct SubgroupReport {
  CenterSubgroup subgroup;
  ClosedSubset gamma;
  ClosedSubset delta;
  DegeneracyReport degeneracy;
  Verdict verdict = Verdict::Modular;
  bool dw = false;
  std::optional<QuotientData> quotient;
  std::vector<ProductDecomposition> products;
  std::optional<bool> determinant_nonzero;  // exact det S check on small subsets
};

struct ClassifyOptions {
  std::size_t determinant_limit = 64;  // exact det cross-check up to this many labels
  std::size_t closure_limit = 80;      // exhaustive closure check up to this many labels
  bool products = true;
};

SubgroupReport classify_subgroup(const ModularData& md, const CenterSubgroup& z, const ClassifyOptions& options = {});

}  // namespace alcove
