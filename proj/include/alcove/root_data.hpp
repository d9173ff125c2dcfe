#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace alcove {

using Rational = mpq_class;

/// Largest supported rank. Weights live inline, so this bounds their size.
inline constexpr int kMaxRank = 16;

/// Integral weight in the fundamental-weight basis.
class Weight {
 public:
  Weight() = default;
  explicit Weight(int rank);
  Weight(std::initializer_list<int> coords);
  static Weight from_span(std::span<const int> coords);

  int rank() const noexcept { return rank_; }
  int operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }
  std::span<const int> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(rank_)}; }

  bool is_dominant() const noexcept;
  bool is_zero() const noexcept;

  Weight& operator+=(const Weight& o) noexcept;
  Weight& operator-=(const Weight& o) noexcept;
  friend Weight operator+(Weight a, const Weight& b) noexcept { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) noexcept { return a -= b; }
  friend Weight operator-(Weight a) noexcept;
  friend Weight operator*(int s, Weight a) noexcept;

  friend bool operator==(const Weight& a, const Weight& b) noexcept;
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept;

  /// Comma-joined coordinates, e.g. "1,0,2".
  std::string to_string() const;
  static Weight parse(std::string_view text, int rank);

 private:
  std::array<int, kMaxRank> c_{};
  int rank_ = 0;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct LieType {
  Family family = Family::A;
  int rank = 1;

  /// Parses "A1", "B2", "E8": family letter followed by the rank.
  static LieType parse(std::string_view text);
  std::string name() const;
  bool simply_laced() const noexcept;

  friend bool operator==(const LieType&, const LieType&) = default;
};

struct PositiveRoot {
  std::vector<int> simple_coeffs;
  Weight weight;
  int height = 0;
  bool is_long = true;
};

class RootSystem {
 public:
  explicit RootSystem(LieType type);

  const LieType& type() const noexcept { return type_; }
  std::string name() const { return type_.name(); }
  int rank() const noexcept { return type_.rank; }

  /// C_ij = 2(a_i,a_j)/(a_j,a_j); row i is a_i in the fundamental-weight basis.
  int cartan(int i, int j) const { return cartan_[idx(i, j)]; }
  /// (l_i, l_j) under the normalization where long roots have squared length 2.
  const Rational& gram(int i, int j) const { return gram_[idx(i, j)]; }
  /// Least L with L*(l_i,l_j) integral for all i, j.
  int denom_scale() const noexcept { return denom_scale_; }
  const Rational& simple_root_norm(int i) const { return simple_norms_[static_cast<std::size_t>(i)]; }
  bool is_long_simple(int i) const { return simple_norms_[static_cast<std::size_t>(i)] == 2; }
  int short_simple_count() const noexcept;

  const Weight& simple_root(int i) const { return simple_roots_[static_cast<std::size_t>(i)]; }
  const Weight& simple_coroot(int i) const { return simple_coroots_[static_cast<std::size_t>(i)]; }
  const std::vector<PositiveRoot>& positive_roots() const noexcept { return positive_roots_; }
  const Weight& fundamental(int i) const { return fundamentals_[static_cast<std::size_t>(i)]; }
  Weight zero() const { return Weight(rank()); }

  const Weight& rho() const noexcept { return rho_; }
  const Weight& theta() const noexcept { return theta_; }
  /// Highest short root; equal to theta when simply laced.
  const Weight& beta() const noexcept { return beta_; }
  int dual_coxeter() const noexcept { return dual_coxeter_; }
  /// (l_i, theta), an integer for every i.
  int comark(int i) const { return comarks_[static_cast<std::size_t>(i)]; }

  Rational inner_product(const Weight& a, const Weight& b) const;
  /// L * (a, b), exact in 64 bits.
  std::int64_t scaled_inner(const Weight& a, const Weight& b) const noexcept;
  /// (w, theta) as an integer.
  std::int64_t level_of(const Weight& w) const noexcept;

  bool in_root_lattice(const Weight& w) const;
  /// Membership in the span of the simple coroots 2 alpha_i / (alpha_i, alpha_i).
  bool in_coroot_lattice(const Weight& w) const;
  Weight reflect(const Weight& w, int i) const noexcept;
  /// Dominant element of the classical Weyl orbit; *parity receives the word-length parity.
  Weight dominant_representative(Weight w, int* parity = nullptr) const noexcept;
  /// Classical duality -w0(w) for dominant w.
  Weight dual(const Weight& w) const noexcept { return dominant_representative(-w); }
  /// Product over positive roots of (w+rho,a)/(rho,a).
  Rational weyl_dimension(const Weight& w) const;
  /// Coefficients of w in the simple-root basis (rational in general).
  std::vector<Rational> simple_root_coordinates(const Weight& w) const;

 private:
  std::size_t idx(int i, int j) const noexcept { return static_cast<std::size_t>(i * rank() + j); }

  LieType type_;
  std::vector<int> cartan_;
  std::vector<Rational> gram_;
  std::vector<std::int64_t> gram_scaled_;
  std::vector<Rational> cartan_inverse_;
  std::vector<Rational> simple_norms_;
  int denom_scale_ = 1;
  std::vector<Weight> simple_roots_;
  std::vector<Weight> simple_coroots_;
  std::vector<Weight> fundamentals_;
  std::vector<PositiveRoot> positive_roots_;
  Weight rho_, theta_, beta_;
  int dual_coxeter_ = 0;
  std::vector<int> comarks_;
};

/// A cyclic subgroup of the center, stored as element ids.
struct CenterSubgroup {
  std::vector<int> elements;  // sorted, contains 0 (identity)
  int generator = 0;
  std::string label;
  int order() const noexcept { return static_cast<int>(elements.size()); }
  bool contains(int z) const;
  bool is_subgroup_of(const CenterSubgroup& other) const;
};

/// Center of the simply connected group, identified with the dual of the weight lattice modulo
/// the root lattice. Element 0 is the identity; element z > 0 corresponds to the fundamental
/// weight ell(z).
class CenterGroup {
 public:
  explicit CenterGroup(const RootSystem& rs);

  int order() const noexcept { return static_cast<int>(ell_.size()); }
  /// Fundamental-weight index of ell(z); empty for the identity.
  std::optional<int> ell(int z) const { return ell_[static_cast<std::size_t>(z)]; }
  Weight ell_weight(int z) const;
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a * order() + b)]; }
  int inverse(int a) const;
  int element_order(int a) const;
  bool is_cyclic() const noexcept { return cyclic_; }
  /// Element whose ell is fundamental weight i, if any.
  std::optional<int> element_for_fundamental(int i) const;

  CenterSubgroup generated_by(int z) const;
  /// All distinct cyclic subgroups, ordered by size then generator.
  std::vector<CenterSubgroup> cyclic_subgroups() const;
  /// Parses "Z<d>" or "Z<d>@<i>" (subgroup generated by the element with ell = l_i).
  CenterSubgroup select(std::string_view selector) const;
  /// (gamma, ell(z)) reduced to [0,1).
  Rational character(int z, const Weight& gamma) const;

 private:
  const RootSystem* rs_;
  std::vector<std::optional<int>> ell_;
  std::vector<int> table_;
  bool cyclic_ = true;
};

/// Center order predicted by the classification table.
int expected_center_order(const LieType& type);

}  // namespace alcove
