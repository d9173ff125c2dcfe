#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "alcove/category_analysis.hpp"
#include "alcove/cyclotomic.hpp"

namespace alcove {

/// Symmetric integer linking matrix of a framed surgery link.
class LinkingMatrix {
 public:
  LinkingMatrix() = default;
  /// Throws ErrorCode::NonSymmetricMatrix when `entries` is not symmetric.
  LinkingMatrix(std::size_t n, std::vector<std::int64_t> entries);
  static LinkingMatrix diagonal(const std::vector<std::int64_t>& framings);

  /// Text format: n, then n rows of n integers.
  static LinkingMatrix read(std::istream& in);
  static LinkingMatrix load(const std::filesystem::path& path);
  void write(std::ostream& out) const;

  std::size_t size() const noexcept { return n_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  bool is_diagonal() const;
  /// Signature by exact symmetric reduction over Q.
  int signature() const;
  std::vector<std::int64_t> framings() const;
  friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

/// Appends a +1 or -1 framed unknot.
LinkingMatrix kirby_stabilize(const LinkingMatrix& a, int sign);
/// Handle slide of component i over component j: A -> E A E^t with E = I + e_i e_j^t.
LinkingMatrix kirby_slide(const LinkingMatrix& a, std::size_t i, std::size_t j);

/// coeff * radicand^(half_power / 2) with radicand a totally positive real cyclotomic integer.
struct SurdValue {
  CycloValue coeff;
  CycloValue radicand;
  int half_power = 0;

  std::complex<long double> numeric() const;
  std::string to_string() const;
};

/// Exact equality: equal squared magnitudes and coeff_a * conj(coeff_b) real and positive.
bool same_value(const SurdValue& a, const SurdValue& b);

/// N and r = exp(2 pi i x) for the Gauss-sum invariant.
struct GaussSumSpec {
  int n = 1;
  Rational x;  // r = exp(2 pi i x)
  int root_order() const;  // denominator of x
  /// r^(2N) = 1 with N least, r primitive N-th (N odd) or 2N-th (N even).
  void validate() const;
  std::string describe() const;
};

/// N from Delta_Z modulo even degenerates and x = k (l_i, l_i) / 2 for the generator with the
/// largest denominator. Throws ErrorCode::OddDegenerate when Delta_Z has odd degenerates.
GaussSumSpec gauss_spec(const ModularData& md, const CenterSubgroup& z);

CycloValue gauss_sum(const GaussSumSpec& spec);
/// sum over l in (Z_N)^n of r^(l^t A l).
CycloValue invertible_link_state_sum(const LinkingMatrix& a, const GaussSumSpec& spec);
/// Murakami-Ohtsuki-Okada invariant. Throws ErrorCode::VanishingGaussSum.
SurdValue moo_invariant(const LinkingMatrix& a, const GaussSumSpec& spec);

/// I(L) for the Delta_Z label set from twists and Hopf values: sum over labelings of
/// prod C_{u_i}^{a_ii} prod_{i<j} S_{u_i u_j}^{a_ij}.
CycloValue delta_state_sum(const LinkingMatrix& a, const ModularData& md, const ClosedSubset& delta);
/// (I(N)/|I(N)|)^sigma I(L) / |I(N)|^n for the Delta_Z label set.
SurdValue delta_invariant(const LinkingMatrix& a, const ModularData& md, const ClosedSubset& delta);

/// prod_i sum_g qdim(g)^2 C_g^{f_i} over the label set.
CycloValue omega_unknots(const std::vector<std::int64_t>& framings, const ModularData& md, const ClosedSubset& labels);
/// Normalized invariant of a diagonal presentation. Throws ErrorCode::NonModularLabelSet unless
/// the label set is modular.
SurdValue rt_invariant_diagonal(const std::vector<std::int64_t>& framings, const ModularData& md,
                                const ClosedSubset& labels, const DegeneracyReport& report);
/// Same normalization computed on quotient orbit data (I' with qdim^2 / |stabilizer| weights).
SurdValue quotient_invariant_diagonal(const std::vector<std::int64_t>& framings, const ModularData& md,
                                      const QuotientData& quotient);

struct QuotientRelation {
  CycloValue lhs;               // I(L) over the unquotiented labels, times denominator^n
  CycloValue rhs;               // |Z|^n I'(L), times denominator^n
  std::int64_t denominator = 1;  // lcm of stabilizer orders
  bool holds = false;
};

/// I(L) = |Z|^n I'(L) on a diagonal presentation.
QuotientRelation quotient_invariant_relation_check(const ModularData& md, const ClosedSubset& subset,
                                                   const QuotientData& quotient,
                                                   const std::vector<std::int64_t>& framings);

struct KirbyFuzzResult {
  int trials = 0;
  int failures = 0;
  std::string first_failure;
};

/// Random symmetric matrices (n <= max_n, |a| <= 5) and random move sequences of length <= 8;
/// checks that moo_invariant is unchanged.
KirbyFuzzResult kirby_fuzz(const GaussSumSpec& spec, int trials, std::uint64_t seed, std::size_t max_n = 6);

}  // namespace alcove
