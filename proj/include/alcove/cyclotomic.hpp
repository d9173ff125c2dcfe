#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace alcove {

/// Reduction data for Z[zeta_M] = Z[x] / Phi_M(x).
class CycloContext {
 public:
  /// Shared, immutable context for a given order.
  static std::shared_ptr<const CycloContext> get(int order);
  explicit CycloContext(int order);

  int order() const noexcept { return order_; }
  /// phi(M), the length of a canonical coefficient vector.
  int degree() const noexcept { return degree_; }
  /// Coefficients of Phi_M from the constant term up; monic of length degree()+1.
  const std::vector<std::int64_t>& polynomial() const noexcept { return phi_; }
  /// x^e reduced modulo Phi_M, for any integer e.
  std::span<const std::int64_t> power(long long e) const noexcept;
  int reduce_exponent(long long e) const noexcept;

 private:
  int order_;
  int degree_;
  std::vector<std::int64_t> phi_;
  std::vector<std::int64_t> powers_;  // order_ rows of length degree_
};

using CycloContextPtr = std::shared_ptr<const CycloContext>;

/// Exact element of Z[zeta_M] in canonical form (power basis modulo Phi_M).
/// Coefficients are 64-bit; every operation checks for overflow and throws ErrorCode::Overflow.
class CycloValue {
 public:
  CycloValue() = default;
  explicit CycloValue(CycloContextPtr ctx);

  static CycloValue zero(CycloContextPtr ctx) { return CycloValue(std::move(ctx)); }
  static CycloValue integer(CycloContextPtr ctx, std::int64_t n);
  /// zeta_M^e.
  static CycloValue root(CycloContextPtr ctx, long long e);
  static CycloValue from_coefficients(CycloContextPtr ctx, std::vector<std::int64_t> coeffs);

  const CycloContextPtr& context() const noexcept { return ctx_; }
  int order() const noexcept { return ctx_ ? ctx_->order() : 0; }
  const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }

  CycloValue& operator+=(const CycloValue& o);
  CycloValue& operator-=(const CycloValue& o);
  CycloValue& operator*=(const CycloValue& o);
  CycloValue& operator*=(std::int64_t s);
  friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
  friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
  friend CycloValue operator*(const CycloValue& a, const CycloValue& b);
  friend CycloValue operator*(CycloValue a, std::int64_t s) { return a *= s; }
  friend CycloValue operator-(CycloValue a);
  friend bool operator==(const CycloValue& a, const CycloValue& b);

  /// Multiplication by zeta^e without a full product.
  CycloValue times_root(long long e) const;
  /// a += s * zeta^e.
  void add_root(long long e, std::int64_t s = 1);
  CycloValue pow(unsigned n) const;
  /// Complex conjugation, zeta -> zeta^-1.
  CycloValue conj() const { return galois(-1); }
  /// Automorphism zeta -> zeta^j, gcd(j, M) = 1.
  CycloValue galois(long long j) const;
  /// Image in Z[zeta_N] for a multiple N of the current order.
  CycloValue embed(CycloContextPtr target) const;

  bool is_zero() const noexcept;
  bool is_real() const { return conj() == *this; }
  /// Exponent e with value == zeta^e, if the value is a root of unity.
  std::optional<int> root_exponent() const;
  /// Integer value when the element is rational.
  std::optional<std::int64_t> as_integer() const;

  /// Principal embedding zeta -> exp(2 pi i / M). For diagnostics only.
  std::complex<long double> numeric() const;
  /// Nonzero (exponent, coefficient) pairs of the canonical form.
  std::vector<std::pair<int, std::int64_t>> terms() const;
  std::string to_string() const;

 private:
  void require_same(const CycloValue& o) const;

  CycloContextPtr ctx_;
  std::vector<std::int64_t> c_;
};

/// Element of Q(zeta_M) with rational coefficients; used where division is unavoidable.
class CycloField {
 public:
  CycloField() = default;
  explicit CycloField(CycloContextPtr ctx);
  explicit CycloField(const CycloValue& v);
  /// Coefficients already in canonical form (length phi(M)).
  CycloField(CycloContextPtr ctx, std::vector<mpq_class> coeffs);

  const CycloContextPtr& context() const noexcept { return ctx_; }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  CycloField& operator+=(const CycloField& o);
  CycloField& operator-=(const CycloField& o);
  friend CycloField operator*(const CycloField& a, const CycloField& b);
  friend CycloField operator-(CycloField a, const CycloField& b) { return a -= b; }
  bool is_zero() const;
  /// Multiplicative inverse by the extended Euclidean algorithm against Phi_M.
  CycloField inverse() const;
  /// Back to Z[zeta_M]; empty when some coefficient is not an integer or does not fit.
  std::optional<CycloValue> to_integral() const;

 private:
  CycloContextPtr ctx_;
  std::vector<mpq_class> c_;
};

/// Dense square matrix of cyclotomic integers.
struct CycloMatrix {
  std::size_t n = 0;
  std::vector<CycloValue> entries;
  const CycloValue& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  CycloValue& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  CycloMatrix restricted(std::span<const std::size_t> rows) const;
  friend bool operator==(const CycloMatrix&, const CycloMatrix&) = default;
};

/// Exact rank over Q(zeta_M) by Gaussian elimination with rational coefficients.
std::size_t exact_rank(const CycloMatrix& m);

/// Determinant modulo a prime p = 1 (mod M) under zeta -> w, w a primitive M-th root mod p.
std::uint64_t determinant_mod_prime(const CycloMatrix& m, std::uint64_t p, std::uint64_t w);

/// Primes p = 1 (mod M) below 2^62, together with a primitive M-th root of unity mod p.
std::vector<std::pair<std::uint64_t, std::uint64_t>> splitting_primes(int order, std::size_t count);

/// Exact invertibility: a nonzero determinant modulo a split prime certifies det != 0;
/// otherwise the exact rank decides.
bool is_invertible_matrix(const CycloMatrix& m);

}  // namespace alcove
